#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "altfix/operators.hpp"
#include "altfix/rng.hpp"
#include "altfix/schedule.hpp"

namespace altfix {

// A point at the given distance from base in a seeded pseudo-random
// direction (Euclidean: normalized Gaussian; spider: along the geodesic
// toward a random leg/radius target, truncated at the required length).
Point random_displacement(const Space& space, Rng& rng, const Point& base,
                          double magnitude);

// One run of the alternating iteration y_n = T1 x_n, x_{n+1} = T2 y_n
// (exactly, or with schedule-bounded perturbations after each operator).
//
// xs holds x_0..x_N and ys holds y_0..y_N, so the residual vectors all
// have length N: rx_n = d(x_n, x_{n+1}), ry_n = d(y_n, y_{n+1}) and
// rs_n = d(x_n, S x_n) with S = T2 T1 applied exactly.
struct Trajectory {
  std::vector<Point> xs, ys;
  std::vector<double> rx, ry, rs;
  std::uint64_t seed = 0;
  std::string scenario_id;

  std::size_t horizon() const { return rx.size(); }
};

Trajectory run_exact(const Space& space, const OperatorSpec& t1,
                     const OperatorSpec& t2, const Point& x0, std::size_t n);

// The perturbed run realizes the full error budget: y_n sits at distance
// exactly eps_n from T1 x_n (and x_{n+1} at delta_n from T2 y_n) in a
// seeded pseudo-random direction — Euclidean directions from normalized
// Gaussians, spider directions along the geodesic toward a random
// leg/radius target, truncated at the required length. Zero magnitudes
// consume no randomness, so a zero schedule reproduces run_exact
// bit-for-bit.
Trajectory run_inexact(const Space& space, const OperatorSpec& t1,
                       const OperatorSpec& t2, const Point& x0,
                       const ErrorSchedule& schedule, std::size_t n,
                       std::uint64_t seed);

// Smallest index with seq[n] <= eps (compared exactly; doubles are dyadic
// rationals), or nullopt if the recorded values never dip that low.
std::optional<std::size_t> first_index_below(const std::vector<double>& seq,
                                             const Rational& eps);

// r[n][k] = d(y_n, y_{n+k}); requires n_max + k_max <= N.
std::vector<std::vector<double>> r_table(const Space& space,
                                         const Trajectory& traj,
                                         std::size_t n_max, std::size_t k_max);

// Columns n, rx, ry, rs, eps_n, delta_n, gamma_n at 17 significant digits.
void export_trajectory_csv(const Trajectory& traj,
                           const ErrorSchedule& schedule, std::ostream& out);

}  // namespace altfix
