#include "altfix/iteration.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "altfix/rng.hpp"

namespace altfix {

Point random_displacement(const Space& space, Rng& rng, const Point& base,
                          double magnitude) {
  if (magnitude == 0.0) return base;
  if (std::holds_alternative<EuclideanSpace>(space)) {
    auto e = std::get<EuclideanPoint>(base);
    std::vector<double> dir(e.coords.size());
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& d : dir) {
        d = rng.normal();
        norm += d * d;
      }
      norm = std::sqrt(norm);
    } while (norm == 0.0);
    for (std::size_t i = 0; i < dir.size(); ++i)
      e.coords[i] += magnitude * dir[i] / norm;
    return e;
  }
  const auto& ss = std::get<SpiderSpace>(space);
  const auto& s = std::get<SpiderPoint>(base);
  // A target beyond the required length in a random direction; moving
  // magnitude/d of the way toward it displaces by exactly the magnitude.
  const int leg = rng.uniform_int(0, ss.legs - 1);
  const Point target =
      spider_point(leg, s.radius + magnitude + rng.uniform01());
  const double d = distance(space, base, target);
  return geodesic_point(space, base, target, magnitude / d);
}

namespace {

void check_displacement(const Space& space, const Point& got,
                        const Point& base, double budget) {
  if (distance(space, got, base) > budget + 1e-12)
    throw std::logic_error("perturbation overshot its error budget");
}

struct StepRecorder {
  const Space& space;
  const OperatorSpec& t1;
  const OperatorSpec& t2;
  Trajectory traj;

  void finish(std::size_t n) {
    traj.rx.reserve(n);
    traj.ry.reserve(n);
    traj.rs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      traj.rx.push_back(distance(space, traj.xs[i], traj.xs[i + 1]));
      traj.ry.push_back(distance(space, traj.ys[i], traj.ys[i + 1]));
      const Point sx = apply(space, t2, apply(space, t1, traj.xs[i]));
      traj.rs.push_back(distance(space, traj.xs[i], sx));
    }
  }
};

}  // namespace

Trajectory run_exact(const Space& space, const OperatorSpec& t1,
                     const OperatorSpec& t2, const Point& x0, std::size_t n) {
  if (n < 1) throw std::invalid_argument("iteration count must be >= 1");
  require_operator(space, t1);
  require_operator(space, t2);
  require_point(space, x0);

  StepRecorder rec{space, t1, t2, {}};
  rec.traj.xs.reserve(n + 1);
  rec.traj.ys.reserve(n + 1);
  rec.traj.xs.push_back(x0);
  for (std::size_t i = 0; i < n; ++i) {
    rec.traj.ys.push_back(apply(space, t1, rec.traj.xs.back()));
    rec.traj.xs.push_back(apply(space, t2, rec.traj.ys.back()));
  }
  rec.traj.ys.push_back(apply(space, t1, rec.traj.xs.back()));
  rec.finish(n);
  return std::move(rec.traj);
}

Trajectory run_inexact(const Space& space, const OperatorSpec& t1,
                       const OperatorSpec& t2, const Point& x0,
                       const ErrorSchedule& schedule, std::size_t n,
                       std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("iteration count must be >= 1");
  require_operator(space, t1);
  require_operator(space, t2);
  require_point(space, x0);

  Rng rng(seed);
  StepRecorder rec{space, t1, t2, {}};
  rec.traj.seed = seed;
  rec.traj.xs.reserve(n + 1);
  rec.traj.ys.reserve(n + 1);
  rec.traj.xs.push_back(x0);
  for (std::size_t i = 0; i <= n; ++i) {
    const double eps = to_double(schedule.eps_term(static_cast<std::int64_t>(i)));
    const Point t1x = apply(space, t1, rec.traj.xs.back());
    rec.traj.ys.push_back(random_displacement(space, rng, t1x, eps));
    check_displacement(space, rec.traj.ys.back(), t1x, eps);
    if (i == n) break;
    const double delta =
        to_double(schedule.delta_term(static_cast<std::int64_t>(i)));
    const Point t2y = apply(space, t2, rec.traj.ys.back());
    rec.traj.xs.push_back(random_displacement(space, rng, t2y, delta));
    check_displacement(space, rec.traj.xs.back(), t2y, delta);
  }
  rec.finish(n);
  return std::move(rec.traj);
}

std::optional<std::size_t> first_index_below(const std::vector<double>& seq,
                                             const Rational& eps) {
  if (eps <= 0) throw std::domain_error("threshold eps must be > 0");
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (rational_from_double(seq[i]) <= eps) return i;
  return std::nullopt;
}

std::vector<std::vector<double>> r_table(const Space& space,
                                         const Trajectory& traj,
                                         std::size_t n_max,
                                         std::size_t k_max) {
  if (traj.ys.size() < n_max + k_max + 1)
    throw std::invalid_argument("trajectory too short for requested r table");
  std::vector<std::vector<double>> r(n_max + 1,
                                     std::vector<double>(k_max + 1, 0.0));
  for (std::size_t n = 0; n <= n_max; ++n)
    for (std::size_t k = 1; k <= k_max; ++k)
      r[n][k] = distance(space, traj.ys[n], traj.ys[n + k]);
  return r;
}

void export_trajectory_csv(const Trajectory& traj,
                           const ErrorSchedule& schedule, std::ostream& out) {
  out << "n,rx,ry,rs,eps_n,delta_n,gamma_n\n";
  char buf[512];
  for (std::size_t i = 0; i < traj.horizon(); ++i) {
    const auto idx = static_cast<std::int64_t>(i);
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  i, traj.rx[i], traj.ry[i], traj.rs[i],
                  to_double(schedule.eps_term(idx)),
                  to_double(schedule.delta_term(idx)),
                  to_double(schedule.gamma_term(idx)));
    out << buf;
  }
}

}  // namespace altfix
