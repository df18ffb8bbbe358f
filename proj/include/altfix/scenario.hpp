#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "altfix/iteration.hpp"
#include "altfix/operators.hpp"
#include "altfix/rate_calculus.hpp"
#include "altfix/schedule.hpp"

namespace altfix {

// Which hypothesis the scenario's b certifies: an upper bound on twice the
// distance from x0 to the fixed point (the exact-run rate consumes that
// form) or on the distance itself (the inexact and metastability rates).
enum class BConvention { TwiceDistance, Distance };

struct MetastabilityRequest {
  BigInt k;
  Counterfunction g;
};

struct Scenario {
  std::string id;
  Space space = EuclideanSpace{1};
  OperatorSpec t1, t2;
  Point x0;
  std::optional<Point> u;  // analytic fixed point of T2 T1, when known
  Rational b;
  BConvention b_convention = BConvention::TwiceDistance;
  ErrorSchedule schedule;
  std::size_t horizon = 1;
  std::uint64_t seed = 0;
  std::optional<Region> region;  // bounded region hosting the trajectory
  std::vector<Rational> eps_list;
  std::vector<MetastabilityRequest> metastability;
  std::optional<ObjectiveSpec> objective;

  bool is_exact() const { return schedule.is_zero(); }
  // phi consumes b with the twice-distance reading; scale up when the
  // scenario recorded the plain distance (d <= b implies 2d <= 2b).
  Rational b_twice_distance() const {
    return b_convention == BConvention::TwiceDistance ? b : 2 * b;
  }
  // The distance reading reuses a twice-distance b unchanged: d <= 2d <= b.
  Rational b_distance() const { return b; }
};

// Parses and fully validates a scenario: operators must act on the space,
// a supplied u must be fixed under T2 T1 (tolerance 1e-9), b must cover
// d(x0,u) per its convention tag (derived as 2*ceil(d(x0,u)) when absent),
// a supplied region must contain x0, and a supplied objective must agree
// with T1/T2 through its resolvents at probe points. Schema problems and
// invariant violations throw std::invalid_argument naming the field or
// check; unreadable files throw std::runtime_error.
Scenario parse_scenario_json(const std::string& text);
Scenario load_scenario(const std::string& path);

Trajectory run_scenario(const Scenario& scenario);

}  // namespace altfix
