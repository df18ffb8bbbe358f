#pragma once

#include <variant>
#include <vector>

#include "altfix/rational.hpp"

namespace altfix {

// Two CAT(0) models with closed-form distances and geodesics: Euclidean
// space and the spider (finitely many rays glued at a root, an R-tree).

struct EuclideanPoint {
  std::vector<double> coords;
};

// radius == 0 is the root regardless of leg; canonicalized to leg 0.
struct SpiderPoint {
  int leg = 0;
  double radius = 0.0;
};

using Point = std::variant<EuclideanPoint, SpiderPoint>;

Point euclidean_point(std::vector<double> coords);
Point spider_point(int leg, double radius);

struct EuclideanSpace {
  int dim = 1;
};

struct SpiderSpace {
  int legs = 1;
};

using Space = std::variant<EuclideanSpace, SpiderSpace>;

Space euclidean_space(int dim);
Space spider_space(int legs);

// Throws std::invalid_argument when the point does not belong to the space
// (wrong model, dimension mismatch, leg out of range, negative radius,
// non-finite coordinate).
void require_point(const Space& space, const Point& p);

double distance(const Space& space, const Point& p, const Point& q);

// z with d(p,z) = t*d(p,q) and d(z,q) = (1-t)*d(p,q). In the spider the
// geodesic passes through the root when the legs differ. Throws
// std::domain_error for t outside [0,1].
Point geodesic_point(const Space& space, const Point& p, const Point& q,
                     double t);

// Signed slack of the four-point inequality
//   d(x,y)^2 + d(u,v)^2 <= d(x,v)^2 + d(y,u)^2 + 2 d(x,u) d(y,v);
// nonnegative (up to tolerance) certifies the quadruple.
double cat0_quadruple_residual(const Space& space, const Point& x,
                               const Point& y, const Point& u, const Point& v);

// Convex regions: axis box (Euclidean), metric ball (both models), segment
// on a single leg (spider).
struct BoxRegion {
  std::vector<double> lo, hi;
};

struct BallRegion {
  Point center;
  double radius = 1.0;
};

struct LegIntervalRegion {
  int leg = 0;
  double lo = 0.0, hi = 0.0;
};

using Region = std::variant<BoxRegion, BallRegion, LegIntervalRegion>;

// Throws std::invalid_argument for region/space mismatches or malformed
// bounds (lo > hi, nonpositive ball radius, non-finite values).
void require_region(const Space& space, const Region& region);

bool region_contains(const Space& space, const Region& region, const Point& p,
                     double tol = 0.0);

// Metric projection. Closed forms: componentwise clamp (box), radial move
// along the geodesic from the center (ball), clamp along the leg with
// routing through the root (leg interval).
Point project_to_region(const Space& space, const Region& region,
                        const Point& p);

// A modulus of total boundedness: among any M+1 points of the region some
// pair is within 1/(k+1). Pigeonhole cell counts:
//   box, side lengths L_j in dimension d:  M = prod_j ceil(L_j*(k+1)*sqrt(d))
//   spider, legs l, max radius R:          M = l*ceil(2R(k+1)) + 1
// Euclidean balls go through their bounding box. Exact integer arithmetic
// throughout (ceil(q*sqrt(d)) is resolved by integer square comparison).
BigInt tb_modulus(const Space& space, const Region& region, const BigInt& k);

}  // namespace altfix
