#include "altfix/geodesic_space.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace altfix {

namespace {

bool finite(double x) { return std::isfinite(x); }

const EuclideanPoint& as_euclidean(const Point& p) {
  if (const auto* e = std::get_if<EuclideanPoint>(&p)) return *e;
  throw std::invalid_argument("expected a Euclidean point");
}

const SpiderPoint& as_spider(const Point& p) {
  if (const auto* s = std::get_if<SpiderPoint>(&p)) return *s;
  throw std::invalid_argument("expected a spider point");
}

double euclidean_distance(const EuclideanPoint& p, const EuclideanPoint& q) {
  if (p.coords.size() != q.coords.size())
    throw std::invalid_argument("dimension mismatch between points");
  double s = 0.0;
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    const double d = p.coords[i] - q.coords[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double spider_distance(const SpiderPoint& p, const SpiderPoint& q) {
  if (p.leg == q.leg || p.radius == 0.0 || q.radius == 0.0)
    return std::fabs(p.radius - q.radius);
  return p.radius + q.radius;
}

// Minimal integer m >= 0 with (m*den)^2 >= num^2 * mult, i.e. m = ceil of
// (num/den)*sqrt(mult) for nonnegative num/den. Exact.
BigInt ceil_scaled_sqrt(const BigInt& num, const BigInt& den,
                        const BigInt& mult) {
  if (num == 0) return 0;
  const BigInt target = num * num * mult;
  BigInt m = sqrt(BigInt(target / (den * den)));  // floor estimate
  while (m * m * den * den >= target && m > 0) --m;
  while (m * m * den * den < target) ++m;
  return m;
}

BigInt ceil_positive(const Rational& q) {
  BigInt c = ceil_rational(q);
  return c < 0 ? BigInt(0) : c;
}

}  // namespace

Point euclidean_point(std::vector<double> coords) {
  return EuclideanPoint{std::move(coords)};
}

Point spider_point(int leg, double radius) {
  if (radius == 0.0) return SpiderPoint{0, 0.0};
  return SpiderPoint{leg, radius};
}

Space euclidean_space(int dim) {
  if (dim < 1) throw std::invalid_argument("Euclidean dimension must be >= 1");
  return EuclideanSpace{dim};
}

Space spider_space(int legs) {
  if (legs < 1) throw std::invalid_argument("spider needs at least one leg");
  return SpiderSpace{legs};
}

void require_point(const Space& space, const Point& p) {
  if (const auto* es = std::get_if<EuclideanSpace>(&space)) {
    const auto& e = as_euclidean(p);
    if (static_cast<int>(e.coords.size()) != es->dim)
      throw std::invalid_argument("point dimension " +
                                  std::to_string(e.coords.size()) +
                                  " does not match space dimension " +
                                  std::to_string(es->dim));
    for (double c : e.coords)
      if (!finite(c)) throw std::invalid_argument("non-finite coordinate");
    return;
  }
  const auto& ss = std::get<SpiderSpace>(space);
  const auto& s = as_spider(p);
  if (!finite(s.radius) || s.radius < 0.0)
    throw std::invalid_argument("spider radius must be finite and >= 0");
  if (s.leg < 0 || s.leg >= ss.legs)
    throw std::invalid_argument("spider leg " + std::to_string(s.leg) +
                                " out of range (legs = " +
                                std::to_string(ss.legs) + ")");
  if (s.radius == 0.0 && s.leg != 0)
    throw std::invalid_argument("the root must carry leg index 0");
}

double distance(const Space& space, const Point& p, const Point& q) {
  if (std::holds_alternative<EuclideanSpace>(space))
    return euclidean_distance(as_euclidean(p), as_euclidean(q));
  return spider_distance(as_spider(p), as_spider(q));
}

Point geodesic_point(const Space& space, const Point& p, const Point& q,
                     double t) {
  if (!finite(t) || t < 0.0 || t > 1.0)
    throw std::domain_error("geodesic parameter must lie in [0,1]");
  if (std::holds_alternative<EuclideanSpace>(space)) {
    const auto& a = as_euclidean(p);
    const auto& b = as_euclidean(q);
    if (a.coords.size() != b.coords.size())
      throw std::invalid_argument("dimension mismatch between points");
    std::vector<double> z(a.coords.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      z[i] = (1.0 - t) * a.coords[i] + t * b.coords[i];
    return EuclideanPoint{std::move(z)};
  }
  const auto& a = as_spider(p);
  const auto& b = as_spider(q);
  if (a.leg == b.leg || a.radius == 0.0 || b.radius == 0.0) {
    const int leg = a.radius == 0.0 ? b.leg : a.leg;
    return spider_point(leg, (1.0 - t) * a.radius + t * b.radius);
  }
  // Distinct legs: the geodesic runs through the root.
  const double len = a.radius + b.radius;
  const double from_a = t * len;
  if (from_a <= a.radius) return spider_point(a.leg, a.radius - from_a);
  return spider_point(b.leg, from_a - a.radius);
}

double cat0_quadruple_residual(const Space& space, const Point& x,
                               const Point& y, const Point& u,
                               const Point& v) {
  const double dxy = distance(space, x, y);
  const double duv = distance(space, u, v);
  const double dxv = distance(space, x, v);
  const double dyu = distance(space, y, u);
  const double dxu = distance(space, x, u);
  const double dyv = distance(space, y, v);
  return dxv * dxv + dyu * dyu + 2.0 * dxu * dyv - dxy * dxy - duv * duv;
}

void require_region(const Space& space, const Region& region) {
  if (const auto* box = std::get_if<BoxRegion>(&region)) {
    const auto* es = std::get_if<EuclideanSpace>(&space);
    if (!es)
      throw std::invalid_argument("box regions require a Euclidean space");
    if (static_cast<int>(box->lo.size()) != es->dim ||
        static_cast<int>(box->hi.size()) != es->dim)
      throw std::invalid_argument("box bounds do not match space dimension");
    for (int i = 0; i < es->dim; ++i) {
      if (!finite(box->lo[i]) || !finite(box->hi[i]))
        throw std::invalid_argument("box bounds must be finite");
      if (box->lo[i] > box->hi[i])
        throw std::invalid_argument("box has lo > hi");
    }
    return;
  }
  if (const auto* ball = std::get_if<BallRegion>(&region)) {
    require_point(space, ball->center);
    if (!finite(ball->radius) || ball->radius <= 0.0)
      throw std::invalid_argument("ball radius must be finite and > 0");
    return;
  }
  const auto& seg = std::get<LegIntervalRegion>(region);
  const auto* ss = std::get_if<SpiderSpace>(&space);
  if (!ss)
    throw std::invalid_argument("leg-interval regions require a spider space");
  if (seg.leg < 0 || seg.leg >= ss->legs)
    throw std::invalid_argument("leg-interval leg out of range");
  if (!finite(seg.lo) || !finite(seg.hi) || seg.lo < 0.0 || seg.lo > seg.hi)
    throw std::invalid_argument("leg interval needs 0 <= lo <= hi < inf");
}

Point project_to_region(const Space& space, const Region& region,
                        const Point& p) {
  if (const auto* box = std::get_if<BoxRegion>(&region)) {
    const auto& e = as_euclidean(p);
    if (e.coords.size() != box->lo.size())
      throw std::invalid_argument("box bounds do not match point dimension");
    std::vector<double> z(e.coords.size());
    for (std::size_t i = 0; i < z.size(); ++i)
      z[i] = std::fmin(std::fmax(e.coords[i], box->lo[i]), box->hi[i]);
    return EuclideanPoint{std::move(z)};
  }
  if (const auto* ball = std::get_if<BallRegion>(&region)) {
    const double d = distance(space, ball->center, p);
    if (d <= ball->radius) return p;
    return geodesic_point(space, ball->center, p, ball->radius / d);
  }
  const auto& seg = std::get<LegIntervalRegion>(region);
  const auto& s = as_spider(p);
  if (s.leg == seg.leg || s.radius == 0.0)
    return spider_point(seg.leg, std::fmin(std::fmax(s.radius, seg.lo), seg.hi));
  // A point on a different leg reaches the segment through the root, so the
  // nearest point is the segment's near end.
  return spider_point(seg.leg, seg.lo);
}

bool region_contains(const Space& space, const Region& region, const Point& p,
                     double tol) {
  return distance(space, p, project_to_region(space, region, p)) <= tol;
}

BigInt tb_modulus(const Space& space, const Region& region, const BigInt& k) {
  if (k < 0) throw std::domain_error("tb_modulus needs k >= 0");
  require_region(space, region);
  const BigInt k1 = k + 1;

  if (const auto* ss = std::get_if<SpiderSpace>(&space)) {
    // Cells: the root plus arcs of length 1/(2(k+1)) along each leg up to
    // the region's maximal radius R; count = legs * ceil(2R(k+1)) + 1.
    double reach = 0.0;
    if (const auto* ball = std::get_if<BallRegion>(&region)) {
      reach = as_spider(ball->center).radius + ball->radius;
    } else if (const auto* seg = std::get_if<LegIntervalRegion>(&region)) {
      reach = seg->hi;
    } else {
      throw std::invalid_argument("unsupported region for a spider space");
    }
    const Rational arcs = Rational(2) * rational_from_double(reach) *
                          Rational(k1);
    return BigInt(ss->legs) * ceil_positive(arcs) + 1;
  }

  const auto& es = std::get<EuclideanSpace>(space);
  std::vector<double> side(static_cast<std::size_t>(es.dim));
  if (const auto* box = std::get_if<BoxRegion>(&region)) {
    for (int i = 0; i < es.dim; ++i) side[i] = box->hi[i] - box->lo[i];
  } else if (const auto* ball = std::get_if<BallRegion>(&region)) {
    // Cover the ball by its bounding box.
    for (int i = 0; i < es.dim; ++i) side[i] = 2.0 * ball->radius;
  } else {
    throw std::invalid_argument("unsupported region for a Euclidean space");
  }

  // Split side L into ceil(L*(k+1)*sqrt(d)) pieces so each cell has
  // diameter at most 1/(k+1); degenerate sides still count one cell.
  BigInt cells = 1;
  for (double len : side) {
    const Rational q = rational_from_double(len) * Rational(k1);
    BigInt m = ceil_scaled_sqrt(numerator(q), denominator(q), BigInt(es.dim));
    if (m < 1) m = 1;
    cells *= m;
  }
  return cells;
}

}  // namespace altfix
