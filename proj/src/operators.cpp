#include "altfix/operators.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace altfix {

namespace {

constexpr double kIndicatorSlack = 1e-9;

double soft_shrink(double x, double lambda) {
  if (x > lambda) return x - lambda;
  if (x < -lambda) return x + lambda;
  return 0.0;
}

}  // namespace

OperatorSpec projection_op(Region region) {
  return {ProjectionOp{std::move(region)}, OperatorClass::FirmlyNonexpansive};
}

OperatorSpec prox_sqdist_op(Point anchor, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("prox step lambda must be finite and > 0");
  return {ProxSqDistOp{std::move(anchor), lambda},
          OperatorClass::FirmlyNonexpansive};
}

OperatorSpec soft_threshold_op(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("shrinkage lambda must be finite and > 0");
  return {SoftThresholdOp{lambda}, OperatorClass::FirmlyNonexpansive};
}

OperatorSpec composition_op(OperatorSpec first, OperatorSpec second) {
  return {CompositionOp{std::make_shared<OperatorSpec>(std::move(first)),
                        std::make_shared<OperatorSpec>(std::move(second))},
          OperatorClass::Nonexpansive};
}

void require_operator(const Space& space, const OperatorSpec& op) {
  if (const auto* proj = std::get_if<ProjectionOp>(&op.kernel)) {
    require_region(space, proj->region);
  } else if (const auto* prox = std::get_if<ProxSqDistOp>(&op.kernel)) {
    require_point(space, prox->anchor);
    if (!(prox->lambda > 0.0) || !std::isfinite(prox->lambda))
      throw std::invalid_argument("prox step lambda must be finite and > 0");
  } else if (std::holds_alternative<SoftThresholdOp>(op.kernel)) {
    if (!std::holds_alternative<EuclideanSpace>(space))
      throw std::invalid_argument("soft threshold needs a Euclidean space");
  } else {
    const auto& comp = std::get<CompositionOp>(op.kernel);
    if (!comp.first || !comp.second)
      throw std::invalid_argument("composition with missing factor");
    require_operator(space, *comp.first);
    require_operator(space, *comp.second);
  }
}

Point apply(const Space& space, const OperatorSpec& op, const Point& p) {
  if (const auto* proj = std::get_if<ProjectionOp>(&op.kernel))
    return project_to_region(space, proj->region, p);
  if (const auto* prox = std::get_if<ProxSqDistOp>(&op.kernel))
    return geodesic_point(space, p, prox->anchor,
                          prox->lambda / (1.0 + prox->lambda));
  if (const auto* shrink = std::get_if<SoftThresholdOp>(&op.kernel)) {
    if (!std::holds_alternative<EuclideanSpace>(space))
      throw std::invalid_argument("soft threshold needs a Euclidean space");
    auto e = std::get<EuclideanPoint>(p);
    for (double& c : e.coords) c = soft_shrink(c, shrink->lambda);
    return e;
  }
  const auto& comp = std::get<CompositionOp>(op.kernel);
  return apply(space, *comp.second, apply(space, *comp.first, p));
}

double check_firmly_nonexpansive(const Space& space, const OperatorSpec& op,
                                 const Point& p, const Point& q,
                                 const std::vector<double>& lambda_samples) {
  const Point tp = apply(space, op, p);
  const Point tq = apply(space, op, q);
  const double dT = distance(space, tp, tq);
  double worst = std::numeric_limits<double>::infinity();
  for (double l : lambda_samples) {
    if (l < 0.0 || l > 1.0)
      throw std::domain_error("mixing parameter must lie in [0,1]");
    const Point mp = geodesic_point(space, p, tp, l);
    const Point mq = geodesic_point(space, q, tq, l);
    worst = std::fmin(worst, distance(space, mp, mq) - dT);
  }
  return worst;
}

double check_p2(const Space& space, const OperatorSpec& op, const Point& p,
                const Point& q) {
  const Point tp = apply(space, op, p);
  const Point tq = apply(space, op, q);
  const double dT = distance(space, tp, tq);
  const double d_p_tq = distance(space, p, tq);
  const double d_q_tp = distance(space, q, tp);
  const double d_p_tp = distance(space, p, tp);
  const double d_q_tq = distance(space, q, tq);
  return d_p_tq * d_p_tq + d_q_tp * d_q_tp - d_p_tp * d_p_tp -
         d_q_tq * d_q_tq - 2.0 * dT * dT;
}

double function_value(const Space& space, const FunctionSpec& fn,
                      const Point& p) {
  if (const auto* ind = std::get_if<IndicatorFn>(&fn)) {
    return region_contains(space, ind->region, p, kIndicatorSlack)
               ? 0.0
               : std::numeric_limits<double>::infinity();
  }
  if (const auto* hsd = std::get_if<HalfSqDistFn>(&fn)) {
    const double d = distance(space, p, hsd->anchor);
    return 0.5 * d * d;
  }
  const auto* e = std::get_if<EuclideanPoint>(&p);
  if (!e) throw std::invalid_argument("abs objective needs a Euclidean point");
  double s = 0.0;
  for (double c : e->coords) s += std::fabs(c);
  return s;
}

double objective_value(const Space& space, const ObjectiveSpec& obj,
                       const Point& x, const Point& y) {
  const double fx = function_value(space, obj.f, x);
  const double gy = function_value(space, obj.g, y);
  if (std::isinf(fx) || std::isinf(gy))
    return std::numeric_limits<double>::infinity();
  const double d = distance(space, x, y);
  return fx + gy + d * d / (2.0 * obj.lambda);
}

OperatorSpec resolvent_of(const FunctionSpec& fn, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("resolvent step lambda must be > 0");
  if (const auto* ind = std::get_if<IndicatorFn>(&fn))
    return projection_op(ind->region);
  if (const auto* hsd = std::get_if<HalfSqDistFn>(&fn))
    return prox_sqdist_op(hsd->anchor, lambda);
  return soft_threshold_op(lambda);
}

}  // namespace altfix
