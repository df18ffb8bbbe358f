#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "altfix/geodesic_space.hpp"

namespace altfix {

// Operator catalog. Every entry has a closed-form action, so no inner
// solver tolerance ever leaks into the residuals we verify downstream.

enum class OperatorClass { FirmlyNonexpansive, P2Only, Nonexpansive };

struct OperatorSpec;

struct ProjectionOp {
  Region region;
};

// Resolvent of z -> 1/2 d(z, anchor)^2 with step lambda:
// x -> geodesic point at parameter lambda/(1+lambda) from x toward anchor.
struct ProxSqDistOp {
  Point anchor;
  double lambda = 1.0;
};

// Componentwise shrink toward 0 by lambda (Euclidean only).
struct SoftThresholdOp {
  double lambda = 1.0;
};

struct CompositionOp {
  std::shared_ptr<const OperatorSpec> first, second;  // second after first
};

using OperatorKernel =
    std::variant<ProjectionOp, ProxSqDistOp, SoftThresholdOp, CompositionOp>;

struct OperatorSpec {
  OperatorKernel kernel;
  OperatorClass claimed_class = OperatorClass::FirmlyNonexpansive;
};

OperatorSpec projection_op(Region region);
OperatorSpec prox_sqdist_op(Point anchor, double lambda);
OperatorSpec soft_threshold_op(double lambda);
OperatorSpec composition_op(OperatorSpec first, OperatorSpec second);

// Throws std::invalid_argument for operator/space mismatches (checks the
// whole composition tree, regions and anchors included).
void require_operator(const Space& space, const OperatorSpec& op);

Point apply(const Space& space, const OperatorSpec& op, const Point& p);

// Signed slack of firm nonexpansiveness at parameters lambda in [0,1]:
//   min over samples of d((1-l)p + l Tp, (1-l)q + l Tq) - d(Tp,Tq).
// Nonnegative (up to tolerance) certifies the sampled instances.
double check_firmly_nonexpansive(const Space& space, const OperatorSpec& op,
                                 const Point& p, const Point& q,
                                 const std::vector<double>& lambda_samples);

// Signed slack of the squared-distance property
//   2 d(Tp,Tq)^2 <= d(p,Tq)^2 + d(q,Tp)^2 - d(p,Tp)^2 - d(q,Tq)^2.
double check_p2(const Space& space, const OperatorSpec& op, const Point& p,
                const Point& q);

// Objective data for the coupled minimization
//   f(x) + g(y) + 1/(2 lambda) d(x,y)^2.
struct IndicatorFn {
  Region region;
};

struct HalfSqDistFn {
  Point anchor;
};

struct AbsFn {};  // sum of absolute coordinate values (Euclidean only)

using FunctionSpec = std::variant<IndicatorFn, HalfSqDistFn, AbsFn>;

struct ObjectiveSpec {
  FunctionSpec f, g;
  double lambda = 1.0;
};

// +infinity when an indicator is violated (containment tested with a 1e-9
// slack so projected points on a region boundary stay feasible).
double function_value(const Space& space, const FunctionSpec& fn,
                      const Point& p);

double objective_value(const Space& space, const ObjectiveSpec& obj,
                       const Point& x, const Point& y);

// The resolvent of each catalog function, in closed form: indicators give
// projections (lambda-independent), half squared distance gives the radial
// prox, the absolute value gives soft thresholding.
OperatorSpec resolvent_of(const FunctionSpec& fn, double lambda);

}  // namespace altfix
