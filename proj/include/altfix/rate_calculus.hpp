#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "altfix/geodesic_space.hpp"
#include "altfix/rational.hpp"
#include "altfix/schedule.hpp"

namespace altfix {

// Moduli are monotone integer-valued witnesses: eps-signature ones (alpha,
// beta and their shifted variants) answer "from which index on is the
// series/sequence below eps", index-signature ones answer the
// total-boundedness question for a region. All evaluation is exact.

struct Modulus;
using ModulusPtr = std::shared_ptr<const Modulus>;

struct ConstantModulus {
  BigInt value;
};

// Geometric series c*q^n. tail_mode: minimal N with sum_{i>=N} c q^i <= eps
// (a Cauchy modulus); otherwise minimal N with c q^N <= eps (a rate of
// convergence for the terms).
struct GeometricTailModulus {
  Rational c, q;
  bool tail_mode = true;
};

// Finitely many listed terms, zero afterwards; same two readings.
struct TableModulus {
  std::vector<Rational> values;
  bool tail_mode = true;
};

// eval(eps) = max(left(eps/2), right(eps/2)): a modulus for the termwise
// sum of two series, built from moduli of the summands.
struct SumSplitModulus {
  ModulusPtr left, right;
};

// Index-signature modulus backed by a concrete bounded region.
struct RegionCellsModulus {
  Space space;
  Region region;
};

struct Modulus {
  std::variant<ConstantModulus, GeometricTailModulus, TableModulus,
               SumSplitModulus, RegionCellsModulus>
      form;
};

Modulus constant_modulus(const BigInt& value);
Modulus region_cells_modulus(Space space, Region region);

// Throws std::domain_error for eps <= 0 and std::invalid_argument when the
// modulus has the other signature.
BigInt modulus_at_eps(const Modulus& m, const Rational& eps);
BigInt modulus_at_index(const Modulus& m, const BigInt& k);

// Exact moduli of an error schedule: alpha is a Cauchy modulus for the
// partial sums of gamma, beta a rate of convergence for the terms, B an
// upper bound on the full sum; the primed triple serves the shifted series
// gamma'_n = eps_{n+1} + delta_n.
struct ScheduleModuli {
  Modulus alpha, beta;
  Rational B;
  Modulus alpha_prime, beta_prime;
  Rational B_prime;
};

ScheduleModuli schedule_moduli(const ErrorSchedule& schedule);

// Counterfunctions g: N -> N quantified over in the metastable statements.
struct ConstantCf {
  BigInt value;
};
struct IdentityCf {};
struct AffineCf {
  BigInt a, b;  // n -> a*n + b, both coefficients >= 0
};
struct TableCf {
  std::vector<BigInt> values;
  BigInt fallback;
};

struct Counterfunction {
  std::variant<ConstantCf, IdentityCf, AffineCf, TableCf> form;
};

Counterfunction constant_cf(const BigInt& value);
Counterfunction identity_cf();
Counterfunction affine_cf(const BigInt& a, const BigInt& b);
Counterfunction table_cf(std::vector<BigInt> values, const BigInt& fallback);

BigInt counterfunction_at(const Counterfunction& g, const BigInt& n);
// max_{i <= n} g(i), in closed form so n may be astronomically large.
BigInt counterfunction_max_upto(const Counterfunction& g, const BigInt& n);
std::string counterfunction_to_string(const Counterfunction& g);

// Symbolic shape scale*(1 + 2^exponent) + offset kept alongside bounds that
// arise from the power-of-two closed forms, so certificates stay readable
// when the decimal expansion does not.
struct PowForm {
  BigInt scale, exponent, offset;
};

std::string pow_form_to_string(const PowForm& form);

struct Bound {
  BigInt value;
  std::optional<PowForm> form;
};

std::string bound_to_string(const Bound& bound);

// Asymptotic-regularity rate for the exact alternating iteration under
// 2 d(x0,u) <= b:  phi(eps,b) = k*ceil(2b(1+2^k)/eps) + 1 with
// k = ceil(2b/eps).
Bound phi(const Rational& eps, const Rational& b);

// k*ceil(b/eps'): some index N below it has r_N - r_{N+k} <= eps' for every
// nonincreasing sequence in [0,b].
BigInt monotone_cauchy_bound(const Rational& b, const Rational& eps_prime,
                             const BigInt& k);

// Inexact-iteration rate under d(x0,u) <= b, error sums bounded by B with
// Cauchy modulus alpha:  phi_prime = alpha(eps/3) + phi(eps/3, 2(b+B)).
Bound phi_prime(const Rational& eps, const Rational& b, const Rational& B,
                const Modulus& alpha);

// phi_prime at eps/2 (controls the y-sequence residuals).
Bound phi_double_prime(const Rational& eps, const Rational& b,
                       const Rational& B, const Modulus& alpha);

// Rate for d(x_n, S x_n):  max(beta(eps/2), phi_prime(eps/2)).
Bound phi_beta(const Rational& eps, const Modulus& beta, const Rational& b,
               const Rational& B, const Modulus& alpha);

// Shifted-sequence variant: max(beta'(eps/2), phi_double_prime(eps/2)).
// Only the term-rate modulus is the shifted one; the Cauchy modulus and
// sum bound stay those of the unshifted series.
Bound phi_beta_primed(const Rational& eps, const Modulus& beta_prime,
                      const Rational& b, const Rational& B,
                      const Modulus& alpha);

struct PhiBetaCurve {
  Modulus beta;
  Rational b, B;
  Modulus alpha;
};

Bound phi_beta_at(const PhiBetaCurve& curve, const Rational& eps);

// max(N, max_{i<=k} phi_beta(1/(i+1))). The inner max is the i=k term
// because every catalog phi_beta is nonincreasing in eps; for k <= 10^4 the
// max is additionally brute-forced and cross-checked (std::logic_error on
// disagreement).
Bound phi_hat(const BigInt& k, const BigInt& N, const PhiBetaCurve& curve);

// m*(r+1): how near to fixed a point must be so that distances to it rise
// by at most accumulated errors plus 1/(r+1) over the next m steps.
BigInt chi_fejer(const BigInt& n, const BigInt& m, const BigInt& r);

// (max_{i<=n} g(i)) * (k+1).
BigInt chi_M(const Counterfunction& g, const BigInt& n, const BigInt& k);

// alpha(1/(k+1)).
BigInt xi(const Modulus& alpha, const BigInt& k);

struct RateCertificate {
  std::string claim_id;
  std::map<std::string, std::string> inputs;
  Bound bound;
};

enum class PsiHatStrategy {
  // Stop unfolding once a fixed point of the one-step map is reached (the
  // remaining unfolds cannot change it).
  ClosedForm,
  // Perform all P unfolds literally.
  Literal,
};

// Metastability bound: with P = tb(8k+7)+1 and xi = alpha(1/(8k+8)),
// unfolds v <- phi_hat(chi_M(g, v, 8k+7), xi) exactly P times from v = 0.
// b follows the d(x0,u) <= b convention (recorded in the certificate).
RateCertificate psi_hat(const BigInt& k, const Counterfunction& g,
                        const Modulus& tb, const Modulus& alpha,
                        const Modulus& beta, const Rational& b,
                        const Rational& B,
                        PsiHatStrategy strategy = PsiHatStrategy::ClosedForm);

}  // namespace altfix
