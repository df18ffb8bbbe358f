#include "altfix/rate_calculus.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace altfix {

namespace {

constexpr unsigned long kGeometricSearchCap = 1ul << 26;
const BigInt kBruteMaxWindow = 10000;

void require_positive(const Rational& x, const char* what) {
  if (x <= 0) throw std::domain_error(std::string(what) + " must be > 0");
}

void require_nonnegative(const Rational& x, const char* what) {
  if (x < 0) throw std::domain_error(std::string(what) + " must be >= 0");
}

// Minimal N >= 0 with c*q^N <= tau, by exponential + binary search over
// exact powers.
BigInt geometric_min_index(const Rational& c, const Rational& q,
                           const Rational& tau) {
  if (q <= 0 || q >= 1)
    throw std::invalid_argument("geometric modulus needs q in (0,1)");
  if (tau <= 0) throw std::domain_error("geometric modulus needs tau > 0");
  if (c <= tau) return 0;
  unsigned long hi = 1;
  while (c * rational_pow(q, hi) > tau) {
    hi *= 2;
    if (hi > kGeometricSearchCap)
      throw std::overflow_error("schedule modulus exceeds supported range");
  }
  unsigned long lo = hi / 2;  // fails (hi == 1 leaves lo = 0, which is c > tau)
  while (hi - lo > 1) {
    const unsigned long mid = lo + (hi - lo) / 2;
    (c * rational_pow(q, mid) <= tau ? hi : lo) = mid;
  }
  return BigInt(hi);
}

BigInt table_tail_index(const std::vector<Rational>& values,
                        const Rational& eps) {
  Rational suffix = 0;
  for (const Rational& v : values) suffix += v;
  std::size_t n = 0;
  while (n < values.size() && suffix > eps) suffix -= values[n++];
  return BigInt(n);
}

BigInt table_term_index(const std::vector<Rational>& values,
                        const Rational& eps) {
  std::size_t n = values.size();
  while (n > 0 && values[n - 1] <= eps) --n;
  return BigInt(n);
}

Rational sequence_sum(const SequenceSpec& seq) {
  if (std::holds_alternative<ZeroSeq>(seq)) return Rational(0);
  if (const auto* geo = std::get_if<GeometricSeq>(&seq))
    return geo->c / (Rational(1) - geo->q);
  Rational s = 0;
  for (const Rational& v : std::get<FiniteListSeq>(seq).values) s += v;
  return s;
}

Modulus sequence_modulus(const SequenceSpec& seq, bool tail_mode) {
  if (std::holds_alternative<ZeroSeq>(seq))
    return constant_modulus(BigInt(0));
  if (const auto* geo = std::get_if<GeometricSeq>(&seq))
    return Modulus{GeometricTailModulus{geo->c, geo->q, tail_mode}};
  return Modulus{TableModulus{std::get<FiniteListSeq>(seq).values, tail_mode}};
}

// Modulus for the termwise sum of two catalog sequences. Same-ratio
// geometrics and pairs of lists merge exactly; mixed shapes fall back to
// the eps/2 split.
Modulus combined_modulus(const SequenceSpec& a, const SequenceSpec& b,
                         bool tail_mode) {
  if (sequence_is_zero(a)) return sequence_modulus(b, tail_mode);
  if (sequence_is_zero(b)) return sequence_modulus(a, tail_mode);
  const auto* ga = std::get_if<GeometricSeq>(&a);
  const auto* gb = std::get_if<GeometricSeq>(&b);
  if (ga && gb && ga->q == gb->q)
    return Modulus{GeometricTailModulus{ga->c + gb->c, ga->q, tail_mode}};
  const auto* la = std::get_if<FiniteListSeq>(&a);
  const auto* lb = std::get_if<FiniteListSeq>(&b);
  if (la && lb) {
    std::vector<Rational> merged(std::max(la->values.size(), lb->values.size()),
                                 Rational(0));
    for (std::size_t i = 0; i < la->values.size(); ++i)
      merged[i] += la->values[i];
    for (std::size_t i = 0; i < lb->values.size(); ++i)
      merged[i] += lb->values[i];
    return Modulus{TableModulus{std::move(merged), tail_mode}};
  }
  return Modulus{SumSplitModulus{
      std::make_shared<Modulus>(sequence_modulus(a, tail_mode)),
      std::make_shared<Modulus>(sequence_modulus(b, tail_mode))}};
}

}  // namespace

Modulus constant_modulus(const BigInt& value) {
  if (value < 0)
    throw std::invalid_argument("modulus values must be nonnegative");
  return Modulus{ConstantModulus{value}};
}

Modulus region_cells_modulus(Space space, Region region) {
  require_region(space, region);
  return Modulus{RegionCellsModulus{std::move(space), std::move(region)}};
}

BigInt modulus_at_eps(const Modulus& m, const Rational& eps) {
  if (eps <= 0) throw std::domain_error("modulus argument eps must be > 0");
  if (const auto* c = std::get_if<ConstantModulus>(&m.form)) return c->value;
  if (const auto* g = std::get_if<GeometricTailModulus>(&m.form)) {
    const Rational tau = g->tail_mode ? eps * (Rational(1) - g->q) : eps;
    return geometric_min_index(g->c, g->q, tau);
  }
  if (const auto* t = std::get_if<TableModulus>(&m.form))
    return t->tail_mode ? table_tail_index(t->values, eps)
                        : table_term_index(t->values, eps);
  if (const auto* s = std::get_if<SumSplitModulus>(&m.form)) {
    if (!s->left || !s->right)
      throw std::invalid_argument("sum-split modulus with missing side");
    const Rational half = eps / 2;
    return std::max(modulus_at_eps(*s->left, half),
                    modulus_at_eps(*s->right, half));
  }
  throw std::invalid_argument(
      "index-signature modulus evaluated at an eps argument");
}

BigInt modulus_at_index(const Modulus& m, const BigInt& k) {
  if (k < 0) throw std::domain_error("modulus index must be >= 0");
  if (const auto* c = std::get_if<ConstantModulus>(&m.form)) return c->value;
  if (const auto* r = std::get_if<RegionCellsModulus>(&m.form))
    return tb_modulus(r->space, r->region, k);
  throw std::invalid_argument(
      "eps-signature modulus evaluated at an integer index");
}

ScheduleModuli schedule_moduli(const ErrorSchedule& schedule) {
  const SequenceSpec shifted = sequence_shifted(schedule.eps);
  ScheduleModuli out{
      combined_modulus(schedule.eps, schedule.delta, true),
      combined_modulus(schedule.eps, schedule.delta, false),
      sequence_sum(schedule.eps) + sequence_sum(schedule.delta),
      combined_modulus(shifted, schedule.delta, true),
      combined_modulus(shifted, schedule.delta, false),
      sequence_sum(shifted) + sequence_sum(schedule.delta)};
  return out;
}

Counterfunction constant_cf(const BigInt& value) {
  if (value < 0)
    throw std::invalid_argument("counterfunction values must be >= 0");
  return Counterfunction{ConstantCf{value}};
}

Counterfunction identity_cf() { return Counterfunction{IdentityCf{}}; }

Counterfunction affine_cf(const BigInt& a, const BigInt& b) {
  if (a < 0 || b < 0)
    throw std::invalid_argument("affine counterfunction needs a, b >= 0");
  return Counterfunction{AffineCf{a, b}};
}

Counterfunction table_cf(std::vector<BigInt> values, const BigInt& fallback) {
  for (const BigInt& v : values)
    if (v < 0) throw std::invalid_argument("counterfunction values must be >= 0");
  if (fallback < 0)
    throw std::invalid_argument("counterfunction values must be >= 0");
  return Counterfunction{TableCf{std::move(values), fallback}};
}

BigInt counterfunction_at(const Counterfunction& g, const BigInt& n) {
  if (n < 0) throw std::domain_error("counterfunction argument must be >= 0");
  if (const auto* c = std::get_if<ConstantCf>(&g.form)) return c->value;
  if (std::holds_alternative<IdentityCf>(g.form)) return n;
  if (const auto* a = std::get_if<AffineCf>(&g.form)) return a->a * n + a->b;
  const auto& t = std::get<TableCf>(g.form);
  if (n < BigInt(t.values.size()))
    return t.values[n.convert_to<std::size_t>()];
  return t.fallback;
}

BigInt counterfunction_max_upto(const Counterfunction& g, const BigInt& n) {
  if (n < 0) throw std::domain_error("counterfunction argument must be >= 0");
  if (const auto* c = std::get_if<ConstantCf>(&g.form)) return c->value;
  if (std::holds_alternative<IdentityCf>(g.form)) return n;
  if (const auto* a = std::get_if<AffineCf>(&g.form))
    return a->a * n + a->b;  // nondecreasing since a >= 0
  const auto& t = std::get<TableCf>(g.form);
  BigInt best = 0;
  const bool covers_tail = n >= BigInt(t.values.size());
  const std::size_t upto =
      covers_tail ? t.values.size() : n.convert_to<std::size_t>() + 1;
  for (std::size_t i = 0; i < upto; ++i) best = std::max(best, t.values[i]);
  if (covers_tail) best = std::max(best, t.fallback);
  return best;
}

std::string pow_form_to_string(const PowForm& form) {
  std::string s =
      form.scale.str() + "*(1+2^" + form.exponent.str() + ")";
  if (form.offset != 0) s += "+" + form.offset.str();
  return s;
}

std::string bound_to_string(const Bound& bound) {
  if (bound.form) return bound.value.str() + " = " + pow_form_to_string(*bound.form);
  return bound.value.str();
}

Bound phi(const Rational& eps, const Rational& b) {
  require_positive(eps, "eps");
  require_positive(b, "b");
  const BigInt k = ceil_rational(2 * b / eps);  // >= 1 since b, eps > 0
  const BigInt p = pow2(k) + 1;
  const BigInt m = ceil_rational(2 * b * Rational(p) / eps);
  Bound out{k * m + 1, std::nullopt};
  if (m % p == 0) out.form = PowForm{k * (m / p), k, 1};
  return out;
}

BigInt monotone_cauchy_bound(const Rational& b, const Rational& eps_prime,
                             const BigInt& k) {
  require_positive(b, "b");
  require_positive(eps_prime, "eps_prime");
  if (k < 1) throw std::domain_error("k must be >= 1");
  return k * ceil_rational(b / eps_prime);
}

Bound phi_prime(const Rational& eps, const Rational& b, const Rational& B,
                const Modulus& alpha) {
  require_positive(eps, "eps");
  require_positive(b, "b");
  require_nonnegative(B, "B");
  const BigInt head = modulus_at_eps(alpha, eps / 3);
  Bound out = phi(eps / 3, 2 * (b + B));
  out.value += head;
  if (out.form) out.form->offset += head;
  return out;
}

Bound phi_double_prime(const Rational& eps, const Rational& b,
                       const Rational& B, const Modulus& alpha) {
  require_positive(eps, "eps");
  return phi_prime(eps / 2, b, B, alpha);
}

namespace {

Bound max_bound(const BigInt& plain, Bound structured) {
  if (plain > structured.value) return Bound{plain, std::nullopt};
  return structured;
}

}  // namespace

Bound phi_beta(const Rational& eps, const Modulus& beta, const Rational& b,
               const Rational& B, const Modulus& alpha) {
  require_positive(eps, "eps");
  return max_bound(modulus_at_eps(beta, eps / 2),
                   phi_prime(eps / 2, b, B, alpha));
}

Bound phi_beta_primed(const Rational& eps, const Modulus& beta_prime,
                      const Rational& b, const Rational& B,
                      const Modulus& alpha) {
  require_positive(eps, "eps");
  return max_bound(modulus_at_eps(beta_prime, eps / 2),
                   phi_double_prime(eps / 2, b, B, alpha));
}

Bound phi_beta_at(const PhiBetaCurve& curve, const Rational& eps) {
  return phi_beta(eps, curve.beta, curve.b, curve.B, curve.alpha);
}

Bound phi_hat(const BigInt& k, const BigInt& N, const PhiBetaCurve& curve) {
  if (k < 0 || N < 0) throw std::domain_error("phi_hat needs k, N >= 0");
  // The max over i <= k of phi_beta(1/(i+1)) is the i=k term: phi_beta is
  // nonincreasing in eps for every catalog curve. Cross-checked below while
  // the window is small enough to enumerate.
  Bound densest = phi_beta_at(curve, Rational(BigInt(1), k + 1));
  if (k <= kBruteMaxWindow) {
    BigInt brute = 0;
    for (BigInt i = 0; i <= k; ++i)
      brute = std::max(brute, phi_beta_at(curve, Rational(BigInt(1), i + 1)).value);
    if (brute != densest.value)
      throw std::logic_error(
          "phi_beta max not attained at the densest term; a non-monotone "
          "modulus slipped into the catalog");
  }
  return max_bound(N, std::move(densest));
}

BigInt chi_fejer(const BigInt& n, const BigInt& m, const BigInt& r) {
  if (n < 0 || m < 0 || r < 0)
    throw std::domain_error("chi_fejer needs nonnegative arguments");
  return m * (r + 1);
}

BigInt chi_M(const Counterfunction& g, const BigInt& n, const BigInt& k) {
  if (k < 0) throw std::domain_error("chi_M needs k >= 0");
  return counterfunction_max_upto(g, n) * (k + 1);
}

BigInt xi(const Modulus& alpha, const BigInt& k) {
  if (k < 0) throw std::domain_error("xi needs k >= 0");
  return modulus_at_eps(alpha, Rational(BigInt(1), k + 1));
}

std::string counterfunction_to_string(const Counterfunction& g) {
  if (const auto* c = std::get_if<ConstantCf>(&g.form))
    return "constant " + c->value.str();
  if (std::holds_alternative<IdentityCf>(g.form)) return "identity";
  if (const auto* a = std::get_if<AffineCf>(&g.form))
    return "n -> " + a->a.str() + "*n+" + a->b.str();
  const auto& t = std::get<TableCf>(g.form);
  std::string s = "table [";
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (i) s += ",";
    s += t.values[i].str();
  }
  return s + "] then " + t.fallback.str();
}

RateCertificate psi_hat(const BigInt& k, const Counterfunction& g,
                        const Modulus& tb, const Modulus& alpha,
                        const Modulus& beta, const Rational& b,
                        const Rational& B, PsiHatStrategy strategy) {
  if (k < 0) throw std::domain_error("psi_hat needs k >= 0");
  require_positive(b, "b");
  require_nonnegative(B, "B");
  const BigInt idx = 8 * k + 7;
  const BigInt P = modulus_at_index(tb, idx) + 1;
  const BigInt xi_val = xi(alpha, idx);
  const PhiBetaCurve curve{beta, b, B, alpha};

  BigInt v = 0;
  Bound vb{BigInt(0), std::nullopt};
  BigInt unfolds = 0;
  for (BigInt i = 0; i < P; ++i) {
    Bound next = phi_hat(chi_M(g, v, idx), xi_val, curve);
    ++unfolds;
    const bool stable = next.value == v;
    v = next.value;
    vb = std::move(next);
    if (stable && strategy == PsiHatStrategy::ClosedForm) break;
  }

  RateCertificate cert;
  cert.claim_id = "metastability";
  cert.inputs = {{"k", k.str()},
                 {"g", counterfunction_to_string(g)},
                 {"b", rational_to_string(b)},
                 {"B", rational_to_string(B)},
                 {"P", P.str()},
                 {"unfolds", unfolds.str()},
                 {"b_convention", "distance"}};
  cert.bound = std::move(vb);
  return cert;
}

}  // namespace altfix
