#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "altfix/rate_calculus.hpp"
#include "altfix/rng.hpp"

using namespace altfix;

namespace {

const Modulus kZero = constant_modulus(0);

Rational geometric_tail_sum(const Rational& c, const Rational& q,
                            const BigInt& from) {
  return c * rational_pow(q, from.convert_to<unsigned long>()) /
         (Rational(1) - q);
}

}  // namespace

TEST_CASE("exact rational helpers") {
  CHECK(parse_rational("7/3") == Rational(7, 3));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK(rational_to_string(Rational(10, 4)) == "5/2");
  CHECK(rational_to_string(Rational(-3)) == "-3");
  CHECK(ceil_rational(Rational(-3, 2)) == -1);
  CHECK(floor_rational(Rational(-3, 2)) == -2);
  CHECK(ceil_rational(Rational(4)) == 4);
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(0.1) != Rational(1, 10));  // dyadic, not decimal
  CHECK(to_double(rational_from_double(0.1)) == 0.1);
  CHECK(pow2(10) == 1024);
  CHECK_THROWS_AS(pow2(BigInt(kMaxPow2Exponent) + 1), std::overflow_error);
  CHECK(rational_pow(Rational(2, 3), 5) == Rational(32, 243));
  CHECK(rational_pow(Rational(7), 0) == 1);
}

TEST_CASE("asymptotic-regularity rate closed form") {
  CHECK(phi(Rational(2), Rational(1)).value == 4);
  CHECK(phi(Rational(1), Rational(1)).value == 21);
  CHECK(phi(Rational(1, 2), Rational(1)).value == 273);
  CHECK(phi(Rational(1), Rational(2)).value == 273);
  CHECK(phi(Rational(1), Rational(6)).value == 589969);
  CHECK(phi(Rational(1, 2), Rational(2)).value == 16449);

  SUBCASE("symbolic form matches the value when present") {
    const Bound b = phi(Rational(1), Rational(1));
    REQUIRE(b.form.has_value());
    CHECK(pow_form_to_string(*b.form) == "4*(1+2^2)+1");
    CHECK(b.form->scale * (pow2(b.form->exponent) + 1) + b.form->offset ==
          b.value);
    CHECK(bound_to_string(b) == "21 = 4*(1+2^2)+1");
    // Not every parameter pair divides evenly.
    const Bound plain = phi(Rational(3), Rational(1));
    CHECK(plain.value == 3);
    CHECK_FALSE(plain.form.has_value());
    CHECK(bound_to_string(plain) == "3");
  }

  SUBCASE("monotone in eps and b") {
    const std::vector<Rational> epses{Rational(3), Rational(2), Rational(1),
                                      Rational(1, 2), Rational(1, 3),
                                      Rational(1, 8)};
    for (const Rational& b : {Rational(1, 2), Rational(1), Rational(7, 3)}) {
      BigInt prev = 0;
      for (const Rational& eps : epses) {
        const BigInt v = phi(eps, b).value;
        CHECK(v >= prev);
        prev = v;
      }
    }
    CHECK(phi(Rational(1), Rational(1)).value <=
          phi(Rational(1), Rational(2)).value);
  }

  CHECK_THROWS_AS(phi(Rational(0), Rational(1)), std::domain_error);
  CHECK_THROWS_AS(phi(Rational(1), Rational(-1)), std::domain_error);
}

TEST_CASE("cauchy bound for nonincreasing sequences, brute-forced") {
  CHECK(monotone_cauchy_bound(Rational(3), Rational(1), 40) == 120);
  CHECK(monotone_cauchy_bound(Rational(1), Rational(1, 3), 2) == 6);
  CHECK_THROWS_AS(monotone_cauchy_bound(Rational(1), Rational(1), 0),
                  std::domain_error);

  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational b(rng.uniform_int(1, 5), rng.uniform_int(1, 3));
    const BigInt k = rng.uniform_int(1, 5);
    const Rational eps_prime(1, rng.uniform_int(2, 7));
    const BigInt bound = monotone_cauchy_bound(b, eps_prime, k);
    const std::size_t len =
        bound.convert_to<std::size_t>() + k.convert_to<std::size_t>() + 1;
    std::vector<Rational> r(len);
    Rational cur = b;
    for (std::size_t i = 0; i < len; ++i) {
      r[i] = cur;
      // random dyadic fraction of what is left
      cur -= cur * Rational(rng.uniform_int(0, 8), 64);
    }
    bool found = false;
    for (BigInt n = 0; n <= bound && !found; ++n) {
      const std::size_t i = n.convert_to<std::size_t>();
      found = r[i] - r[i + k.convert_to<std::size_t>()] <= eps_prime;
    }
    CHECK(found);
  }
}

TEST_CASE("schedule moduli are exact and minimal") {
  SUBCASE("geometric, tail and term readings") {
    const ErrorSchedule sched{geometric_seq(Rational(1), Rational(1, 2)),
                              zero_seq()};
    const ScheduleModuli m = schedule_moduli(sched);
    CHECK(m.B == 2);
    CHECK(modulus_at_eps(m.alpha, Rational(1)) == 1);
    CHECK(modulus_at_eps(m.beta, Rational(1, 4)) == 2);
    CHECK(modulus_at_eps(m.alpha, Rational(2)) == 0);
    // shifted series: c scales by q
    CHECK(m.B_prime == 1);
    CHECK(modulus_at_eps(m.alpha_prime, Rational(1)) == 0);

    for (int num = 1; num <= 6; ++num) {
      const Rational eps(1, 1 << num);
      const BigInt n = modulus_at_eps(m.alpha, eps);
      CHECK(geometric_tail_sum(Rational(1), Rational(1, 2), n) <= eps);
      if (n > 0)
        CHECK(geometric_tail_sum(Rational(1), Rational(1, 2), n - 1) > eps);
    }
  }

  SUBCASE("finite lists") {
    const ErrorSchedule sched{
        finite_list_seq({Rational(3, 4), Rational(1, 4)}), zero_seq()};
    const ScheduleModuli m = schedule_moduli(sched);
    CHECK(m.B == 1);
    CHECK(modulus_at_eps(m.alpha, Rational(1)) == 0);
    CHECK(modulus_at_eps(m.alpha, Rational(1, 2)) == 1);
    CHECK(modulus_at_eps(m.alpha, Rational(1, 8)) == 2);
    CHECK(modulus_at_eps(m.beta, Rational(1, 2)) == 1);
    CHECK(modulus_at_eps(m.beta, Rational(1, 8)) == 2);
    CHECK(modulus_at_eps(m.beta, Rational(1)) == 0);
  }

  SUBCASE("same-ratio geometrics merge; mixed shapes split") {
    const ErrorSchedule merged{geometric_seq(Rational(1, 2), Rational(1, 2)),
                               geometric_seq(Rational(1, 4), Rational(1, 2))};
    const ScheduleModuli mm = schedule_moduli(merged);
    CHECK(mm.B == Rational(3, 2));
    // gamma_n = (3/4)(1/2)^n exactly
    for (int num = 0; num <= 6; ++num) {
      const Rational eps(1, 1 << num);
      const BigInt n = modulus_at_eps(mm.alpha, eps);
      CHECK(geometric_tail_sum(Rational(3, 4), Rational(1, 2), n) <= eps);
      if (n > 0)
        CHECK(geometric_tail_sum(Rational(3, 4), Rational(1, 2), n - 1) > eps);
    }

    const ErrorSchedule mixed{
        geometric_seq(Rational(1, 2), Rational(1, 2)),
        finite_list_seq({Rational(1, 4), Rational(1, 8)})};
    const ScheduleModuli ms = schedule_moduli(mixed);
    CHECK(ms.B == Rational(1) + Rational(3, 8));
    // Sum-split upper bound: the tail after alpha(eps) really is <= eps.
    for (int num = 0; num <= 6; ++num) {
      const Rational eps(1, 1 << num);
      const BigInt n = modulus_at_eps(ms.alpha, eps);
      Rational tail = geometric_tail_sum(Rational(1, 2), Rational(1, 2), n);
      const std::vector<Rational> delta{Rational(1, 4), Rational(1, 8)};
      for (std::size_t i = n.convert_to<std::size_t>(); i < delta.size(); ++i)
        tail += delta[i];
      CHECK(tail <= eps);
    }
  }

  SUBCASE("zero schedule collapses to the zero modulus") {
    const ScheduleModuli m = schedule_moduli(ErrorSchedule{});
    CHECK(m.B == 0);
    CHECK(modulus_at_eps(m.alpha, Rational(1, 1000000)) == 0);
    CHECK(modulus_at_eps(m.beta, Rational(1, 1000000)) == 0);
  }

  SUBCASE("signature mismatches throw") {
    CHECK_THROWS_AS(modulus_at_index(kZero, -1), std::domain_error);
    CHECK_THROWS_AS(modulus_at_eps(kZero, Rational(0)), std::domain_error);
    const Modulus tb = region_cells_modulus(euclidean_space(1),
                                            BoxRegion{{0}, {1}});
    CHECK_THROWS_AS(modulus_at_eps(tb, Rational(1)), std::invalid_argument);
    CHECK(modulus_at_index(tb, 7) == 8);
    const Modulus geo{GeometricTailModulus{Rational(1), Rational(1, 2), true}};
    CHECK_THROWS_AS(modulus_at_index(geo, 3), std::invalid_argument);
  }
}

TEST_CASE("counterfunctions") {
  const Counterfunction id = identity_cf();
  const Counterfunction c5 = constant_cf(5);
  const Counterfunction aff = affine_cf(2, 1);
  const Counterfunction tab = table_cf({8, 2, 5}, 1);

  CHECK(counterfunction_at(id, 7) == 7);
  CHECK(counterfunction_at(c5, 1000) == 5);
  CHECK(counterfunction_at(aff, 3) == 7);
  CHECK(counterfunction_at(tab, 0) == 8);
  CHECK(counterfunction_at(tab, 2) == 5);
  CHECK(counterfunction_at(tab, 99) == 1);

  for (const Counterfunction& g : {id, c5, aff, tab}) {
    for (BigInt n = 0; n <= 50; ++n) {
      BigInt brute = 0;
      for (BigInt i = 0; i <= n; ++i)
        brute = std::max(brute, counterfunction_at(g, i));
      CHECK(counterfunction_max_upto(g, n) == brute);
    }
  }
  // closed form must survive astronomically large arguments
  CHECK(counterfunction_max_upto(id, pow2(200)) == pow2(200));

  CHECK(counterfunction_to_string(c5) == "constant 5");
  CHECK(counterfunction_to_string(id) == "identity");
  CHECK_THROWS_AS(constant_cf(-1), std::invalid_argument);
  CHECK_THROWS_AS(counterfunction_at(id, -2), std::domain_error);
}

TEST_CASE("inexact and composed rates") {
  const Modulus alpha_geo{
      GeometricTailModulus{Rational(1), Rational(1, 2), true}};

  SUBCASE("head plus shrunken-target rate") {
    const Bound b = phi_prime(Rational(3), Rational(1), Rational(2), alpha_geo);
    CHECK(b.value == 589970);  // alpha(1) + phi(1, 6)
    REQUIRE(b.form.has_value());
    CHECK(pow_form_to_string(*b.form) == "144*(1+2^12)+2");
    CHECK(phi_double_prime(Rational(6), Rational(1), Rational(2), alpha_geo)
              .value == 589970);
  }

  SUBCASE("zero errors reduce to the exact rate at eps/3") {
    const Bound b = phi_prime(Rational(3, 2), Rational(1), Rational(0), kZero);
    CHECK(b.value == phi(Rational(1, 2), Rational(2)).value);
    CHECK(b.value == 16449);
  }

  SUBCASE("composite residual rate takes the larger branch") {
    const Bound small_beta =
        phi_beta(Rational(3), kZero, Rational(1), Rational(0), kZero);
    CHECK(small_beta.value == phi(Rational(1, 2), Rational(2)).value);
    const Modulus huge = constant_modulus(pow2(100));
    const Bound beta_wins =
        phi_beta(Rational(3), huge, Rational(1), Rational(0), kZero);
    CHECK(beta_wins.value == pow2(100));
    CHECK_FALSE(beta_wins.form.has_value());
  }

  SUBCASE("index bookkeeping") {
    CHECK(chi_fejer(5, 3, 2) == 9);
    CHECK(chi_fejer(9, 0, 1) == 0);
    CHECK(chi_M(identity_cf(), 3, 10) == 33);
    CHECK(chi_M(constant_cf(5), 1000, 0) == 5);
    CHECK(chi_M(table_cf({8, 2, 5}, 1), 1, 0) == 8);
    CHECK(xi(alpha_geo, 0) == 1);
    CHECK(xi(kZero, 1000) == 0);
    CHECK_THROWS_AS(chi_fejer(-1, 0, 0), std::domain_error);
  }
}

TEST_CASE("iterated rate with lazy evaluation and brute cross-check") {
  // Zero-error curve at b = 1/2: phi_beta(eps) = phi(eps/6, 1).
  const PhiBetaCurve curve{kZero, Rational(1, 2), Rational(0), kZero};
  const Bound at8 = phi_hat(8, 0, curve);
  REQUIRE(at8.form.has_value());
  CHECK(pow_form_to_string(*at8.form) == "11664*(1+2^108)+1");
  CHECK(at8.value == BigInt("3785184409871889341198731824001461649"));

  // The floor argument dominates when large enough.
  CHECK(phi_hat(0, pow2(200), curve).value == pow2(200));
  CHECK(phi_hat(0, 0, curve).value == phi_beta_at(curve, Rational(1)).value);

  // Lazy result equals the brute max for a spread of windows.
  for (const BigInt k : {BigInt(0), BigInt(3), BigInt(17), BigInt(200)}) {
    BigInt brute = 0;
    for (BigInt i = 0; i <= k; ++i)
      brute = std::max(brute, phi_beta_at(curve, Rational(BigInt(1), i + 1)).value);
    CHECK(phi_hat(k, 0, curve).value == brute);
  }
  CHECK_THROWS_AS(phi_hat(-1, 0, curve), std::domain_error);
}

TEST_CASE("metastability bound unfolding") {
  const Modulus tb_unit = region_cells_modulus(euclidean_space(1),
                                               BoxRegion{{0}, {1}});

  SUBCASE("frozen interval certificate, both strategies") {
    for (PsiHatStrategy strat :
         {PsiHatStrategy::ClosedForm, PsiHatStrategy::Literal}) {
      const RateCertificate cert =
          psi_hat(0, constant_cf(1), tb_unit, kZero, kZero, Rational(1, 2),
                  Rational(0), strat);
      CHECK(cert.bound.value ==
            BigInt("3785184409871889341198731824001461649"));
      REQUIRE(cert.bound.form.has_value());
      CHECK(pow_form_to_string(*cert.bound.form) == "11664*(1+2^108)+1");
      CHECK(cert.inputs.at("P") == "9");
      CHECK(cert.inputs.at("b_convention") == "distance");
    }
    CHECK(psi_hat(0, constant_cf(1), tb_unit, kZero, kZero, Rational(1, 2),
                  Rational(0), PsiHatStrategy::ClosedForm)
              .inputs.at("unfolds") == "2");
    CHECK(psi_hat(0, constant_cf(1), tb_unit, kZero, kZero, Rational(1, 2),
                  Rational(0), PsiHatStrategy::Literal)
              .inputs.at("unfolds") == "9");
  }

  SUBCASE("point regions keep identity counterfunctions representable") {
    const Modulus tb_point = region_cells_modulus(euclidean_space(1),
                                                  BoxRegion{{1}, {1}});
    const RateCertificate k0 =
        psi_hat(0, identity_cf(), tb_point, kZero, kZero, Rational(1, 24),
                Rational(0));
    CHECK(k0.bound.value == BigInt("9354438771778"));
    REQUIRE(k0.bound.form.has_value());
    CHECK(pow_form_to_string(*k0.bound.form) == "1089*(1+2^33)+1");

    const RateCertificate k3 =
        psi_hat(3, identity_cf(), tb_point, kZero, kZero, Rational(1, 24),
                Rational(0));
    CHECK(pow_form_to_string(*k3.bound.form) == "16641*(1+2^129)+1");
  }

  SUBCASE("identity blowup over a real region overflows cleanly") {
    CHECK_THROWS_AS(psi_hat(0, identity_cf(), constant_modulus(2), kZero,
                            kZero, Rational(2), Rational(0),
                            PsiHatStrategy::ClosedForm),
                    std::overflow_error);
  }

  CHECK_THROWS_AS(psi_hat(-1, identity_cf(), tb_unit, kZero, kZero,
                          Rational(1), Rational(0)),
                  std::domain_error);
  CHECK_THROWS_AS(psi_hat(0, identity_cf(), tb_unit, kZero, kZero,
                          Rational(0), Rational(0)),
                  std::domain_error);
}
