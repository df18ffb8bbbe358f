#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "altfix/rational.hpp"

namespace altfix {

// Summable error-magnitude sequences. The catalog is deliberately small:
// each member admits exact tail sums and exact convergence indices, which
// the rate side of the project depends on.

struct ZeroSeq {};

// c * q^n with 0 < q < 1.
struct GeometricSeq {
  Rational c, q;
};

// Listed terms, zero afterwards.
struct FiniteListSeq {
  std::vector<Rational> values;
};

using SequenceSpec = std::variant<ZeroSeq, GeometricSeq, FiniteListSeq>;

SequenceSpec zero_seq();
SequenceSpec geometric_seq(const Rational& c, const Rational& q);
SequenceSpec finite_list_seq(std::vector<Rational> values);

Rational sequence_term(const SequenceSpec& seq, std::int64_t n);
bool sequence_is_zero(const SequenceSpec& seq);

// The sequence n -> a_{n+1}; stays inside the catalog (geometric scales c
// by q, a list drops its head).
SequenceSpec sequence_shifted(const SequenceSpec& seq);

struct ErrorSchedule {
  SequenceSpec eps = ZeroSeq{};
  SequenceSpec delta = ZeroSeq{};

  Rational eps_term(std::int64_t n) const { return sequence_term(eps, n); }
  Rational delta_term(std::int64_t n) const { return sequence_term(delta, n); }
  // gamma_n = eps_n + delta_n; the shifted variant pairs eps_{n+1} with
  // delta_n (it controls the residuals of the swapped composition).
  Rational gamma_term(std::int64_t n) const {
    return eps_term(n) + delta_term(n);
  }
  Rational gamma_prime_term(std::int64_t n) const {
    return eps_term(n + 1) + delta_term(n);
  }
  bool is_zero() const {
    return sequence_is_zero(eps) && sequence_is_zero(delta);
  }
};

}  // namespace altfix
