#include "altfix/schedule.hpp"

#include <stdexcept>
#include <utility>

namespace altfix {

SequenceSpec zero_seq() { return ZeroSeq{}; }

SequenceSpec geometric_seq(const Rational& c, const Rational& q) {
  if (c <= 0) throw std::invalid_argument("geometric scale c must be > 0");
  if (q <= 0 || q >= 1)
    throw std::invalid_argument("geometric ratio q must lie in (0,1)");
  return GeometricSeq{c, q};
}

SequenceSpec finite_list_seq(std::vector<Rational> values) {
  for (const Rational& v : values)
    if (v < 0) throw std::invalid_argument("sequence terms must be >= 0");
  return FiniteListSeq{std::move(values)};
}

Rational sequence_term(const SequenceSpec& seq, std::int64_t n) {
  if (n < 0) throw std::domain_error("sequence index must be >= 0");
  if (std::holds_alternative<ZeroSeq>(seq)) return Rational(0);
  if (const auto* geo = std::get_if<GeometricSeq>(&seq)) {
    Rational term = geo->c;
    for (std::int64_t i = 0; i < n; ++i) term *= geo->q;
    return term;
  }
  const auto& list = std::get<FiniteListSeq>(seq).values;
  if (static_cast<std::size_t>(n) >= list.size()) return Rational(0);
  return list[static_cast<std::size_t>(n)];
}

bool sequence_is_zero(const SequenceSpec& seq) {
  if (std::holds_alternative<ZeroSeq>(seq)) return true;
  if (const auto* list = std::get_if<FiniteListSeq>(&seq)) {
    for (const Rational& v : list->values)
      if (v != 0) return false;
    return true;
  }
  return false;
}

SequenceSpec sequence_shifted(const SequenceSpec& seq) {
  if (std::holds_alternative<ZeroSeq>(seq)) return ZeroSeq{};
  if (const auto* geo = std::get_if<GeometricSeq>(&seq))
    return GeometricSeq{geo->c * geo->q, geo->q};
  auto list = std::get<FiniteListSeq>(seq).values;
  if (!list.empty()) list.erase(list.begin());
  return FiniteListSeq{std::move(list)};
}

}  // namespace altfix
