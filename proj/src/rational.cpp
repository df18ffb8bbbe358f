#include "altfix/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace altfix {

BigInt floor_rational(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);  // always > 0 in canonical form
  BigInt q = num / den;         // truncates toward zero
  if (num % den != 0 && num < 0) --q;
  return q;
}

BigInt ceil_rational(const Rational& r) {
  BigInt num = numerator(r);
  BigInt den = denominator(r);
  BigInt q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(text)));
    }
    BigInt num{std::string(text.substr(0, slash))};
    BigInt den{std::string(text.substr(slash + 1))};
    if (den == 0) {
      throw std::invalid_argument("zero denominator in rational literal '" +
                                  std::string(text) + "'");
    }
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal '" +
                                std::string(text) + "'");
  }
}

std::string rational_to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("non-finite value has no rational form");
  }
  return Rational(x);
}

BigInt pow2(const BigInt& k) {
  if (k < 0) throw std::domain_error("pow2: negative exponent");
  if (k > kMaxPow2Exponent) {
    throw std::overflow_error(
        "pow2: exponent " + k.str() +
        " exceeds the representable-size cap; the requested bound does not "
        "fit any fixed binary representation");
  }
  return BigInt(1) << k.convert_to<unsigned long>();
}

Rational rational_pow(const Rational& q, unsigned long n) {
  using boost::multiprecision::pow;
  if (n == 0) return Rational(1);
  if (n > kMaxPow2Exponent)
    throw std::overflow_error("rational_pow: exponent beyond size cap");
  const unsigned exp = static_cast<unsigned>(n);
  return Rational(pow(numerator(q), exp), pow(denominator(q), exp));
}

}  // namespace altfix
