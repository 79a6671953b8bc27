#include "corb/field.hpp"

#include <stdexcept>

namespace corb {

Field Field::prime(const BigInt &p) {
  if (!corb::is_prime(p))
    throw std::invalid_argument("field characteristic " + p.str() + " is not prime");
  if (p >= (BigInt(1) << 31))
    throw std::invalid_argument("prime fields are limited to p < 2^31");
  Field f;
  f.p_ = p;
  return f;
}

Field Field::parse(const std::string &s) {
  if (s == "Q")
    return rationals();
  if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'f')) {
    std::string digits = s.substr(s[1] == '_' ? 2 : 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad field '" + s + "'");
    return prime(BigInt(digits));
  }
  throw std::invalid_argument("bad field '" + s + "' (expected Q or Fp)");
}

std::string Field::name() const { return is_rational() ? "Q" : "F" + p_.str(); }

Rational Field::normalize(const Rational &x) const {
  if (is_rational())
    return x;
  BigInt num = mod_floor(numerator(x), p_);
  BigInt den = mod_floor(denominator(x), p_);
  if (den == 0)
    throw std::domain_error("denominator divisible by the characteristic");
  if (den != 1) {
    BigInt g, s, t;
    xgcd(den, p_, g, s, t);
    num = mod_floor(num * s, p_);
  }
  return Rational(num);
}

Rational Field::parse_element(const std::string &s) const { return normalize(parse_rational(s)); }

std::vector<Rational> Field::parse_elements(const std::string &csv) const {
  std::vector<Rational> out;
  size_t start = 0;
  while (start <= csv.size()) {
    size_t comma = csv.find(',', start);
    if (comma == std::string::npos)
      comma = csv.size();
    std::string item = csv.substr(start, comma - start);
    if (item.find_first_not_of(" \t") == std::string::npos)
      throw std::invalid_argument("empty element in list '" + csv + "'");
    out.push_back(parse_element(item));
    start = comma + 1;
  }
  return out;
}

Rational Field::inv(const Rational &a) const {
  Rational x = normalize(a);
  if (x == 0)
    throw std::domain_error("inverse of zero");
  if (is_rational())
    return 1 / x;
  BigInt g, s, t;
  xgcd(numerator(x), p_, g, s, t);
  return Rational(mod_floor(s, p_));
}

Rational Field::pow(const Rational &a, const BigInt &e) const {
  if (e < 0)
    return pow(inv(a), -e);
  Rational x = normalize(a);
  if (is_prime()) {
    BigInt r;
    mpz_powm(r.backend().data(), numerator(x).backend().data(), e.backend().data(),
             p_.backend().data());
    return Rational(r);
  }
  Rational result = 1, base = x;
  BigInt k = e;
  while (k > 0) {
    if ((k & 1) != 0)
      result *= base;
    k >>= 1;
    if (k > 0)
      base *= base;
  }
  return result;
}

BigInt Field::rep(const Rational &a) const {
  Rational x = normalize(a);
  if (denominator(x) != 1)
    throw std::domain_error("element has no integer representative");
  return numerator(x);
}

} // namespace corb
