#pragma once

#include "corb/bigint.hpp"

#include <string>
#include <vector>

namespace corb {

// Q or F_p (p prime, p < 2^31). Elements of both are carried as Rational;
// F_p elements are kept as integers in [0, p).
class Field {
public:
  static Field rationals() { return Field(); }
  static Field prime(const BigInt &p);
  // "Q", "F7", "F_7"
  static Field parse(const std::string &s);

  bool is_rational() const { return p_ == 0; }
  bool is_prime() const { return p_ != 0; }
  const BigInt &characteristic() const { return p_; }
  std::string name() const;

  Rational normalize(const Rational &x) const;
  Rational element(long v) const { return normalize(Rational(v)); }
  Rational parse_element(const std::string &s) const;
  std::vector<Rational> parse_elements(const std::string &csv) const;

  Rational add(const Rational &a, const Rational &b) const { return normalize(a + b); }
  Rational sub(const Rational &a, const Rational &b) const { return normalize(a - b); }
  Rational mul(const Rational &a, const Rational &b) const { return normalize(a * b); }
  Rational neg(const Rational &a) const { return normalize(-a); }
  Rational inv(const Rational &a) const;
  Rational div(const Rational &a, const Rational &b) const { return mul(a, inv(b)); }
  Rational pow(const Rational &a, const BigInt &e) const;

  // canonical integer representative of an F_p element
  BigInt rep(const Rational &a) const;
  std::string format(const Rational &a) const { return to_string(normalize(a)); }

  bool operator==(const Field &o) const { return p_ == o.p_; }
  bool operator!=(const Field &o) const { return p_ != o.p_; }

private:
  BigInt p_ = 0;
};

} // namespace corb
