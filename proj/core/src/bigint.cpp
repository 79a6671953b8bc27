#include "corb/bigint.hpp"

#include <gmp.h>

#include <stdexcept>

namespace corb {

BigInt floor_div(const BigInt &a, const BigInt &b) {
  if (b == 0)
    throw std::domain_error("division by zero");
  BigInt q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0)))
    --q;
  return q;
}

BigInt mod_floor(const BigInt &a, const BigInt &m) {
  BigInt r = a % m;
  if (r < 0)
    r += abs(m);
  return r;
}

void xgcd(const BigInt &a, const BigInt &b, BigInt &g, BigInt &s, BigInt &t) {
  BigInt r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    BigInt q = r0 / r1;
    BigInt tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i)
    r *= i;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n)
    return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

static BigInt parse_int(const std::string &s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+'))
    ++i;
  if (i == s.size())
    throw std::invalid_argument("bad integer: '" + s + "'");
  for (size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9')
      throw std::invalid_argument("bad integer: '" + s + "'");
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

static std::string trim(const std::string &s) {
  size_t b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos)
    return "";
  size_t e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

Rational parse_rational(const std::string &raw) {
  std::string s = trim(raw);
  auto slash = s.find('/');
  if (slash == std::string::npos)
    return Rational(parse_int(s));
  BigInt num = parse_int(trim(s.substr(0, slash)));
  BigInt den = parse_int(trim(s.substr(slash + 1)));
  if (den == 0)
    throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rational(num, den);
}

std::string to_string(const BigInt &x) { return x.str(); }

std::string to_string(const Rational &x) {
  if (denominator(x) == 1)
    return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

unsigned perfect_power(const BigInt &x, BigInt &root) {
  root = x;
  if (x <= 1)
    return 1;
  size_t bits = mpz_sizeinbase(x.backend().data(), 2);
  for (unsigned k = static_cast<unsigned>(bits); k >= 2; --k) {
    BigInt r;
    if (mpz_root(r.backend().data(), x.backend().data(), k) != 0) {
      root = r;
      return k;
    }
  }
  return 1;
}

bool is_prime(const BigInt &p) {
  if (p < 2)
    return false;
  return mpz_probab_prime_p(p.backend().data(), 40) > 0;
}

bool is_prime_power(const BigInt &q) {
  if (q < 2)
    return false;
  BigInt r;
  perfect_power(q, r);
  return is_prime(r);
}

} // namespace corb
