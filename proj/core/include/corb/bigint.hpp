#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace corb {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// floor division and nonnegative remainder
BigInt floor_div(const BigInt &a, const BigInt &b);
BigInt mod_floor(const BigInt &a, const BigInt &m);

// g = s*a + t*b, g >= 0
void xgcd(const BigInt &a, const BigInt &b, BigInt &g, BigInt &s, BigInt &t);

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);

// parses "12", "-3", "4/6"
Rational parse_rational(const std::string &s);
std::string to_string(const BigInt &x);
std::string to_string(const Rational &x);

// largest k with x = r^k, r returned through root; x > 1
unsigned perfect_power(const BigInt &x, BigInt &root);

bool is_prime(const BigInt &p);
// p^e with e >= 1 and p prime
bool is_prime_power(const BigInt &q);

} // namespace corb
