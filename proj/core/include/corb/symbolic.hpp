#pragma once

#include "corb/field.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace corb {

using Exponent = std::vector<uint32_t>;

// Sparse polynomial in x1..xN. Terms are kept in lexicographic order of
// exponent vectors; zero coefficients are never stored.
class MultiPoly {
public:
  MultiPoly(size_t num_vars, Field field) : n_(num_vars), field_(std::move(field)) {}

  static MultiPoly constant(size_t num_vars, const Field &f, const Rational &c);
  static MultiPoly variable(size_t num_vars, const Field &f, size_t i);
  static MultiPoly monomial(size_t num_vars, const Field &f, const Exponent &e,
                            const Rational &c = 1);
  // literal grammar: term (('+'|'-') term)*, term := [coef '*'] factor ('*' factor)* | coef,
  // factor := 'x' index ['^' exponent], coef := integer | integer '/' integer
  static MultiPoly parse(const std::string &s, size_t num_vars, const Field &f);

  size_t num_vars() const { return n_; }
  const Field &field() const { return field_; }
  const std::map<Exponent, Rational> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Exponent &e) const;
  size_t total_degree() const;

  void add_term(const Exponent &e, const Rational &c);

  MultiPoly operator+(const MultiPoly &o) const;
  MultiPoly operator-(const MultiPoly &o) const;
  MultiPoly operator*(const MultiPoly &o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(const Rational &c) const;
  MultiPoly pow(unsigned k) const;
  bool operator==(const MultiPoly &o) const;

  Rational evaluate(const std::vector<Rational> &point) const;
  std::string to_string() const;

private:
  void check_compatible(const MultiPoly &o) const;

  size_t n_;
  Field field_;
  std::map<Exponent, Rational> terms_;
};

MultiPoly poly_add(const MultiPoly &p, const MultiPoly &q);
MultiPoly poly_sub(const MultiPoly &p, const MultiPoly &q);
MultiPoly poly_mul(const MultiPoly &p, const MultiPoly &q);

// Formal quotient; equality by cross-multiplication, no gcd reduction.
class RationalExpr {
public:
  explicit RationalExpr(MultiPoly num);
  RationalExpr(MultiPoly num, MultiPoly den);

  const MultiPoly &numerator() const { return num_; }
  const MultiPoly &denominator() const { return den_; }

  RationalExpr operator+(const RationalExpr &o) const;
  RationalExpr operator-(const RationalExpr &o) const;
  RationalExpr operator*(const RationalExpr &o) const;
  RationalExpr operator/(const RationalExpr &o) const;
  RationalExpr operator-() const;
  bool equals(const RationalExpr &o) const;
  // throws if the denominator vanishes at the point
  Rational evaluate(const std::vector<Rational> &point) const;

private:
  MultiPoly num_, den_;
};

bool expr_is_zero(const RationalExpr &e);
RationalExpr poly_substitute(const MultiPoly &p, const std::vector<RationalExpr> &images);

} // namespace corb
