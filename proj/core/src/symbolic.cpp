#include "corb/symbolic.hpp"

#include <cctype>
#include <stdexcept>

namespace corb {

MultiPoly MultiPoly::constant(size_t num_vars, const Field &f, const Rational &c) {
  MultiPoly p(num_vars, f);
  p.add_term(Exponent(num_vars, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(size_t num_vars, const Field &f, size_t i) {
  if (i >= num_vars)
    throw std::out_of_range("variable index out of range");
  Exponent e(num_vars, 0);
  e[i] = 1;
  return monomial(num_vars, f, e);
}

MultiPoly MultiPoly::monomial(size_t num_vars, const Field &f, const Exponent &e,
                              const Rational &c) {
  MultiPoly p(num_vars, f);
  p.add_term(e, c);
  return p;
}

void MultiPoly::add_term(const Exponent &e, const Rational &c) {
  if (e.size() != n_)
    throw std::invalid_argument("exponent length does not match variable count");
  Rational v = field_.normalize(c);
  if (v == 0)
    return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, v);
    return;
  }
  it->second = field_.normalize(it->second + v);
  if (it->second == 0)
    terms_.erase(it);
}

Rational MultiPoly::coefficient(const Exponent &e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

size_t MultiPoly::total_degree() const {
  size_t d = 0;
  for (auto &[e, c] : terms_) {
    size_t s = 0;
    for (auto x : e)
      s += x;
    d = std::max(d, s);
  }
  return d;
}

void MultiPoly::check_compatible(const MultiPoly &o) const {
  if (n_ != o.n_)
    throw std::invalid_argument("polynomials have different variable counts");
  if (field_ != o.field_)
    throw std::invalid_argument("polynomials live over different fields");
}

MultiPoly MultiPoly::operator+(const MultiPoly &o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (auto &[e, c] : o.terms_)
    r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly &o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (auto &[e, c] : o.terms_)
    r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly &o) const {
  check_compatible(o);
  MultiPoly r(n_, field_);
  Exponent e(n_);
  for (auto &[ea, ca] : terms_)
    for (auto &[eb, cb] : o.terms_) {
      for (size_t i = 0; i < n_; ++i)
        e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly MultiPoly::operator-() const { return scaled(-1); }

MultiPoly MultiPoly::scaled(const Rational &c) const {
  MultiPoly r(n_, field_);
  for (auto &[e, v] : terms_)
    r.add_term(e, v * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r = constant(n_, field_, 1);
  for (unsigned i = 0; i < k; ++i)
    r = r * *this;
  return r;
}

bool MultiPoly::operator==(const MultiPoly &o) const {
  return n_ == o.n_ && field_ == o.field_ && terms_ == o.terms_;
}

Rational MultiPoly::evaluate(const std::vector<Rational> &point) const {
  if (point.size() != n_)
    throw std::invalid_argument("evaluation point has wrong length");
  Rational sum = 0;
  for (auto &[e, c] : terms_) {
    Rational t = c;
    for (size_t i = 0; i < n_; ++i)
      if (e[i])
        t = field_.mul(t, field_.pow(point[i], e[i]));
    sum = field_.add(sum, t);
  }
  return sum;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty())
    return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Exponent &e = it->first;
    Rational c = it->second;
    bool neg = field_.is_rational() && c < 0;
    if (neg)
      c = -c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (size_t i = 0; i < n_; ++i) {
      if (!e[i])
        continue;
      if (!mono.empty())
        mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1)
        mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty())
      out += corb::to_string(c);
    else if (c == 1)
      out += mono;
    else
      out += corb::to_string(c) + "*" + mono;
  }
  return out;
}

namespace {

struct Lexer {
  const std::string &s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool peek_digit() {
    skip();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  std::string digits() {
    skip();
    size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      ++i;
    if (b == i)
      throw std::invalid_argument("polynomial literal: expected digits at offset " +
                                  std::to_string(b) + " in '" + s + "'");
    return s.substr(b, i - b);
  }
};

} // namespace

MultiPoly MultiPoly::parse(const std::string &s, size_t num_vars, const Field &f) {
  Lexer lx{s};
  MultiPoly result(num_vars, f);
  bool first = true;
  for (;;) {
    lx.skip();
    if (lx.i == s.size()) {
      if (first)
        throw std::invalid_argument("empty polynomial literal");
      break;
    }
    Rational sign = 1;
    if (lx.eat('-'))
      sign = -1;
    else if (!lx.eat('+') && !first)
      throw std::invalid_argument("polynomial literal: expected '+' or '-' in '" + s + "'");
    first = false;
    Rational coef = 1;
    Exponent e(num_vars, 0);
    bool have_factor = false;
    if (lx.peek_digit()) {
      BigInt num(lx.digits());
      BigInt den = 1;
      if (lx.eat('/'))
        den = BigInt(lx.digits());
      if (den == 0)
        throw std::invalid_argument("polynomial literal: zero denominator");
      coef = Rational(num, den);
      have_factor = true;
      if (!lx.eat('*')) {
        result.add_term(e, sign * coef);
        continue;
      }
    }
    do {
      if (!lx.eat('x'))
        throw std::invalid_argument("polynomial literal: expected variable in '" + s + "'");
      size_t idx = std::stoul(lx.digits());
      if (idx < 1 || idx > num_vars)
        throw std::invalid_argument("polynomial literal: variable x" + std::to_string(idx) +
                                    " out of range");
      uint32_t ex = 1;
      if (lx.eat('^'))
        ex = static_cast<uint32_t>(std::stoul(lx.digits()));
      e[idx - 1] += ex;
      have_factor = true;
    } while (lx.eat('*'));
    if (!have_factor)
      throw std::invalid_argument("polynomial literal: empty term");
    result.add_term(e, sign * coef);
  }
  return result;
}

MultiPoly poly_add(const MultiPoly &p, const MultiPoly &q) { return p + q; }
MultiPoly poly_sub(const MultiPoly &p, const MultiPoly &q) { return p - q; }
MultiPoly poly_mul(const MultiPoly &p, const MultiPoly &q) { return p * q; }

RationalExpr::RationalExpr(MultiPoly num)
    : num_(num), den_(MultiPoly::constant(num.num_vars(), num.field(), 1)) {}

RationalExpr::RationalExpr(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero())
    throw std::domain_error("rational expression with zero denominator");
  if (num_.num_vars() != den_.num_vars() || num_.field() != den_.field())
    throw std::invalid_argument("numerator and denominator are incompatible");
}

RationalExpr RationalExpr::operator+(const RationalExpr &o) const {
  if (den_ == o.den_)
    return RationalExpr(num_ + o.num_, den_);
  return RationalExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalExpr RationalExpr::operator-(const RationalExpr &o) const { return *this + (-o); }

RationalExpr RationalExpr::operator*(const RationalExpr &o) const {
  return RationalExpr(num_ * o.num_, den_ * o.den_);
}

RationalExpr RationalExpr::operator/(const RationalExpr &o) const {
  if (o.num_.is_zero())
    throw std::domain_error("division by the zero expression");
  return RationalExpr(num_ * o.den_, den_ * o.num_);
}

RationalExpr RationalExpr::operator-() const { return RationalExpr(-num_, den_); }

bool RationalExpr::equals(const RationalExpr &o) const { return num_ * o.den_ == o.num_ * den_; }

Rational RationalExpr::evaluate(const std::vector<Rational> &point) const {
  Rational d = den_.evaluate(point);
  if (d == 0)
    throw std::domain_error("denominator vanishes at evaluation point");
  return num_.field().div(num_.evaluate(point), d);
}

bool expr_is_zero(const RationalExpr &e) { return e.numerator().is_zero(); }

RationalExpr poly_substitute(const MultiPoly &p, const std::vector<RationalExpr> &images) {
  if (images.size() != p.num_vars())
    throw std::invalid_argument("substitution needs one image per variable");
  for (auto &im : images)
    if (im.denominator().is_zero())
      throw std::domain_error("zero denominator among substitution images");
  if (images.empty())
    return RationalExpr(p);
  const size_t m = images[0].numerator().num_vars();
  const Field &f = p.field();
  // powers are cached per variable to keep repeated exponents cheap
  std::vector<std::vector<RationalExpr>> powers(images.size());
  auto power = [&](size_t i, uint32_t k) -> const RationalExpr & {
    auto &cache = powers[i];
    if (cache.empty())
      cache.push_back(RationalExpr(MultiPoly::constant(m, f, 1)));
    while (cache.size() <= k)
      cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  RationalExpr sum(MultiPoly(m, f));
  for (auto &[e, c] : p.terms()) {
    RationalExpr term(MultiPoly::constant(m, f, c));
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i])
        term = term * power(i, e[i]);
    sum = sum + term;
  }
  return sum;
}

} // namespace corb
