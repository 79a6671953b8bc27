#include "corb/chains.hpp"

#include <algorithm>
#include <stdexcept>

namespace corb {

namespace {

const BigInt kMaxScan = 100000;

size_t require_family(const FanPoint &p, Family tag, const char *what) {
  if (!p.fan || !p.fan->family || p.fan->family->tag != tag)
    throw std::invalid_argument(std::string("expected a point on ") + what);
  return static_cast<size_t>(p.fan->family->n);
}

void require_scan_field(const Field &f) {
  if (!f.is_prime())
    throw std::invalid_argument("fiber analysis needs a prime field F_q");
  if (f.characteristic() > kMaxScan)
    throw std::invalid_argument("q exceeds the root-scan limit 1e5");
}

std::optional<Rational> field_sqrt(const Field &f, const Rational &x0) {
  Rational x = f.normalize(x0);
  if (x == 0)
    return Rational(0);
  if (f.is_rational()) {
    if (x < 0)
      return std::nullopt;
    BigInt n = numerator(x), d = denominator(x);
    BigInt rn = sqrt(n), rd = sqrt(d);
    if (rn * rn != n || rd * rd != d)
      return std::nullopt;
    return Rational(rn, rd);
  }
  const BigInt &p = f.characteristic();
  if (p == 2)
    return x;
  if (f.pow(x, (p - 1) / 2) != 1)
    return std::nullopt;
  // Tonelli-Shanks
  BigInt q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  Rational z = 2;
  while (f.pow(z, (p - 1) / 2) == 1)
    z = f.add(z, 1);
  Rational c = f.pow(z, q), t = f.pow(x, q), r = f.pow(x, (q + 1) / 2);
  unsigned m = s;
  while (t != 1) {
    unsigned i = 0;
    Rational tt = t;
    while (tt != 1) {
      tt = f.mul(tt, tt);
      ++i;
    }
    Rational b = c;
    for (unsigned j = 0; j + i + 1 < m; ++j)
      b = f.mul(b, b);
    m = i;
    c = f.mul(b, b);
    t = f.mul(t, c);
    r = f.mul(r, b);
  }
  return r;
}

std::vector<size_t> breakpoints(const ExtendedPoint &e) {
  const size_t n = e.degree();
  std::vector<size_t> N{0};
  for (size_t j = 1; j < n; ++j)
    if (e.field.normalize(e.b[j - 1]) == 0)
      N.push_back(j);
  N.push_back(n);
  return N;
}

std::vector<Rational> interior_b(const ExtendedPoint &e, size_t N0, size_t N1) {
  // b_{N0+1} .. b_{N1-1}
  return std::vector<Rational>(e.b.begin() + static_cast<long>(N0), e.b.begin() + static_cast<long>(N1 - 1));
}

// multiplicities of the fixed points of t -> c/t in q, '+' iff all even
char fixed_point_parity(const Field &f, const UPoly &q, const Rational &c) {
  if (auto s = field_sqrt(f, c)) {
    unsigned m1 = upoly_root_multiplicity(f, q, *s);
    unsigned m2 = upoly_root_multiplicity(f, q, f.neg(*s));
    return (m1 % 2 == 0 && m2 % 2 == 0) ? '+' : '-';
  }
  UPoly quad{f.neg(c), Rational(0), Rational(1)};
  UPoly r = q;
  unsigned m = 0;
  for (;;) {
    auto [quo, rem] = upoly_divmod(f, r, quad);
    if (upoly_degree(rem) >= 0)
      break;
    r = quo;
    ++m;
  }
  return m % 2 == 0 ? '+' : '-';
}

nlohmann::ordered_json poly_json(const Field &f, const UPoly &p) {
  auto j = nlohmann::ordered_json::array();
  for (auto &x : p)
    j.push_back(f.format(x));
  return j;
}

} // namespace

UPoly upoly_trim(const Field &f, UPoly p) {
  for (auto &x : p)
    x = f.normalize(x);
  while (!p.empty() && p.back() == 0)
    p.pop_back();
  return p;
}

int upoly_degree(const UPoly &p) {
  for (size_t i = p.size(); i-- > 0;)
    if (p[i] != 0)
      return static_cast<int>(i);
  return -1;
}

Rational upoly_eval(const Field &f, const UPoly &p, const Rational &x) {
  Rational acc = 0;
  for (size_t i = p.size(); i-- > 0;)
    acc = f.add(f.mul(acc, x), p[i]);
  return acc;
}

UPoly upoly_mul(const Field &f, const UPoly &a, const UPoly &b) {
  if (a.empty() || b.empty())
    return {};
  UPoly r(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  return upoly_trim(f, r);
}

UPoly upoly_derivative(const Field &f, const UPoly &p) {
  UPoly d;
  for (size_t i = 1; i < p.size(); ++i)
    d.push_back(f.mul(p[i], Rational(static_cast<long>(i))));
  return upoly_trim(f, d);
}

std::pair<UPoly, UPoly> upoly_divmod(const Field &f, const UPoly &a, const UPoly &b) {
  UPoly bb = upoly_trim(f, b), r = upoly_trim(f, a);
  if (bb.empty())
    throw std::domain_error("polynomial division by zero");
  const size_t db = bb.size() - 1;
  Rational lead_inv = f.inv(bb.back());
  UPoly q(r.size() >= bb.size() ? r.size() - db : 0, Rational(0));
  while (!r.empty() && r.size() >= bb.size()) {
    size_t shift = r.size() - bb.size();
    Rational coef = f.mul(r.back(), lead_inv);
    q[shift] = coef;
    for (size_t i = 0; i <= db; ++i)
      r[shift + i] = f.sub(r[shift + i], f.mul(coef, bb[i]));
    r = upoly_trim(f, r);
  }
  return {upoly_trim(f, q), r};
}

UPoly upoly_gcd(const Field &f, UPoly a, UPoly b) {
  a = upoly_trim(f, a);
  b = upoly_trim(f, b);
  while (!b.empty()) {
    UPoly r = upoly_divmod(f, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty())
    return a;
  Rational inv = f.inv(a.back());
  for (auto &x : a)
    x = f.mul(x, inv);
  return a;
}

bool upoly_is_squarefree(const Field &f, const UPoly &p) {
  UPoly q = upoly_trim(f, p);
  if (upoly_degree(q) <= 0)
    return true;
  UPoly d = upoly_derivative(f, q);
  if (d.empty())
    return false;
  return upoly_degree(upoly_gcd(f, q, d)) == 0;
}

unsigned upoly_root_multiplicity(const Field &f, UPoly p, const Rational &x0) {
  p = upoly_trim(f, p);
  if (p.empty())
    throw std::domain_error("multiplicity in the zero polynomial");
  Rational x = f.normalize(x0);
  unsigned m = 0;
  while (p.size() > 1 && upoly_eval(f, p, x) == 0) {
    // synthetic division by (t - x)
    UPoly q(p.size() - 1);
    Rational carry = 0;
    for (size_t i = p.size(); i-- > 1;) {
      carry = f.add(f.mul(carry, x), p[i]);
      q[i - 1] = carry;
    }
    p = upoly_trim(f, q);
    ++m;
  }
  return m;
}

std::vector<std::pair<Rational, unsigned>> upoly_nonzero_roots(const Field &f, const UPoly &p) {
  require_scan_field(f);
  UPoly q = upoly_trim(f, p);
  if (q.empty())
    throw std::domain_error("roots of the zero polynomial");
  std::vector<std::pair<Rational, unsigned>> out;
  const long qq = f.characteristic().convert_to<long>();
  for (long x = 1; x < qq; ++x) {
    Rational r(x);
    if (upoly_eval(f, q, r) == 0)
      out.emplace_back(r, upoly_root_multiplicity(f, q, r));
  }
  return out;
}

UPoly upoly_reverse(const UPoly &p) { return UPoly(p.rbegin(), p.rend()); }

Rational chain_beta(const Field &f, const std::vector<Rational> &b, size_t r) {
  if (r > b.size() + 1)
    throw std::out_of_range("chain_beta index beyond the component");
  Rational acc = 1;
  for (size_t s = 1; s + 1 <= r; ++s)
    acc = f.mul(acc, f.pow(b[s - 1], BigInt(r - s)));
  return acc;
}

ExtendedPoint extended_from_point(const FanPoint &p) {
  const size_t r = require_family(p, Family::A, "Upsilon(A_{n-1})");
  ExtendedPoint e{p.field, {Rational(1)}, {}};
  for (size_t i = 0; i < r; ++i)
    e.a.push_back(p.coords[i]);
  e.a.push_back(Rational(1));
  for (size_t i = 0; i < r; ++i)
    e.b.push_back(p.coords[r + i]);
  return e;
}

ChainModel chain_from_point(const ExtendedPoint &e0) {
  if (!is_nondegenerate(e0))
    throw std::invalid_argument("degenerate point");
  ExtendedPoint e = e0;
  const Field &f = e.field;
  for (auto &x : e.a)
    x = f.normalize(x);
  for (auto &x : e.b)
    x = f.normalize(x);
  ChainModel c{f, e.degree(), {}, {}};
  auto N = breakpoints(e);
  for (size_t k = 0; k + 1 < N.size(); ++k) {
    const size_t d = N[k + 1] - N[k];
    auto ib = interior_b(e, N[k], N[k + 1]);
    UPoly poly;
    for (size_t r = 0; r <= d; ++r)
      poly.push_back(f.mul(e.a[N[k] + r], chain_beta(f, ib, r)));
    if (poly.front() == 0 || poly.back() == 0)
      throw std::logic_error("component polynomial meets a node or pole");
    c.component_degrees.push_back(d);
    c.component_polys.push_back(std::move(poly));
  }
  return c;
}

ChainModel chain_from_point(const FanPoint &p) { return chain_from_point(extended_from_point(p)); }

ExtendedPoint point_from_polynomial(const Field &f, const UPoly &c) {
  if (c.size() < 3)
    throw std::invalid_argument("polynomial degree must be >= 2");
  ExtendedPoint e{f, {}, {}};
  for (auto &x : c)
    e.a.push_back(f.normalize(x));
  if (e.a.front() == 0 || e.a.back() == 0)
    throw std::invalid_argument("c_0 and c_n must be nonzero (S meets a pole)");
  e.b.assign(c.size() - 2, Rational(1));
  return e;
}

FiberProfile fiber_profile(const ChainModel &c) {
  const Field &f = c.field;
  require_scan_field(f);
  FiberProfile fp;
  bool split = true;
  BigInt denom = 1;
  for (size_t k = 0; k < c.component_polys.size(); ++k) {
    const UPoly &poly = c.component_polys[k];
    auto roots = upoly_nonzero_roots(f, poly);
    std::vector<unsigned> mults;
    size_t total = 0;
    for (auto &[r, m] : roots) {
      mults.push_back(m);
      total += m;
      denom *= factorial(m);
    }
    std::sort(mults.rbegin(), mults.rend());
    if (total != c.component_degrees[k])
      split = false;
    if (!upoly_is_squarefree(f, poly))
      fp.is_ramified = true;
    fp.multiplicity_profile.push_back(std::move(mults));
    fp.roots.push_back(std::move(roots));
  }
  fp.rational_ordered_preimages = split ? factorial(static_cast<unsigned>(c.total_degree)) / denom : BigInt(0);
  return fp;
}

FiberProfile fiber_profile(const FanPoint &p) { return fiber_profile(chain_from_point(p)); }
FiberProfile fiber_profile(const ExtendedPoint &e) { return fiber_profile(chain_from_point(e)); }

FanPoint c_point_embed(const FanPoint &p) {
  const size_t n = require_family(p, Family::C, "Upsilon(C_n)");
  std::vector<Rational> a(p.coords.begin(), p.coords.begin() + static_cast<long>(n));
  std::vector<Rational> b(p.coords.begin() + static_cast<long>(n), p.coords.end());
  std::vector<Rational> out = a;
  out.insert(out.end(), a.rbegin() + 1, a.rend());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), b.rbegin() + 1, b.rend());
  return make_point(upsilon_a_fan(static_cast<int>(2 * n - 1)), p.field, std::move(out));
}

FanPoint b_point_embed(const FanPoint &p) {
  const size_t n = require_family(p, Family::Bcan, "Upsilon(B_n)^can");
  std::vector<Rational> a(p.coords.begin(), p.coords.begin() + static_cast<long>(n));
  std::vector<Rational> b(p.coords.begin() + static_cast<long>(n), p.coords.end());
  std::vector<Rational> out = a;
  out.insert(out.end(), a.rbegin(), a.rend());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), b.rbegin(), b.rend());
  return make_point(upsilon_a_fan(static_cast<int>(2 * n)), p.field, std::move(out));
}

FanPoint minus_embed(const FanPoint &p) {
  const size_t n = require_family(p, Family::Cminus, "the Cminus fan");
  const size_t r = n - 1;
  std::vector<Rational> out(p.coords.begin(), p.coords.begin() + static_cast<long>(r));
  out.push_back(Rational(0));
  out.insert(out.end(), p.coords.begin() + static_cast<long>(r), p.coords.end());
  out.push_back(Rational(1));
  return make_point(shared_fan(FanFamily{Family::C, static_cast<int>(n)}), p.field, std::move(out));
}

GroupElement duplicate_units(const GroupElement &g, bool odd_center) {
  GroupElement out = g;
  auto &u = g.units;
  if (u.empty())
    return out;
  out.units.insert(out.units.end(), odd_center ? u.rbegin() + 1 : u.rbegin(), u.rend());
  return out;
}

FinDiagGroupDesc palindromic_stabilizer(const FanPoint &a_point) {
  const size_t m = require_family(a_point, Family::A, "Upsilon(A_m)");
  IntMatrix W = weight_matrix(*a_point.fan);
  std::vector<size_t> nz;
  for (size_t i = 0; i < a_point.coords.size(); ++i)
    if (a_point.coords[i] != 0)
      nz.push_back(i);
  const size_t half = (m + 1) / 2;
  IntMatrix F(half, W.cols());
  for (size_t j = 0; j < half; ++j)
    for (size_t c = 0; c < W.cols(); ++c) {
      F(j, c) = W(j, c);
      if (m - 1 - j != j)
        F(j, c) += W(m - 1 - j, c);
    }
  FinDiagGroupDesc g = cokernel(F.select_columns(nz));
  if (!g.finite())
    throw std::domain_error("stabilizer is not finite (point is degenerate)");
  return g;
}

Rational involution_constant(const Field &f, const std::vector<Rational> &b) {
  Rational prod = 1;
  for (auto &x : b)
    prod = f.mul(prod, x);
  return f.inv(prod);
}

InvolutiveChainModel involutive_chain(const FanPoint &p) {
  if (!p.fan || !p.fan->family)
    throw std::invalid_argument("involutive chains need a family point");
  const Family tag = p.fan->family->tag;
  if (tag != Family::C && tag != Family::Bcan)
    throw std::invalid_argument("involutive chains come from Upsilon(C_n) or Upsilon(B_n)^can");
  ExtendedPoint e = extended_from_point(tag == Family::C ? c_point_embed(p) : b_point_embed(p));
  InvolutiveChainModel ic{chain_from_point(e), true, std::nullopt};
  const size_t m = ic.base.component_degrees.size();
  const bool even = tag == Family::C;
  if (even && m % 2 == 1 && !(p.field.is_prime() && p.field.characteristic() == 2)) {
    auto N = breakpoints(e);
    const size_t mid = m / 2;
    Rational c = involution_constant(p.field, interior_b(e, N[mid], N[mid + 1]));
    ic.parity = fixed_point_parity(p.field, ic.base.component_polys[mid], c);
  }
  return ic;
}

BigInt involutive_fiber_profile(const FanPoint &p) {
  const size_t n = require_family(p, Family::C, "Upsilon(C_n)");
  require_scan_field(p.field);
  for (size_t i = n; i < 2 * n; ++i)
    if (p.coords[i] == 0)
      throw std::domain_error("reducible point: involutive fiber counts need all b nonzero");
  ExtendedPoint e = extended_from_point(c_point_embed(p));
  const Field &f = p.field;
  ChainModel ch = chain_from_point(e);
  const UPoly &q = ch.component_polys.at(0);
  Rational c = involution_constant(f, e.b);
  auto roots = upoly_nonzero_roots(f, q);
  size_t total = 0;
  for (auto &[r, m] : roots) {
    total += m;
    if (f.mul(r, r) == c)
      return 0;
  }
  if (total != 2 * n)
    return 0;
  BigInt denom = 1;
  for (auto &[r, m] : roots) {
    Rational partner = f.div(c, r);
    if (f.rep(r) < f.rep(partner)) {
      if (upoly_root_multiplicity(f, q, partner) != m)
        throw std::logic_error("root multiset is not involution-symmetric");
      denom *= factorial(m);
    }
  }
  return (BigInt(1) << n) * factorial(static_cast<unsigned>(n)) / denom;
}

char parity_component(const Field &f, const UPoly &coeffs) {
  if (f.is_prime() && f.characteristic() == 2)
    throw std::domain_error("parity is unsupported in characteristic 2");
  UPoly c;
  for (auto &x : coeffs)
    c.push_back(f.normalize(x));
  if (c.size() < 3 || c.size() % 2 == 0)
    throw std::invalid_argument("parity needs coefficients of even degree 2n >= 2");
  if (c.front() == 0 || c.back() == 0)
    throw std::invalid_argument("constant and leading coefficients must be nonzero");
  bool pal = true, anti = true;
  for (size_t i = 0; i < c.size(); ++i) {
    const Rational &x = c[i], &y = c[c.size() - 1 - i];
    pal = pal && x == y;
    anti = anti && x == f.neg(y);
  }
  if (!pal && !anti)
    throw std::invalid_argument("coefficients are neither palindromic nor anti-palindromic");
  return fixed_point_parity(f, c, Rational(1));
}

nlohmann::ordered_json chain_to_json(const ChainModel &c) {
  nlohmann::ordered_json j;
  j["field"] = c.field.name();
  j["total_degree"] = c.total_degree;
  auto comps = nlohmann::ordered_json::array();
  for (size_t k = 0; k < c.component_polys.size(); ++k)
    comps.push_back({{"degree", c.component_degrees[k]}, {"poly", poly_json(c.field, c.component_polys[k])}});
  j["components"] = comps;
  return j;
}

nlohmann::ordered_json chain_to_json(const InvolutiveChainModel &c) {
  nlohmann::ordered_json j = chain_to_json(c.base);
  j["palindromic"] = c.palindromic;
  j["parity"] = c.parity ? nlohmann::ordered_json(std::string(1, *c.parity)) : nlohmann::ordered_json(nullptr);
  return j;
}

nlohmann::ordered_json fiber_to_json(const Field &f, const FiberProfile &fp) {
  nlohmann::ordered_json j;
  j["rational_ordered_preimages"] = big_to_json(fp.rational_ordered_preimages);
  j["multiplicity_profile"] = fp.multiplicity_profile;
  auto roots = nlohmann::ordered_json::array();
  for (auto &comp : fp.roots) {
    auto rc = nlohmann::ordered_json::array();
    for (auto &[r, m] : comp)
      rc.push_back({{"root", f.format(r)}, {"multiplicity", m}});
    roots.push_back(rc);
  }
  j["roots"] = roots;
  j["is_ramified"] = fp.is_ramified;
  return j;
}

} // namespace corb
