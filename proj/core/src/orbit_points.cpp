#include "corb/orbit_points.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace corb {

namespace {

std::vector<size_t> nonzero_positions(const std::vector<Rational> &c) {
  std::vector<size_t> r;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0)
      r.push_back(i);
  return r;
}

void require_same_space(const FanPoint &p, const FanPoint &q) {
  if (!p.fan || !q.fan)
    throw std::invalid_argument("point without a fan");
  if (p.fan->beta != q.fan->beta || p.field != q.field)
    throw std::invalid_argument("points live on different stacks or fields");
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) { return (a * b) % m; }

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1)
      r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> f;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      f.push_back(d);
      while (n % d == 0)
        n /= d;
    }
  if (n > 1)
    f.push_back(n);
  return f;
}

uint64_t primitive_root_u(uint64_t p) {
  if (p == 2)
    return 1;
  auto fs = prime_factors(p - 1);
  for (uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (uint64_t q : fs)
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok)
      return g;
  }
  throw std::logic_error("no primitive root found");
}

struct LogTable {
  uint64_t p = 0, g = 0;
  std::vector<uint32_t> log; // full table for small p
  std::unordered_map<uint64_t, uint64_t> baby;
  uint64_t m = 0, giant = 0;

  explicit LogTable(uint64_t prime) : p(prime), g(primitive_root_u(prime)) {
    if (p <= (uint64_t(1) << 20)) {
      log.assign(p, 0);
      uint64_t x = 1;
      for (uint64_t e = 0; e + 1 < p; ++e) {
        log[x] = static_cast<uint32_t>(e);
        x = mulmod(x, g, p);
      }
      return;
    }
    m = static_cast<uint64_t>(std::ceil(std::sqrt(double(p - 1))));
    uint64_t x = 1;
    for (uint64_t j = 0; j < m; ++j) {
      baby.emplace(x, j);
      x = mulmod(x, g, p);
    }
    giant = powmod(powmod(g, m, p), p - 2, p);
  }

  uint64_t operator()(uint64_t x) const {
    x %= p;
    if (x == 0)
      throw std::domain_error("logarithm of zero");
    if (!log.empty())
      return log[x];
    uint64_t y = x;
    for (uint64_t i = 0; i <= m; ++i) {
      auto it = baby.find(y);
      if (it != baby.end())
        return (i * m + it->second) % (p - 1);
      y = mulmod(y, giant, p);
    }
    throw std::logic_error("discrete logarithm failed");
  }
};

const LogTable &log_table(const BigInt &p) {
  static std::mutex mu;
  static std::map<uint64_t, std::unique_ptr<LogTable>> cache;
  uint64_t key = p.convert_to<uint64_t>();
  std::lock_guard<std::mutex> lk(mu);
  auto &slot = cache[key];
  if (!slot)
    slot = std::make_unique<LogTable>(key);
  return *slot;
}

uint64_t rep_u(const Field &f, const Rational &x) { return f.rep(x).convert_to<uint64_t>(); }

// shift exponents: coordinate r of g.p is scaled by prod_k g_k^{W(k, r)}
IntMatrix restricted_weights_t(const IntMatrix &W, const std::vector<size_t> &R) {
  return W.select_columns(R).transpose();
}

std::vector<Rational> apply_exponents(const LogTable &lt, const std::vector<Rational> &coords,
                                      const std::vector<size_t> &R, const std::vector<BigInt> &logs) {
  std::vector<Rational> out(coords.size(), Rational(0));
  for (size_t j = 0; j < R.size(); ++j)
    out[R[j]] = Rational(BigInt(powmod(lt.g, logs[j].convert_to<uint64_t>(), lt.p)));
  return out;
}

std::vector<BigInt> coordinate_logs(const FanPoint &p, const LogTable &lt, const std::vector<size_t> &R) {
  std::vector<BigInt> L;
  for (size_t r : R)
    L.push_back(BigInt(lt(rep_u(p.field, p.coords[r]))));
  return L;
}

FanPoint canonical_scan_w(const FanPoint &p, const IntMatrix &W) {
  const Field &f = p.field;
  const LogTable &lt = log_table(f.characteristic());
  const uint64_t m = lt.p - 1;
  auto R = nonzero_positions(p.coords);
  auto L = coordinate_logs(p, lt, R);
  const size_t k = W.rows();
  std::vector<std::vector<uint64_t>> w(k, std::vector<uint64_t>(R.size()));
  for (size_t a = 0; a < k; ++a)
    for (size_t j = 0; j < R.size(); ++j)
      w[a][j] = mod_floor(W(a, R[j]), BigInt(m)).convert_to<uint64_t>();
  std::vector<uint64_t> x(k, 0), best, cur(R.size());
  for (;;) {
    for (size_t j = 0; j < R.size(); ++j) {
      uint64_t e = L[j].convert_to<uint64_t>();
      for (size_t a = 0; a < k; ++a)
        e = (e + w[a][j] * x[a]) % m;
      cur[j] = powmod(lt.g, e, lt.p);
    }
    if (best.empty() || cur < best)
      best = cur;
    size_t a = 0;
    while (a < k && ++x[a] == m)
      x[a++] = 0;
    if (a == k)
      break;
  }
  FanPoint out = p;
  for (size_t j = 0; j < R.size(); ++j)
    out.coords[R[j]] = Rational(BigInt(best[j]));
  return out;
}

FanPoint canonical_lattice_w(const FanPoint &p, const IntMatrix &W) {
  const Field &f = p.field;
  const LogTable &lt = log_table(f.characteristic());
  const BigInt m(lt.p - 1);
  auto R = nonzero_positions(p.coords);
  if (R.empty())
    return p;
  auto L = coordinate_logs(p, lt, R);
  const size_t k = W.rows(), s = R.size();
  IntMatrix G(k + s, s);
  for (size_t a = 0; a < k; ++a)
    for (size_t j = 0; j < s; ++j)
      G(a, j) = W(a, R[j]);
  for (size_t j = 0; j < s; ++j)
    G(k + j, j) = m;
  IntMatrix H = hnf(G).H;
  std::vector<BigInt> shift(s, BigInt(0));
  for (size_t i = 0; i < s; ++i) {
    const BigInt &h = H(i, i);
    if (h <= 0)
      throw std::logic_error("lattice of shifts is not full rank");
    BigInt steps = m / h;
    BigInt best_t = 0, best_v = -1;
    for (BigInt t = 0; t < steps; ++t) {
      BigInt e = mod_floor(L[i] + shift[i] + t * h, m);
      BigInt v(powmod(lt.g, e.convert_to<uint64_t>(), lt.p));
      if (best_v < 0 || v < best_v) {
        best_v = v;
        best_t = t;
      }
    }
    for (size_t j = i; j < s; ++j)
      shift[j] += best_t * H(i, j);
  }
  std::vector<BigInt> e(s);
  for (size_t j = 0; j < s; ++j)
    e[j] = mod_floor(L[j] + shift[j], m);
  FanPoint out = p;
  out.coords = apply_exponents(lt, p.coords, R, e);
  return out;
}

FanPoint canonical_w(const FanPoint &p, const IntMatrix &W) {
  if (!p.field.is_prime())
    throw std::invalid_argument("canonical forms are defined over prime fields");
  BigInt m = p.field.characteristic() - 1;
  BigInt total = 1;
  for (size_t a = 0; a < W.rows() && total <= 4096; ++a)
    total *= m;
  if (total <= 4096)
    return canonical_scan_w(p, W);
  return canonical_lattice_w(p, W);
}

FinDiagGroupDesc stabilizer_of(const StackyFan &fan, const std::vector<size_t> &R) {
  const size_t nr = fan.num_rays();
  IntMatrix E(nr, R.size());
  for (size_t j = 0; j < R.size(); ++j)
    E(R[j], j) = 1;
  FinDiagGroupDesc g = cokernel(fan.beta.transpose().hconcat(E));
  if (!g.finite())
    throw std::domain_error("stabilizer is not finite (point is degenerate)");
  return g;
}

// pairwise coprime base for the given integers, refined to non-perfect-powers
std::vector<BigInt> coprime_base(std::vector<BigInt> xs) {
  std::set<BigInt> s;
  for (auto &x : xs)
    if (x > 1)
      s.insert(x);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto a = s.begin(); a != s.end() && !changed; ++a)
      for (auto b = std::next(a); b != s.end(); ++b) {
        BigInt g = gcd(*a, *b);
        if (g > 1) {
          BigInt x = *a / g, y = *b / g;
          s.erase(*b);
          s.erase(*a);
          for (const BigInt &v : {x, y, g})
            if (v > 1)
              s.insert(v);
          changed = true;
          break;
        }
      }
  }
  std::set<BigInt> refined;
  for (const BigInt &x : s) {
    BigInt r;
    perfect_power(x, r);
    refined.insert(r);
  }
  return {refined.begin(), refined.end()};
}

long valuation(BigInt x, const BigInt &pi) {
  long v = 0;
  if (x == 0)
    throw std::logic_error("valuation of zero");
  if (x < 0)
    x = -x;
  while (x % pi == 0) {
    x /= pi;
    ++v;
  }
  return v;
}

std::optional<GroupElement> witness_q(const FanPoint &p, const FanPoint &q, const IntMatrix &W,
                                      const std::vector<size_t> &R) {
  const size_t k = W.rows();
  IntMatrix A = restricted_weights_t(W, R);
  std::vector<Rational> ratio;
  std::vector<BigInt> parts;
  for (size_t r : R) {
    ratio.push_back(q.coords[r] / p.coords[r]);
    parts.push_back(abs(numerator(ratio.back())));
    parts.push_back(denominator(ratio.back()));
  }
  std::vector<BigInt> signs;
  for (auto &x : ratio)
    signs.push_back(x < 0 ? 1 : 0);
  auto sgn = solve_mod(A, signs, BigInt(2));
  if (!sgn)
    return std::nullopt;
  std::vector<Rational> g(k);
  for (size_t a = 0; a < k; ++a)
    g[a] = (*sgn)[a] == 1 ? Rational(-1) : Rational(1);
  for (const BigInt &pi : coprime_base(parts)) {
    std::vector<BigInt> v;
    for (auto &x : ratio)
      v.push_back(BigInt(valuation(numerator(x), pi) - valuation(denominator(x), pi)));
    auto e = solve_integer(A, v);
    if (!e)
      return std::nullopt;
    for (size_t a = 0; a < k; ++a) {
      long ea = (*e)[a].convert_to<long>();
      Rational f = ea >= 0 ? Rational(pow(pi, static_cast<unsigned>(ea)))
                           : Rational(BigInt(1), pow(pi, static_cast<unsigned>(-ea)));
      g[a] *= f;
    }
  }
  return GroupElement{g};
}

std::optional<GroupElement> witness_fp(const FanPoint &p, const FanPoint &q, const IntMatrix &W,
                                       const std::vector<size_t> &R) {
  const LogTable &lt = log_table(p.field.characteristic());
  auto Lp = coordinate_logs(p, lt, R), Lq = coordinate_logs(q, lt, R);
  std::vector<BigInt> d;
  for (size_t j = 0; j < R.size(); ++j)
    d.push_back(Lq[j] - Lp[j]);
  auto x = solve_mod(restricted_weights_t(W, R), d, BigInt(lt.p - 1));
  if (!x)
    return std::nullopt;
  GroupElement g;
  for (auto &e : *x)
    g.units.push_back(Rational(BigInt(powmod(lt.g, e.convert_to<uint64_t>(), lt.p))));
  return g;
}

FanPoint act_w(const GroupElement &g, const FanPoint &p, const IntMatrix &W) {
  if (g.units.size() != W.rows())
    throw std::invalid_argument("group element has the wrong length");
  FanPoint out = p;
  for (size_t r = 0; r < p.coords.size(); ++r) {
    if (p.coords[r] == 0)
      continue;
    Rational c = p.coords[r];
    for (size_t a = 0; a < W.rows(); ++a)
      if (W(a, r) != 0)
        c = p.field.mul(c, p.field.pow(g.units[a], W(a, r)));
    out.coords[r] = c;
  }
  return out;
}

} // namespace

bool is_nondegenerate(const StackyFan &fan, const std::vector<Rational> &coords) {
  if (coords.size() != fan.num_rays())
    throw std::invalid_argument("expected " + std::to_string(fan.num_rays()) + " coordinates, got " +
                                std::to_string(coords.size()));
  std::vector<size_t> zeros;
  for (size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == 0)
      zeros.push_back(i);
  return support_in_cone(fan, zeros);
}

FanPoint make_point(FanPtr fan, const Field &field, std::vector<Rational> coords) {
  if (!fan)
    throw std::invalid_argument("point without a fan");
  for (auto &c : coords)
    c = field.normalize(c);
  if (!is_nondegenerate(*fan, coords))
    throw std::invalid_argument("degenerate point: zero set is not contained in a cone");
  return FanPoint{std::move(fan), field, std::move(coords)};
}

FanPoint act(const GroupElement &g, const FanPoint &p) {
  for (auto &u : g.units)
    if (p.field.normalize(u) == 0)
      throw std::invalid_argument("group element has a zero entry");
  return act_w(g, p, weight_matrix(*p.fan));
}

std::optional<GroupElement> orbit_witness(const FanPoint &p, const FanPoint &q) {
  require_same_space(p, q);
  auto R = nonzero_positions(p.coords);
  if (R != nonzero_positions(q.coords))
    return std::nullopt;
  IntMatrix W = weight_matrix(*p.fan);
  auto g = p.field.is_rational() ? witness_q(p, q, W, R) : witness_fp(p, q, W, R);
  if (g && act_w(*g, p, W).coords != q.coords)
    throw std::logic_error("orbit witness does not map p to q");
  return g;
}

bool orbit_equal(const FanPoint &p, const FanPoint &q) { return orbit_witness(p, q).has_value(); }

FanPoint canonical_form(const FanPoint &p) { return canonical_w(p, weight_matrix(*p.fan)); }

FanPoint canonical_form_scan(const FanPoint &p) {
  if (!p.field.is_prime())
    throw std::invalid_argument("canonical forms are defined over prime fields");
  IntMatrix W = weight_matrix(*p.fan);
  BigInt total = 1;
  for (size_t a = 0; a < W.rows(); ++a)
    total *= p.field.characteristic() - 1;
  if (total > 1000000)
    throw std::invalid_argument("group too large to scan");
  return canonical_scan_w(p, W);
}

FanPoint canonical_form_lattice(const FanPoint &p) {
  if (!p.field.is_prime())
    throw std::invalid_argument("canonical forms are defined over prime fields");
  return canonical_lattice_w(p, weight_matrix(*p.fan));
}

FinDiagGroupDesc stabilizer(const FanPoint &p) { return stabilizer_of(*p.fan, nonzero_positions(p.coords)); }

FinDiagGroupDesc stabilizer_via_weights(const FanPoint &p) {
  IntMatrix W = weight_matrix(*p.fan);
  FinDiagGroupDesc g = cokernel(W.select_columns(nonzero_positions(p.coords)));
  if (!g.finite())
    throw std::domain_error("stabilizer is not finite (point is degenerate)");
  return g;
}

BigInt count_coarse_points(const StackyFan &fan, const BigInt &q) {
  if (!is_prime_power(q))
    throw std::invalid_argument("q must be a prime power");
  if (!check_fan(fan).all())
    throw std::domain_error("fan fails its checks; point count is undefined");
  BigInt total = 0;
  for (auto &c : all_cones(fan))
    total += pow(q - 1, static_cast<unsigned>(fan.rank - c.size()));
  return total;
}

std::vector<OrbitRecord> enumerate_orbits(FanPtr fan, const BigInt &p) {
  Field f = Field::prime(p);
  const size_t nr = fan->num_rays();
  BigInt total = 1;
  for (size_t i = 0; i < nr; ++i) {
    total *= p;
    if (total > 100000000)
      throw std::invalid_argument("p^rays exceeds 1e8; enumeration refused");
  }
  IntMatrix W = weight_matrix(*fan);
  const uint64_t pu = p.convert_to<uint64_t>();
  std::map<std::vector<uint64_t>, BigInt> counts;
  std::vector<uint64_t> digits(nr, 0);
  FanPoint pt{fan, f, std::vector<Rational>(nr, Rational(0))};
  for (;;) {
    for (size_t i = 0; i < nr; ++i)
      pt.coords[i] = Rational(BigInt(digits[i]));
    if (is_nondegenerate(*fan, pt.coords)) {
      FanPoint c = canonical_w(pt, W);
      std::vector<uint64_t> key;
      for (auto &x : c.coords)
        key.push_back(rep_u(f, x));
      counts[key] += 1;
    }
    size_t i = 0;
    while (i < nr && ++digits[i] == pu)
      digits[i++] = 0;
    if (i == nr)
      break;
  }
  std::vector<OrbitRecord> out;
  for (auto &[key, n] : counts) {
    FanPoint rep{fan, f, {}};
    for (auto v : key)
      rep.coords.push_back(Rational(BigInt(v)));
    out.push_back(OrbitRecord{rep, stabilizer(rep).order(), n});
  }
  return out;
}

BigInt primitive_root(const BigInt &p) {
  if (!is_prime(p) || p >= (BigInt(1) << 31))
    throw std::invalid_argument("primitive roots need a prime below 2^31");
  return BigInt(log_table(p).g);
}

BigInt discrete_log(const BigInt &x, const BigInt &p) {
  if (!is_prime(p) || p >= (BigInt(1) << 31))
    throw std::invalid_argument("discrete logs need a prime below 2^31");
  return BigInt(log_table(p)(mod_floor(x, p).convert_to<uint64_t>()));
}

bool is_nondegenerate(const ExtendedPoint &e) {
  const size_t n = e.degree();
  if (n < 2 || e.b.size() != n - 1)
    throw std::invalid_argument("extended point needs a_0..a_n and b_1..b_{n-1} with n >= 2");
  if (e.field.normalize(e.a[0]) == 0 || e.field.normalize(e.a[n]) == 0)
    return false;
  for (size_t i = 1; i < n; ++i)
    if (e.field.normalize(e.a[i]) == 0 && e.field.normalize(e.b[i - 1]) == 0)
      return false;
  return true;
}

FanPtr shared_fan(const FanFamily &fam) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, FanPtr> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto &slot = cache[{static_cast<int>(fam.tag), fam.n}];
  if (!slot)
    slot = std::make_shared<const StackyFan>(build_fan(fam));
  return slot;
}

FanPtr upsilon_a_fan(int rank) { return shared_fan(FanFamily{Family::A, rank}); }

FanPoint standardize(const ExtendedPoint &e) {
  if (!is_nondegenerate(e))
    throw std::invalid_argument("degenerate extended point");
  const Field &f = e.field;
  const size_t n = e.degree();
  std::vector<Rational> b(e.b);
  for (auto &x : b)
    x = f.normalize(x);
  b[0] = f.mul(b[0], e.a[0]);
  b[n - 2] = f.mul(b[n - 2], e.a[n]);
  std::vector<Rational> coords;
  for (size_t i = 1; i < n; ++i)
    coords.push_back(e.a[i]);
  coords.insert(coords.end(), b.begin(), b.end());
  return make_point(upsilon_a_fan(static_cast<int>(n - 1)), f, std::move(coords));
}

bool orbit_equal(const ExtendedPoint &e, const ExtendedPoint &f) {
  return orbit_equal(standardize(e), standardize(f));
}

bool orbit_equal(const ExtendedPoint &e, const FanPoint &p) { return orbit_equal(standardize(e), p); }

nlohmann::ordered_json point_to_json(const FanPoint &p) {
  nlohmann::ordered_json j;
  j["field"] = p.field.name();
  if (p.fan->family)
    j["family"] = {{"tag", family_name(p.fan->family->tag)}, {"n", p.fan->family->n}};
  auto coords = nlohmann::ordered_json::object();
  for (size_t i = 0; i < p.coords.size(); ++i)
    coords[p.fan->ray_labels[i]] = p.field.format(p.coords[i]);
  j["coords"] = coords;
  return j;
}

nlohmann::ordered_json point_to_json(const ExtendedPoint &e) {
  nlohmann::ordered_json j;
  j["field"] = e.field.name();
  auto a = nlohmann::ordered_json::array(), b = nlohmann::ordered_json::array();
  for (auto &x : e.a)
    a.push_back(e.field.format(x));
  for (auto &x : e.b)
    b.push_back(e.field.format(x));
  j["a"] = a;
  j["b"] = b;
  return j;
}

} // namespace corb
