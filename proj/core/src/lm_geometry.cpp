#include "corb/lm_geometry.hpp"

#include "corb/parallel.hpp"
#include "corb/rational_lp.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <stdexcept>

namespace corb {

namespace {

using Mask = uint32_t;

Subset mask_subset(Mask m) {
  Subset s;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1)
      s.push_back(i + 1);
  return s;
}

Mask subset_mask(const Subset &s) {
  Mask m = 0;
  for (int i : s)
    m |= Mask(1) << (i - 1);
  return m;
}

std::vector<Mask> masks_of_size(int n, int k) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask(1) << n); ++m)
    if (std::popcount(m) == k)
      out.push_back(m);
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) { return mask_subset(a) < mask_subset(b); });
  return out;
}

void require_range(int n, int lo, int hi, const char *what) {
  if (n < lo || n > hi)
    throw std::invalid_argument(std::string(what) + " supports " + std::to_string(lo) + " <= n <= " +
                                std::to_string(hi));
}

std::vector<BigInt> zero_sum_from_masks(int n, Mask plus, Mask minus) {
  std::vector<BigInt> v(n, BigInt(0));
  for (int i = 0; i < n; ++i) {
    if ((plus >> i) & 1)
      v[i] += 1;
    if ((minus >> i) & 1)
      v[i] -= 1;
  }
  return v;
}

void finish(VerifyReport &r) {
  r.ok = std::all_of(r.cases.begin(), r.cases.end(), [](auto &c) { return c.second; });
}

RationalExpr monomial_expr(size_t nv, const std::vector<int> &exps) {
  Exponent num(nv, 0), den(nv, 0);
  for (size_t i = 0; i < nv; ++i) {
    if (exps[i] > 0)
      num[i] = static_cast<uint32_t>(exps[i]);
    else
      den[i] = static_cast<uint32_t>(-exps[i]);
  }
  const Field Q = Field::rationals();
  return RationalExpr(MultiPoly::monomial(nv, Q, num), MultiPoly::monomial(nv, Q, den));
}

} // namespace

std::vector<BigInt> root_coords(const std::vector<BigInt> &v) {
  if (v.empty())
    throw std::invalid_argument("empty vector");
  BigInt s = 0;
  for (auto &x : v)
    s += x;
  if (s != 0)
    throw std::invalid_argument("vector is not in the root lattice (nonzero sum)");
  return std::vector<BigInt>(v.begin(), v.end() - 1);
}

namespace {

bool in_hull_of(const std::vector<std::vector<BigInt>> &pts, const std::vector<size_t> &cols, size_t target,
                size_t dim) {
  std::vector<std::vector<Rational>> A(dim + 1);
  std::vector<Rational> b(dim + 1);
  for (size_t c = 0; c < dim; ++c)
    b[c] = Rational(pts[target][c]);
  b[dim] = 1;
  for (size_t q : cols) {
    if (q == target)
      continue;
    for (size_t c = 0; c < dim; ++c)
      A[c].push_back(Rational(pts[q][c]));
    A[dim].push_back(Rational(1));
  }
  if (A[dim].empty())
    return false;
  return lp_feasible(A, b);
}

// points that are the unique maximizer of some sampled integer functional
std::vector<char> certified_vertices(const std::vector<std::vector<BigInt>> &pts, size_t dim) {
  const size_t m = pts.size();
  std::vector<char> mark(m, 0);
  const BigInt lim = BigInt(1) << 30;
  std::vector<std::vector<long long>> small(m, std::vector<long long>(dim));
  for (size_t i = 0; i < m; ++i)
    for (size_t c = 0; c < dim; ++c) {
      if (abs(pts[i][c]) >= lim)
        return mark;
      small[i][c] = pts[i][c].convert_to<long long>();
    }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<long long> coef(-1000000, 1000000);
  const size_t rounds = 64 + 16 * m;
  std::vector<long long> dir(dim);
  for (size_t r = 0; r < rounds; ++r) {
    for (auto &d : dir)
      d = coef(rng);
    __int128 best = 0;
    size_t arg = 0, count = 0;
    for (size_t i = 0; i < m; ++i) {
      __int128 v = 0;
      for (size_t c = 0; c < dim; ++c)
        v += static_cast<__int128>(dir[c]) * small[i][c];
      if (count == 0 || v > best) {
        best = v;
        arg = i;
        count = 1;
      } else if (v == best) {
        ++count;
      }
    }
    if (count == 1)
      mark[arg] = 1;
  }
  return mark;
}

} // namespace

LatticePolytope convex_hull(size_t dim, std::vector<std::vector<BigInt>> pts) {
  for (auto &p : pts)
    if (p.size() != dim)
      throw std::invalid_argument("point has the wrong dimension");
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const size_t m = pts.size();
  std::vector<char> extreme(m, 1);
  if (m > 2) {
    std::vector<char> sure = certified_vertices(pts, dim);
    // lex-extreme points are vertices
    sure.front() = sure.back() = 1;
    std::vector<size_t> known, all(m);
    for (size_t i = 0; i < m; ++i) {
      all[i] = i;
      if (sure[i])
        known.push_back(i);
    }
    parallel_for(m, [&](size_t i) {
      if (sure[i])
        return;
      // a non-vertex lies in the hull of the vertices, all of which are among the others
      if (in_hull_of(pts, known, i, dim))
        extreme[i] = 0;
      else
        extreme[i] = !in_hull_of(pts, all, i, dim);
    });
  }
  LatticePolytope P{dim, {}};
  for (size_t i = 0; i < m; ++i)
    if (extreme[i])
      P.vertices.push_back(pts[i]);
  return P;
}

LatticePolytope permutohedron(int n) {
  if (n < 2)
    throw std::invalid_argument("permutohedron needs n >= 2");
  require_range(n, 2, 7, "permutohedron");
  std::vector<std::vector<BigInt>> pts;
  for (auto &s : all_permutations(n)) {
    // v_{sigma(k)} += n-k, v_k -= n-k
    std::vector<BigInt> v(n, BigInt(0));
    for (int k = 1; k <= n; ++k) {
      v[s[k - 1] - 1] += n - k;
      v[k - 1] -= n - k;
    }
    pts.push_back(root_coords(v));
  }
  return convex_hull(n - 1, pts);
}

LatticePolytope delta_j(int n, int j) {
  require_range(n, 2, 12, "delta_j");
  if (j < 1 || j > n - 1)
    throw std::invalid_argument("delta_j needs 1 <= j <= n-1");
  Mask first = (Mask(1) << j) - 1;
  std::vector<std::vector<BigInt>> pts;
  for (Mask J : masks_of_size(n, j))
    pts.push_back(root_coords(zero_sum_from_masks(n, J, first)));
  return convex_hull(n - 1, pts);
}

LatticePolytope segment(int n, int i, int k) {
  if (i < 1 || k < 1 || i > n || k > n || i == k)
    throw std::invalid_argument("segment needs distinct indices in 1..n");
  std::vector<BigInt> v(n, BigInt(0));
  v[i - 1] += 1;
  v[k - 1] -= 1;
  return convex_hull(n - 1, {std::vector<BigInt>(n - 1, BigInt(0)), root_coords(v)});
}

LatticePolytope minkowski_sum(const LatticePolytope &P, const LatticePolytope &Q) {
  if (P.ambient_dim != Q.ambient_dim)
    throw std::invalid_argument("Minkowski sum of polytopes in different dimensions");
  std::vector<std::vector<BigInt>> pts;
  for (auto &p : P.vertices)
    for (auto &q : Q.vertices) {
      std::vector<BigInt> s(p);
      for (size_t c = 0; c < s.size(); ++c)
        s[c] += q[c];
      pts.push_back(std::move(s));
    }
  return convex_hull(P.ambient_dim, pts);
}

LatticePolytope translate(const LatticePolytope &P, const std::vector<BigInt> &v) {
  if (v.size() != P.ambient_dim)
    throw std::invalid_argument("translation vector has the wrong dimension");
  LatticePolytope out{P.ambient_dim, {}};
  for (auto p : P.vertices) {
    for (size_t c = 0; c < p.size(); ++c)
      p[c] += v[c];
    out.vertices.push_back(std::move(p));
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  return out;
}

std::vector<Subset> proper_subsets(int n) {
  std::vector<Subset> out;
  for (int k = 1; k < n; ++k)
    for (Mask m : masks_of_size(n, k))
      out.push_back(mask_subset(m));
  return out;
}

MultiPoly subset_monomial(int n, const Subset &J) {
  Exponent e(n, 0);
  for (int i : J)
    e.at(i - 1) += 1;
  return MultiPoly::monomial(n, Field::rationals(), e);
}

std::vector<Relation> relations_generator(int n, int l_max) {
  require_range(n, 2, 6, "relations_generator");
  if (l_max < 2 || l_max > 4)
    throw std::invalid_argument("relations_generator supports 2 <= l_max <= 4");
  auto subsets = proper_subsets(n);
  const size_t S = subsets.size();
  std::vector<Relation> out;
  for (int l = 2; l <= l_max; ++l) {
    using Key = std::pair<std::vector<int>, std::vector<int>>; // sizes, chi-sum
    std::map<Key, std::vector<std::vector<size_t>>> groups;
    std::vector<size_t> idx(l, 0);
    for (;;) {
      Key key{{}, std::vector<int>(n, 0)};
      for (size_t t : idx) {
        key.first.push_back(static_cast<int>(subsets[t].size()));
        for (int i : subsets[t])
          key.second[i - 1] += 1;
      }
      std::sort(key.first.begin(), key.first.end());
      groups[key].push_back(idx);
      // next nondecreasing tuple
      int p = l - 1;
      while (p >= 0 && idx[p] == S - 1)
        --p;
      if (p < 0)
        break;
      ++idx[p];
      for (int q = p + 1; q < l; ++q)
        idx[q] = idx[p];
    }
    size_t pairs = out.size();
    for (auto &[key, members] : groups)
      pairs += members.size() * (members.size() - 1) / 2;
    if (pairs > 1000000)
      throw std::invalid_argument("relations_generator output exceeds 1e6 relations; lower n or l_max");
    for (auto &[key, members] : groups)
      for (size_t a = 0; a < members.size(); ++a)
        for (size_t b = a + 1; b < members.size(); ++b) {
          Relation r;
          for (size_t t : members[a])
            r.lhs.push_back(subsets[t]);
          for (size_t t : members[b])
            r.rhs.push_back(subsets[t]);
          out.push_back(std::move(r));
        }
  }
  return out;
}

std::vector<Perm> all_permutations(int n) {
  if (n < 1 || n > 9)
    throw std::invalid_argument("permutations supported for 1 <= n <= 9");
  Perm s(n);
  for (int i = 0; i < n; ++i)
    s[i] = i + 1;
  std::vector<Perm> out;
  do
    out.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  return out;
}

std::string perm_label(const Perm &s) {
  std::string out;
  for (int x : s)
    out += std::to_string(x);
  return out;
}

MultiPoly chart_section(int n, const Perm &sigma, int j) {
  require_range(n, 2, 9, "chart_section");
  if (j < 1 || j > n - 1)
    throw std::invalid_argument("chart_section needs 1 <= j <= n-1");
  if (static_cast<int>(sigma.size()) != n)
    throw std::invalid_argument("permutation has the wrong length");
  std::vector<int> pos(n + 1, 0);
  for (int m = 1; m <= n; ++m)
    pos[sigma[m - 1]] = m;
  MultiPoly out(n - 1, Field::rationals());
  for (Mask I : masks_of_size(n, j)) {
    Exponent e(n - 1, 0);
    for (int i = 1; i <= n - 1; ++i) {
      int above = 0;
      for (int x : mask_subset(I))
        if (pos[x] > i)
          ++above;
      int ex = above - std::max(0, j - i);
      if (ex < 0)
        throw std::logic_error("chart rewrite produced a negative exponent");
      e[i - 1] = static_cast<uint32_t>(ex);
    }
    out.add_term(e, 1);
  }
  return out;
}

VerifyReport verify_cd_disjoint(int n, Variant v) {
  require_range(n, 2, 7, "verify_cd_disjoint");
  auto perms = all_permutations(n);
  std::vector<std::vector<std::pair<std::string, bool>>> slots(perms.size());
  const Field Q = Field::rationals();
  parallel_for(perms.size(), [&](size_t p) {
    for (int j = 1; j <= n - 1; ++j) {
      MultiPoly s = chart_section(n, perms[p], j);
      if (v == Variant::NegativeControl)
        s = s * MultiPoly::variable(n - 1, Q, j - 1);
      std::vector<RationalExpr> images;
      for (int i = 0; i < n - 1; ++i)
        images.emplace_back(i == j - 1 ? MultiPoly(n - 1, Q) : MultiPoly::variable(n - 1, Q, i));
      RationalExpr r = poly_substitute(s, images);
      bool ok = r.equals(RationalExpr(MultiPoly::constant(n - 1, Q, 1)));
      slots[p].emplace_back("sigma=" + perm_label(perms[p]) + " j=" + std::to_string(j), ok);
    }
  });
  VerifyReport r;
  for (auto &s : slots)
    r.cases.insert(r.cases.end(), s.begin(), s.end());
  finish(r);
  return r;
}

int divisor_order(int n, const Subset &J, int k) {
  if (k < 0 || k > n)
    throw std::invalid_argument("divisor_order needs 0 <= k <= n");
  Mask Jm = subset_mask(J);
  int best = n + 1;
  for (Mask I : masks_of_size(n, k))
    best = std::min(best, std::popcount(I & Jm));
  return best;
}

VerifyReport verify_divisor_relation(int n, Variant v) {
  require_range(n, 2, 10, "verify_divisor_relation");
  auto rays = proper_subsets(n);
  std::vector<std::vector<std::pair<std::string, bool>>> slots(rays.size());
  parallel_for(rays.size(), [&](size_t r) {
    const Subset &J = rays[r];
    auto ord = [&](int k) {
      return divisor_order(n, J, v == Variant::NegativeControl ? std::min(k + 1, n) : k);
    };
    std::string lab;
    for (int x : J)
      lab += std::to_string(x);
    for (int j = 1; j <= n - 1; ++j) {
      int lhs = ord(j - 1) + ord(j + 1) - 2 * ord(j);
      int rhs = static_cast<int>(J.size()) == n - j ? 1 : 0;
      slots[r].emplace_back("J={" + lab + "} j=" + std::to_string(j), lhs == rhs);
    }
  });
  VerifyReport r;
  for (auto &s : slots)
    r.cases.insert(r.cases.end(), s.begin(), s.end());
  finish(r);
  return r;
}

VerifyReport verify_section_hyperplane(int n, Variant v) {
  require_range(n, 2, 5, "verify_section_hyperplane");
  const Field Q = Field::rationals();
  const size_t nv = n;
  std::vector<MultiPoly> e;
  for (int k = 0; k <= n; ++k) {
    MultiPoly s(nv, Q);
    for (Mask I : masks_of_size(n, k))
      s = s + subset_monomial(n, mask_subset(I));
    e.push_back(s);
  }
  auto perms = all_permutations(n);
  std::vector<std::vector<std::pair<std::string, bool>>> slots(perms.size());
  parallel_for(perms.size(), [&](size_t p) {
    const Perm &s = perms[p];
    for (int i = 1; i <= n; ++i) {
      RationalExpr total(MultiPoly(nv, Q));
      for (int k = 0; k <= n; ++k) {
        // a_k = e_k / x_{sigma(1..k)}, y_k = x_{sigma(i)}^{i-k} x_{sigma(1..k)} / x_{sigma(1..i)}
        std::vector<int> a_den(nv, 0), y(nv, 0);
        for (int m = 1; m <= k; ++m) {
          a_den[s[m - 1] - 1] -= 1;
          y[s[m - 1] - 1] += 1;
        }
        for (int m = 1; m <= i; ++m)
          y[s[m - 1] - 1] -= 1;
        y[s[i - 1] - 1] += i - k;
        RationalExpr a_k = (k == 0 || k == n) ? RationalExpr(MultiPoly::constant(nv, Q, 1))
                                              : RationalExpr(e[k]) * monomial_expr(nv, a_den);
        RationalExpr term = a_k * monomial_expr(nv, y);
        bool negative = v == Variant::Standard && k % 2 == 1;
        total = negative ? total - term : total + term;
      }
      slots[p].emplace_back("sigma=" + perm_label(s) + " i=" + std::to_string(i), expr_is_zero(total));
    }
  });
  VerifyReport r;
  for (auto &sl : slots)
    r.cases.insert(r.cases.end(), sl.begin(), sl.end());
  finish(r);
  return r;
}

VerifyReport verify_a_data_cocycle(int n, Variant v) {
  require_range(n, 3, 8, "verify_a_data_cocycle");
  auto subsets = proper_subsets(n);
  const size_t nv = subsets.size();
  const Field Q = Field::rationals();
  std::vector<Mask> masks;
  for (auto &s : subsets)
    masks.push_back(subset_mask(s));
  // t_{beta_ij} = prod_{i in I, j notin I} w_I; t_{-beta_ij} = t_{beta_ji}
  auto t = [&](int i, int j) {
    Exponent e(nv, 0);
    for (size_t a = 0; a < nv; ++a)
      if (((masks[a] >> (i - 1)) & 1) && !((masks[a] >> (j - 1)) & 1))
        e[a] = 1;
    return MultiPoly::monomial(nv, Q, e);
  };
  VerifyReport r;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) {
        if (i == j || j == k || i == k)
          continue;
        MultiPoly lhs = t(i, j) * t(j, k), rhs = t(j, i) * t(k, j);
        if (v == Variant::Standard) {
          lhs = lhs * t(k, i);
          rhs = rhs * t(i, k);
        } else {
          lhs = lhs * t(i, k);
          rhs = rhs * t(k, i);
        }
        r.cases.emplace_back("(i,j,k)=(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) +
                                 ")",
                             lhs == rhs);
      }
  finish(r);
  return r;
}

VerifyReport verify_minkowski(int n, Variant v) {
  require_range(n, 2, 5, "verify_minkowski");
  LatticePolytope target = permutohedron(n);
  LatticePolytope zero{static_cast<size_t>(n - 1), {std::vector<BigInt>(n - 1, BigInt(0))}};
  const bool drop = v == Variant::NegativeControl;
  LatticePolytope deltas = zero;
  for (int j = 1; j <= n - 1 - (drop ? 1 : 0); ++j)
    deltas = minkowski_sum(deltas, delta_j(n, j));
  LatticePolytope segs = zero;
  std::vector<std::pair<int, int>> pairs;
  for (int j = 2; j <= n; ++j)
    for (int k = 1; k < j; ++k)
      pairs.emplace_back(j, k);
  if (drop)
    pairs.pop_back();
  for (auto [j, k] : pairs)
    segs = minkowski_sum(segs, segment(n, j, k));
  VerifyReport r;
  r.cases.emplace_back("sum of delta_j", deltas == target);
  r.cases.emplace_back("sum of segments", segs == target);
  r.cases.emplace_back("vertex count n!", target.vertices.size() == factorial(n));
  if (drop)
    r.cases.pop_back();
  finish(r);
  return r;
}

SigmaPoint make_sigma_point(const Field &f, int n, const std::map<Subset, Rational> &w) {
  require_range(n, 2, 10, "SigmaPoint");
  SigmaPoint sp{f, n, {}};
  for (auto &I : proper_subsets(n)) {
    auto it = w.find(I);
    if (it == w.end())
      throw std::invalid_argument("missing w for a proper subset");
    sp.w[I] = f.normalize(it->second);
  }
  if (w.size() != sp.w.size())
    throw std::invalid_argument("w has entries for non-proper or malformed subsets");
  return sp;
}

bool is_nondegenerate(const SigmaPoint &sp) {
  std::vector<Mask> zeros;
  for (auto &[I, x] : sp.w)
    if (x == 0)
      zeros.push_back(subset_mask(I));
  std::sort(zeros.begin(), zeros.end(), [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
  for (size_t i = 0; i + 1 < zeros.size(); ++i)
    if (std::popcount(zeros[i]) == std::popcount(zeros[i + 1]) || (zeros[i] & ~zeros[i + 1]) != 0)
      return false;
  return true;
}

ExtendedPoint sigma_forget(const SigmaPoint &sp) {
  if (!is_nondegenerate(sp))
    throw std::invalid_argument("degenerate Sigma point: zero set is not contained in a flag");
  const Field &f = sp.field;
  const int n = sp.n;
  ExtendedPoint e{f, {Rational(1)}, {}};
  for (int j = 1; j <= n - 1; ++j) {
    Rational aj = 0;
    for (Mask J : masks_of_size(n, j)) {
      Rational term = 1;
      for (auto &[I, w] : sp.w) {
        int ex = std::popcount(J & subset_mask(I)) - std::max(0, static_cast<int>(I.size()) + j - n);
        if (ex > 0)
          term = f.mul(term, f.pow(w, BigInt(ex)));
      }
      aj = f.add(aj, term);
    }
    e.a.push_back(aj);
    Rational bj = 1;
    for (Mask J : masks_of_size(n, n - j))
      bj = f.mul(bj, sp.w.at(mask_subset(J)));
    e.b.push_back(bj);
  }
  e.a.push_back(Rational(1));
  if (!is_nondegenerate(e))
    throw std::logic_error("sigma_forget produced a degenerate point");
  return e;
}

nlohmann::ordered_json polytope_to_json(const LatticePolytope &P) {
  nlohmann::ordered_json j;
  j["ambient_dim"] = P.ambient_dim;
  j["num_vertices"] = P.vertices.size();
  auto vs = nlohmann::ordered_json::array();
  for (auto &v : P.vertices) {
    auto row = nlohmann::ordered_json::array();
    for (auto &x : v)
      row.push_back(big_to_json(x));
    vs.push_back(row);
  }
  j["vertices"] = vs;
  return j;
}

nlohmann::ordered_json report_to_json(const std::string &name, int n, const VerifyReport &r) {
  nlohmann::ordered_json j;
  j["check"] = name;
  j["n"] = n;
  j["ok"] = r.ok;
  auto cs = nlohmann::ordered_json::array();
  for (auto &[lab, ok] : r.cases)
    cs.push_back({{"case", lab}, {"ok", ok}});
  j["cases"] = cs;
  return j;
}

} // namespace corb
