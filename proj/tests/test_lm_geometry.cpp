#include "corb/chains.hpp"
#include "corb/lm_geometry.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace corb;

namespace {

using Pt = std::vector<BigInt>;

BigInt cross(const Pt &o, const Pt &a, const Pt &b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// monotone chain, strict vertices only
std::vector<Pt> hull2d(std::vector<Pt> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3)
    return p;
  std::vector<Pt> h(2 * p.size());
  size_t k = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0)
      --k;
    h[k++] = p[i];
  }
  for (size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0)
      --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  std::sort(h.begin(), h.end());
  return h;
}

long binom(int n, int k) { return static_cast<long>(binomial(n, k)); }

} // namespace

TEST_SUITE("lm_geometry") {

TEST_CASE("convex hull agrees with a planar oracle") {
  std::mt19937 rng(17);
  for (int t = 0; t < 80; ++t) {
    std::vector<Pt> pts;
    int m = 3 + rng() % 25;
    for (int i = 0; i < m; ++i)
      pts.push_back({BigInt(static_cast<int>(rng() % 21) - 10), BigInt(static_cast<int>(rng() % 21) - 10)});
    auto oracle = hull2d(pts);
    if (oracle.size() < 3)
      continue;
    CHECK(convex_hull(2, pts).vertices == oracle);
  }
}

TEST_CASE("convex hull of a filled cube") {
  std::vector<Pt> pts;
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y)
      for (int z = 0; z <= 2; ++z)
        pts.push_back({x, y, z});
  CHECK(convex_hull(3, pts).vertices.size() == 8);
}

TEST_CASE("Minkowski sums agree with a planar oracle") {
  std::mt19937 rng(19);
  for (int t = 0; t < 30; ++t) {
    std::vector<Pt> a, b;
    for (int i = 0; i < 6; ++i) {
      a.push_back({BigInt(static_cast<int>(rng() % 9)), BigInt(static_cast<int>(rng() % 9))});
      b.push_back({BigInt(static_cast<int>(rng() % 9)), BigInt(static_cast<int>(rng() % 9))});
    }
    std::vector<Pt> sums;
    for (auto &p : a)
      for (auto &q : b)
        sums.push_back({p[0] + q[0], p[1] + q[1]});
    auto oracle = hull2d(sums);
    if (oracle.size() < 3 || hull2d(a).size() < 3 || hull2d(b).size() < 3)
      continue;
    CHECK(minkowski_sum(convex_hull(2, a), convex_hull(2, b)).vertices == oracle);
  }
}

TEST_CASE("permutohedra and hypersimplices") {
  CHECK(permutohedron(2).vertices == std::vector<Pt>{{-1}, {0}});
  for (int n = 2; n <= 5; ++n) {
    CHECK(permutohedron(n).vertices.size() == factorial(n));
    for (int j = 1; j < n; ++j)
      CHECK(static_cast<long>(delta_j(n, j).vertices.size()) == binom(n, j));
  }
  CHECK_THROWS_AS(delta_j(4, 4), std::invalid_argument);
  CHECK_THROWS_AS(permutohedron(1), std::invalid_argument);
}

TEST_CASE("permutohedron vertices are permutations of a staircase") {
  // in Z^n every vertex is sigma applied to (n-1, ..., 0) minus the same vector unpermuted
  for (int n = 2; n <= 5; ++n) {
    std::set<Pt> expect;
    for (auto &s : all_permutations(n)) {
      Pt v(n, BigInt(0));
      for (int k = 1; k <= n; ++k) {
        v[s[k - 1] - 1] += n - k;
        v[k - 1] -= n - k;
      }
      expect.insert(root_coords(v));
    }
    auto got = permutohedron(n).vertices;
    CHECK(std::set<Pt>(got.begin(), got.end()) == expect);
  }
}

TEST_CASE("Minkowski decompositions") {
  for (int n = 2; n <= 4; ++n) {
    CHECK(verify_minkowski(n).ok);
    CHECK_FALSE(verify_minkowski(n, Variant::NegativeControl).ok);
  }
  auto P = permutohedron(3);
  CHECK(translate(translate(P, {1, 2}), {-1, -2}) == P);
}

TEST_CASE("relations") {
  CHECK(relations_generator(3, 2).size() == 3);
  CHECK(relations_generator(3, 3).size() == 21);
  CHECK(relations_generator(4, 2).size() == 33);
  for (auto &r : relations_generator(4, 3)) {
    MultiPoly l = MultiPoly::constant(4, Field::rationals(), 1), rr = l;
    for (auto &J : r.lhs)
      l = l * subset_monomial(4, J);
    for (auto &J : r.rhs)
      rr = rr * subset_monomial(4, J);
    CHECK(l == rr);
    CHECK(r.lhs.size() == r.rhs.size());
    CHECK(r.lhs != r.rhs);
  }
  CHECK_THROWS_AS(relations_generator(6, 4), std::invalid_argument);
}

TEST_CASE("chart sections") {
  Field Q = Field::rationals();
  CHECK(chart_section(3, {1, 2, 3}, 1) == MultiPoly::parse("x1*x2 + x1 + 1", 2, Q));
  std::mt19937 rng(23);
  for (int n = 2; n <= 5; ++n)
    for (auto &s : all_permutations(n))
      for (int j = 1; j < n; ++j) {
        // x_{sigma(1)} = 1, x_{sigma(i+1)} = t_i x_{sigma(i)}
        std::vector<Rational> t;
        for (int i = 0; i < n - 1; ++i)
          t.emplace_back(1 + static_cast<long>(rng() % 5), 1 + static_cast<long>(rng() % 3));
        std::vector<Rational> x(n + 1);
        x[s[0]] = 1;
        for (int i = 1; i < n; ++i)
          x[s[i]] = x[s[i - 1]] * t[i - 1];
        Rational sum = 0;
        for (uint32_t m = 0; m < (1u << n); ++m) {
          if (std::popcount(m) != j)
            continue;
          Rational prod = 1;
          for (int i = 0; i < n; ++i)
            if ((m >> i) & 1)
              prod *= x[i + 1];
          sum += prod;
        }
        Rational lead = 1;
        for (int i = 0; i < j; ++i)
          lead *= x[s[i]];
        CHECK(chart_section(n, s, j).evaluate(t) == sum / lead);
      }
}

TEST_CASE("two-point chart reproduces the weighted map") {
  // on the identity chart: (x1 + x2 : x1 x2) = (1 + t : t) up to the weight-one and weight-two scalings
  Field Q = Field::rationals();
  CHECK(chart_section(2, {1, 2}, 1) == MultiPoly::parse("x1 + 1", 1, Q));
  CHECK(chart_section(2, {2, 1}, 1) == MultiPoly::parse("x1 + 1", 1, Q));
}

TEST_CASE("divisor order") {
  for (int n = 2; n <= 6; ++n)
    for (uint32_t m = 1; m + 1 < (1u << n); ++m) {
      Subset J;
      for (int i = 0; i < n; ++i)
        if ((m >> i) & 1)
          J.push_back(i + 1);
      for (int k = 1; k < n; ++k)
        CHECK(divisor_order(n, J, k) == std::max(0, k + static_cast<int>(J.size()) - n));
    }
}

TEST_CASE("symbolic verifiers and their negative controls") {
  for (int n = 2; n <= 5; ++n) {
    CHECK(verify_cd_disjoint(n).ok);
    CHECK_FALSE(verify_cd_disjoint(n, Variant::NegativeControl).ok);
    CHECK(verify_divisor_relation(n).ok);
    CHECK_FALSE(verify_divisor_relation(n, Variant::NegativeControl).ok);
  }
  for (int n = 2; n <= 4; ++n) {
    CHECK(verify_section_hyperplane(n).ok);
    CHECK_FALSE(verify_section_hyperplane(n, Variant::NegativeControl).ok);
  }
  for (int n = 3; n <= 5; ++n) {
    CHECK(verify_a_data_cocycle(n).ok);
    CHECK_FALSE(verify_a_data_cocycle(n, Variant::NegativeControl).ok);
  }
  CHECK_THROWS_AS(verify_minkowski(6), std::invalid_argument);
}

TEST_CASE("sigma points") {
  Field F11 = Field::prime(BigInt(11));
  for (int n = 2; n <= 5; ++n) {
    std::map<Subset, Rational> w;
    for (auto &I : proper_subsets(n))
      w[I] = 1;
    auto e = sigma_forget(make_sigma_point(F11, n, w));
    for (int j = 0; j <= n; ++j)
      CHECK(e.a[j] == F11.element(binom(n, j)));
  }
  std::map<Subset, Rational> w;
  for (auto &I : proper_subsets(3))
    w[I] = 1;
  w[{1}] = 0;
  w[{1, 2}] = 0;
  CHECK(is_nondegenerate(make_sigma_point(F11, 3, w)));
  w[{2}] = 0;
  CHECK_FALSE(is_nondegenerate(make_sigma_point(F11, 3, w)));
  w.erase({2});
  CHECK_THROWS_AS(make_sigma_point(F11, 3, w), std::invalid_argument);
}

TEST_CASE("forgetting map matches the divisor of the points") {
  Field F11 = Field::prime(BigInt(11));
  std::mt19937 rng(29);
  for (int n = 2; n <= 4; ++n)
    for (int t = 0; t < 20; ++t) {
      std::map<Subset, Rational> w;
      for (auto &I : proper_subsets(n))
        w[I] = 1 + static_cast<long>(rng() % 10);
      SigmaPoint sp = make_sigma_point(F11, n, w);
      UPoly p{Rational(1)};
      for (int i = 1; i <= n; ++i) {
        Rational x = 1;
        for (auto &[I, v] : sp.w)
          if (std::find(I.begin(), I.end(), i) != I.end())
            x = F11.mul(x, v);
        p = upoly_mul(F11, p, UPoly{F11.neg(x), Rational(1)});
      }
      CHECK(orbit_equal(sigma_forget(sp), point_from_polynomial(F11, upoly_reverse(p))));

      // relabeling the marked points does not move the image
      Perm s = all_permutations(n)[rng() % factorial(n).convert_to<size_t>()];
      std::map<Subset, Rational> w2;
      for (auto &[I, v] : sp.w) {
        Subset J;
        for (int i : I)
          J.push_back(s[i - 1]);
        std::sort(J.begin(), J.end());
        w2[J] = v;
      }
      auto a = sigma_forget(sp), b = sigma_forget(make_sigma_point(F11, n, w2));
      CHECK(a.a == b.a);
      CHECK(a.b == b.b);
    }
}

TEST_CASE("polytope json") {
  auto j = polytope_to_json(permutohedron(2));
  CHECK(j.dump() == R"({"ambient_dim":1,"num_vertices":2,"vertices":[[-1],[0]]})");
}

}
