#include "corb/chains.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace corb;

namespace {

UPoly up(const Field &f, const std::vector<long> &c) {
  UPoly p;
  for (long x : c)
    p.push_back(f.element(x));
  return p;
}

// prod (y - s_i), ascending
UPoly from_roots(const Field &f, const std::vector<Rational> &s) {
  UPoly p{Rational(1)};
  for (auto &r : s)
    p = upoly_mul(f, p, UPoly{f.neg(r), Rational(1)});
  return p;
}

UPoly monic(const Field &f, UPoly p) {
  Rational l = f.inv(p.back());
  for (auto &x : p)
    x = f.mul(x, l);
  return p;
}

FanPoint pt(Family fam, int n, const Field &k, const std::vector<long> &c) {
  std::vector<Rational> v;
  for (long x : c)
    v.push_back(k.element(x));
  return make_point(shared_fan({fam, n}), k, v);
}

// ordered n-tuples of units whose product polynomial is proportional to poly
long brute_ordered(const Field &f, const UPoly &poly, size_t n) {
  const long q = f.characteristic().convert_to<long>();
  UPoly target = monic(f, poly);
  std::vector<long> d(n, 1);
  long count = 0;
  for (;;) {
    std::vector<Rational> s;
    for (long x : d)
      s.emplace_back(x);
    count += from_roots(f, s) == target;
    size_t i = 0;
    while (i < n && ++d[i] == q)
      d[i++] = 1;
    if (i == n)
      break;
  }
  return count;
}

// ordered n-tuples s with s_i^2 != c and prod (y - s_i)(y - c/s_i) proportional to poly
long brute_involutive(const Field &f, const UPoly &poly, size_t n, const Rational &c) {
  const long q = f.characteristic().convert_to<long>();
  UPoly target = monic(f, poly);
  std::vector<long> d(n, 1);
  long count = 0;
  for (;;) {
    std::vector<Rational> s;
    bool ok = true;
    for (long x : d) {
      Rational r(x);
      ok = ok && f.mul(r, r) != c;
      s.push_back(r);
      s.push_back(f.div(c, r));
    }
    count += ok && from_roots(f, s) == target;
    size_t i = 0;
    while (i < n && ++d[i] == q)
      d[i++] = 1;
    if (i == n)
      break;
  }
  return count;
}

std::vector<Rational> rand_units(std::mt19937 &rng, const Field &f, size_t k) {
  const long q = f.characteristic().convert_to<long>();
  std::vector<Rational> v;
  for (size_t i = 0; i < k; ++i)
    v.emplace_back(1 + static_cast<long>(rng() % (q - 1)));
  return v;
}

} // namespace

TEST_SUITE("chains") {

TEST_CASE("univariate helpers") {
  Field F = Field::prime(BigInt(13));
  std::mt19937 rng(1);
  for (int t = 0; t < 50; ++t) {
    UPoly a = rand_units(rng, F, 2 + rng() % 5), b = rand_units(rng, F, 1 + rng() % 4);
    auto [q, r] = upoly_divmod(F, a, b);
    CHECK(upoly_degree(r) < upoly_degree(b));
    for (long x = 0; x < 13; ++x) {
      Rational X(x);
      CHECK(upoly_eval(F, a, X) == F.add(F.mul(upoly_eval(F, q, X), upoly_eval(F, b, X)), upoly_eval(F, r, X)));
    }
    UPoly g = upoly_gcd(F, a, b);
    CHECK(upoly_trim(F, upoly_divmod(F, a, g).second).empty());
    CHECK(upoly_trim(F, upoly_divmod(F, b, g).second).empty());
    for (auto &[root, m] : upoly_nonzero_roots(F, a)) {
      CHECK(upoly_eval(F, a, root) == 0);
      CHECK(m == upoly_root_multiplicity(F, a, root));
    }
  }
  CHECK(upoly_derivative(F, up(F, {1, 2, 3})) == up(F, {2, 6}));
  CHECK(upoly_is_squarefree(F, up(F, {12, 0, 1})));
  CHECK_FALSE(upoly_is_squarefree(F, from_roots(F, {2, 2, 5})));
  CHECK(upoly_reverse(up(F, {1, 2, 3})) == up(F, {3, 2, 1}));
  CHECK_THROWS_AS(upoly_divmod(F, up(F, {1}), UPoly{}), std::domain_error);
}

TEST_CASE("component polynomials satisfy the chain equations") {
  // with y_r = beta_r t^r: y_i y_{j+1} = b_{i+1}..b_j y_{i+1} y_j
  Field Q = Field::rationals();
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> b;
    for (int i = 0; i < 5; ++i)
      b.emplace_back(1 + static_cast<long>(rng() % 7), 1 + static_cast<long>(rng() % 5));
    for (size_t i = 0; i <= 5; ++i)
      for (size_t j = i + 1; j <= 5; ++j) {
        Rational prod = 1;
        for (size_t s = i + 1; s <= j; ++s)
          prod *= b[s - 1];
        CHECK(chain_beta(Q, b, i) * chain_beta(Q, b, j + 1) ==
              prod * chain_beta(Q, b, i + 1) * chain_beta(Q, b, j));
      }
  }
}

TEST_CASE("chain examples") {
  Field Q = Field::rationals();
  auto c = chain_from_point(pt(Family::A, 1, Q, {1, 1}));
  CHECK(c.component_polys == std::vector<UPoly>{up(Q, {1, 1, 1})});
  auto r = chain_from_point(pt(Family::A, 1, Q, {1, 0}));
  CHECK(r.component_degrees == std::vector<size_t>{1, 1});
  CHECK(r.component_polys == std::vector<UPoly>{up(Q, {1, 1}), up(Q, {1, 1})});
  Field F7 = Field::prime(BigInt(7));
  auto s = chain_from_point(pt(Family::A, 2, F7, {0, 0, 1, 1}));
  CHECK(s.component_polys == std::vector<UPoly>{up(F7, {1, 0, 0, 1})});
  auto e = point_from_polynomial(F7, from_roots(F7, {1, 2, 3}));
  CHECK(e.a == up(F7, {1, 4, 1, 1}));
  CHECK(e.b == up(F7, {1, 1}));
  CHECK_THROWS_AS(point_from_polynomial(F7, up(F7, {0, 1, 1})), std::invalid_argument);
  CHECK_THROWS_AS(point_from_polynomial(F7, up(F7, {1, 1})), std::invalid_argument);
}

TEST_CASE("fiber profile examples") {
  Field F7 = Field::prime(BigInt(7));
  auto f = fiber_profile(point_from_polynomial(F7, from_roots(F7, {1, 2, 3})));
  CHECK(f.rational_ordered_preimages == 6);
  CHECK(f.multiplicity_profile == std::vector<std::vector<unsigned>>{{1, 1, 1}});
  CHECK_FALSE(f.is_ramified);
  auto g = fiber_profile(point_from_polynomial(F7, from_roots(F7, {1, 1})));
  CHECK(g.rational_ordered_preimages == 1);
  CHECK(g.multiplicity_profile == std::vector<std::vector<unsigned>>{{2}});
  CHECK(g.is_ramified);
  auto h = fiber_profile(pt(Family::A, 1, F7, {1, 0}));
  CHECK(h.rational_ordered_preimages == 2);
  CHECK_FALSE(h.is_ramified);
  CHECK_THROWS_AS(fiber_profile(pt(Family::A, 1, Field::rationals(), {1, 1})), std::invalid_argument);
}

TEST_CASE("ordered preimages match brute-force tuple counts") {
  Field F7 = Field::prime(BigInt(7));
  std::mt19937 rng(5);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 25; ++t) {
      auto a = rand_units(rng, F7, n - 1), b = rand_units(rng, F7, n - 1);
      std::vector<Rational> c = a;
      c.insert(c.end(), b.begin(), b.end());
      FanPoint p = make_point(shared_fan({Family::A, n - 1}), F7, c);
      auto ch = chain_from_point(p);
      REQUIRE(ch.component_polys.size() == 1);
      auto fp = fiber_profile(ch);
      CHECK(fp.rational_ordered_preimages == brute_ordered(F7, ch.component_polys[0], n));
      CHECK(fp.rational_ordered_preimages <= factorial(n));
      CHECK(fp.is_ramified == !upoly_is_squarefree(F7, ch.component_polys[0]));
    }
  }
}

TEST_CASE("round trip through the polynomial") {
  Field F11 = Field::prime(BigInt(11));
  std::mt19937 rng(7);
  for (int t = 0; t < 60; ++t) {
    int n = 2 + rng() % 4;
    auto c = rand_units(rng, F11, 2 * (n - 1));
    for (int i = 0; i < n - 1; ++i)
      if (rng() % 4 == 0)
        c[i] = 0;
    FanPoint p = make_point(shared_fan({Family::A, n - 1}), F11, c);
    auto ch = chain_from_point(p);
    CHECK(orbit_equal(point_from_polynomial(F11, ch.component_polys[0]), p));
  }
}

TEST_CASE("orbit invariance of chains") {
  Field F11 = Field::prime(BigInt(11));
  std::mt19937 rng(8);
  for (int t = 0; t < 40; ++t) {
    int n = 3 + rng() % 3;
    auto c = rand_units(rng, F11, 2 * (n - 1));
    if (rng() % 2)
      c[n - 1 + rng() % (n - 1)] = 0;
    FanPoint p = make_point(shared_fan({Family::A, n - 1}), F11, c);
    GroupElement g{rand_units(rng, F11, n - 1)};
    auto x = fiber_profile(p), y = fiber_profile(act(g, p));
    CHECK(x.multiplicity_profile == y.multiplicity_profile);
    CHECK(chain_from_point(p).component_degrees == chain_from_point(act(g, p)).component_degrees);
    // a_{k-1} a_{k+1} b_k / a_k^2 with a_0 = a_n = 1
    auto e = extended_from_point(p), e2 = extended_from_point(act(g, p));
    for (int k = 1; k < n; ++k) {
      if (e.a[k] == 0)
        continue;
      auto inv = [&](const ExtendedPoint &z) {
        return F11.div(F11.mul(F11.mul(z.a[k - 1], z.a[k + 1]), z.b[k - 1]), F11.mul(z.a[k], z.a[k]));
      };
      CHECK(inv(e) == inv(e2));
    }
  }
}

TEST_CASE("rescaled polynomials are orbit-equal") {
  Field F13 = Field::prime(BigInt(13));
  std::mt19937 rng(9);
  for (int t = 0; t < 30; ++t) {
    UPoly c = rand_units(rng, F13, 3 + rng() % 3);
    Rational lam = rand_units(rng, F13, 1)[0], mu = rand_units(rng, F13, 1)[0];
    UPoly d = c;
    Rational s = lam;
    for (auto &x : d) {
      x = F13.mul(x, s);
      s = F13.mul(s, mu);
    }
    CHECK(orbit_equal(point_from_polynomial(F13, c), point_from_polynomial(F13, d)));
  }
}

TEST_CASE("embeddings") {
  Field F7 = Field::prime(BigInt(7));
  CHECK(c_point_embed(pt(Family::C, 1, F7, {3, 5})).coords == up(F7, {3, 5}));
  CHECK(c_point_embed(pt(Family::C, 2, F7, {2, 3, 4, 5})).coords == up(F7, {2, 3, 2, 4, 5, 4}));
  CHECK(b_point_embed(pt(Family::Bcan, 1, F7, {2, 3})).coords == up(F7, {2, 2, 3, 3}));
  CHECK(b_point_embed(pt(Family::Bcan, 2, F7, {1, 1, 1, 1})).coords == up(F7, {1, 1, 1, 1, 1, 1, 1, 1}));
  FanPoint m = minus_embed(pt(Family::Cminus, 2, F7, {1, 1}));
  CHECK(m.coords == up(F7, {1, 0, 1, 1}));
  FanPoint z = minus_embed(pt(Family::Cminus, 2, F7, {0, 1}));
  CHECK(z.coords == up(F7, {0, 0, 1, 1}));
  CHECK(stabilizer(z).torsion == std::vector<BigInt>{2});
  CHECK_THROWS_AS(c_point_embed(pt(Family::A, 1, F7, {1, 1})), std::invalid_argument);
}

TEST_CASE("embeddings commute with the palindromic action") {
  Field F11 = Field::prime(BigInt(11));
  std::mt19937 rng(10);
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < 15; ++t) {
      FanPoint c = make_point(shared_fan({Family::C, n}), F11, rand_units(rng, F11, 2 * n));
      GroupElement g{rand_units(rng, F11, n)};
      CHECK(c_point_embed(act(g, c)).coords == act(duplicate_units(g, true), c_point_embed(c)).coords);
      FanPoint b = make_point(shared_fan({Family::Bcan, n}), F11, rand_units(rng, F11, 2 * n));
      CHECK(b_point_embed(act(g, b)).coords == act(duplicate_units(g, false), b_point_embed(b)).coords);
    }
}

TEST_CASE("palindromic stabilizer matches the folded stack") {
  Field F5 = Field::prime(BigInt(5));
  for (int n = 1; n <= 2; ++n) {
    FanPtr fan = shared_fan({Family::Bcan, n});
    std::vector<long> d(2 * n, 0);
    for (;;) {
      std::vector<Rational> c;
      for (long x : d)
        c.emplace_back(x);
      if (is_nondegenerate(*fan, c)) {
        FanPoint p{fan, F5, c};
        CHECK(palindromic_stabilizer(b_point_embed(p)) == stabilizer(p));
      }
      size_t i = 0;
      while (i < d.size() && ++d[i] == 3)
        d[i++] = 0;
      if (i == d.size())
        break;
    }
  }
}

TEST_CASE("involutive fiber counts") {
  Field F7 = Field::prime(BigInt(7));
  CHECK(involutive_fiber_profile(pt(Family::C, 1, F7, {1, 1})) == 2);
  Field F11 = Field::prime(BigInt(11));
  std::mt19937 rng(11);
  int generic = 0;
  for (int n = 1; n <= 2; ++n)
    for (int t = 0; t < 40; ++t) {
      FanPoint p = make_point(shared_fan({Family::C, n}), F11, rand_units(rng, F11, 2 * n));
      ExtendedPoint e = extended_from_point(c_point_embed(p));
      Rational c = involution_constant(F11, e.b);
      UPoly poly = chain_from_point(e).component_polys[0];
      BigInt got = involutive_fiber_profile(p);
      CHECK(got == brute_involutive(F11, poly, n, c));
      generic += got == (BigInt(1) << n) * factorial(n);
    }
  CHECK(generic > 0);
  CHECK_THROWS_AS(involutive_fiber_profile(pt(Family::C, 1, F7, {1, 0})), std::domain_error);
}

TEST_CASE("involutive chains") {
  Field F7 = Field::prime(BigInt(7));
  auto ic = involutive_chain(pt(Family::C, 2, F7, {1, 3, 1, 1}));
  CHECK(ic.base.total_degree == 4);
  CHECK(ic.parity.has_value());
  auto bc = involutive_chain(pt(Family::Bcan, 2, F7, {1, 3, 1, 1}));
  CHECK(bc.base.total_degree == 5);
  CHECK_FALSE(bc.parity.has_value());
  for (auto &poly : ic.base.component_polys) {
    UPoly r = upoly_reverse(poly);
    Rational s = F7.div(poly.back(), poly.front());
    for (auto &x : r)
      x = F7.mul(x, s);
    CHECK(monic(F7, r) == monic(F7, poly));
  }
}

TEST_CASE("parity") {
  Field F7 = Field::prime(BigInt(7));
  UPoly pal = up(F7, {1, 3, 1});
  CHECK(parity_component(F7, pal) == '+');
  UPoly sq = upoly_mul(F7, from_roots(F7, {1, 1, 6, 6}), pal);
  CHECK(parity_component(F7, sq) == '+');
  UPoly odd = upoly_mul(F7, from_roots(F7, {1, 6}), pal);
  CHECK(parity_component(F7, odd) == '-');
  std::mt19937 rng(13);
  for (int t = 0; t < 40; ++t) {
    UPoly base{Rational(1)};
    std::vector<Rational> roots;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 3); ++k) {
      Rational r(1 + static_cast<long>(rng() % 6));
      roots.push_back(r);
      roots.push_back(F7.inv(r));
    }
    UPoly p = from_roots(F7, roots);
    unsigned m1 = upoly_root_multiplicity(F7, p, Rational(1));
    unsigned m6 = upoly_root_multiplicity(F7, p, Rational(6));
    char want = (m1 % 2 == 0 && m6 % 2 == 0) ? '+' : '-';
    CHECK(parity_component(F7, p) == want);
  }
  CHECK_THROWS_AS(parity_component(Field::prime(BigInt(2)), up(Field::prime(BigInt(2)), {1, 0, 1})), std::domain_error);
  CHECK_THROWS_AS(parity_component(F7, up(F7, {1, 2, 3})), std::invalid_argument);
}

}
