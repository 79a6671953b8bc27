#include "corb/orbit_points.hpp"
#include "corb/root_fans.hpp"

#include <doctest.h>

#include <random>

using namespace corb;

namespace {

// 2(a_i, a_j)/(a_j, a_j) from simple roots in Z^n (doubled so type B stays integral)
IntMatrix cartan_from_roots(Family fam, int n) {
  std::vector<std::vector<long>> roots(n, std::vector<long>(n, 0));
  for (int i = 0; i + 1 < n; ++i) {
    roots[i][i] = 2;
    roots[i][i + 1] = -2;
  }
  roots[n - 1][n - 1] = fam == Family::C ? 4 : 2;
  if (fam == Family::A && n >= 1) {
    // A_n lives in Z^{n+1}; embed the last root as e_n - e_{n+1}
    for (auto &r : roots)
      r.push_back(0);
    roots[n - 1][n] = -2;
  }
  auto dot = [](const std::vector<long> &a, const std::vector<long> &b) {
    long s = 0;
    for (size_t k = 0; k < a.size(); ++k)
      s += a[k] * b[k];
    return s;
  };
  IntMatrix C(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      C(i, j) = 2 * dot(roots[i], roots[j]) / dot(roots[j], roots[j]);
  return C;
}

} // namespace

TEST_SUITE("root_fans") {

TEST_CASE("Cartan matrices match root inner products") {
  for (Family f : {Family::A, Family::B, Family::C})
    for (int n = 1; n <= 7; ++n)
      CHECK(cartan_matrix(f, n) == cartan_from_roots(f, n));
  for (int n = 1; n <= 7; ++n)
    CHECK(cartan_matrix(Family::B, n) == cartan_matrix(Family::C, n).transpose());
}

TEST_CASE("block matrices") {
  CHECK(upsilon_beta({Family::A, 1}) == IntMatrix{{-2, 1}});
  CHECK(upsilon_beta({Family::A, 2}) == IntMatrix{{-2, 1, 1, 0}, {1, -2, 0, 1}});
  CHECK(upsilon_beta({Family::C, 2}) == IntMatrix{{-2, 1, 1, 0}, {2, -2, 0, 1}});
  CHECK(upsilon_beta({Family::Bcan, 2}) == IntMatrix{{-2, 1, 1, 0}, {1, -1, 0, 1}});
  CHECK(upsilon_beta({Family::Cminus, 2}) == IntMatrix{{-2, 2}});
  CHECK_THROWS_AS(upsilon_beta({Family::Cminus, 1}), std::invalid_argument);
  CHECK_THROWS_AS(build_fan({Family::A, 0}), std::invalid_argument);
}

TEST_CASE("labels follow root indices") {
  StackyFan c = build_fan({Family::C, 3});
  CHECK(c.ray_labels == std::vector<std::string>{"rho_2", "rho_1", "rho_0", "tau_2", "tau_1", "tau_0"});
  StackyFan b = build_fan({Family::B, 2});
  CHECK(b.ray_labels == std::vector<std::string>{"rho_2", "rho_1", "tau_2", "tau_1"});
  CHECK(build_fan({Family::A, 2}).cone_labels.front() == "sigma_{}");
}

TEST_CASE("Upsilon fans are complete simplicial fans") {
  for (Family f : {Family::A, Family::B, Family::Bcan, Family::C})
    for (int n = 1; n <= 4; ++n) {
      StackyFan fan = build_fan({f, n});
      CAPTURE(family_name(f));
      CAPTURE(n);
      CHECK(fan.max_cones.size() == (size_t(1) << n));
      CHECK(check_fan(fan).all());
      CHECK(check_proper_intersections(fan));
    }
  for (int n = 2; n <= 4; ++n)
    CHECK(check_fan(build_fan({Family::Cminus, n})).all());
}

TEST_CASE("cone multiplicity is the stabilizer of the fixed point") {
  for (Family f : {Family::A, Family::C, Family::Bcan})
    for (int n = 1; n <= 4; ++n) {
      FanPtr fan = shared_fan({f, n});
      Field F = Field::prime(BigInt(7));
      for (auto &c : fan->max_cones) {
        std::vector<Rational> coords(fan->num_rays(), Rational(1));
        for (size_t r : c)
          coords[r] = 0;
        BigInt det = abs(determinant(fan->beta.select_columns(c)));
        CHECK(stabilizer(make_point(fan, F, coords)).order() == det);
      }
    }
}

TEST_CASE("Losev-Manin fan") {
  for (int n = 2; n <= 5; ++n) {
    StackyFan f = build_sigma_A(n);
    CHECK(f.num_rays() == (size_t(1) << n) - 2);
    CHECK(f.max_cones.size() == static_cast<size_t>(factorial(n)));
    CHECK(check_fan(f).all());
    CHECK(dg_group(f).torsion.empty());
  }
  CHECK_THROWS_AS(build_sigma_A(1), std::invalid_argument);
}

TEST_CASE("incomplete and overlapping fans are rejected") {
  IntMatrix beta{{1, 0, -1}, {0, 1, -1}};
  StackyFan partial = make_fan(beta, {}, {{0, 1}, {1, 2}});
  CHECK_FALSE(check_fan(partial).sampled_complete);
  StackyFan full = make_fan(beta, {}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(check_fan(full).all());
  IntMatrix beta4{{1, 0, -1, 1}, {0, 1, -1, 1}};
  StackyFan overlap = make_fan(beta4, {}, {{0, 1}, {1, 2}, {0, 2}, {1, 3}});
  CHECK_FALSE(check_proper_intersections(overlap));
}

TEST_CASE("DG groups and weights") {
  for (int n = 1; n <= 8; ++n) {
    auto g = dg_group(build_fan({Family::A, n}));
    CHECK(g.free_rank == static_cast<size_t>(n));
    CHECK(g.torsion.empty());
  }
  CHECK(weight_matrix(build_fan({Family::A, 1})) == IntMatrix{{1, 2}});
  CHECK(weight_matrix(build_fan({Family::A, 2})) == IntMatrix{{1, 0, 2, -1}, {0, 1, -1, 2}});
  CHECK(weight_matrix(build_fan({Family::C, 2})) == IntMatrix{{1, 0, 2, -2}, {0, 1, -1, 2}});
  CHECK(weight_matrix(build_fan({Family::B, 2})) == IntMatrix{{1, 0, 2, -1}, {0, 1, -2, 2}});
  CHECK(weight_matrix(build_fan({Family::Bcan, 2})) == IntMatrix{{1, 0, 2, -1}, {0, 1, -1, 1}});
  auto cm = dg_group(build_fan({Family::Cminus, 2}));
  CHECK(cm.free_rank == 1);
  CHECK(cm.torsion == std::vector<BigInt>{2});
  CHECK_THROWS_AS(weight_matrix(build_fan({Family::Cminus, 2})), std::domain_error);
  for (Family f : {Family::A, Family::B, Family::C})
    for (int n = 1; n <= 5; ++n) {
      StackyFan fan = build_fan({f, n});
      IntMatrix W = weight_matrix(fan);
      CHECK((fan.beta * W.transpose()).is_zero());
    }
}

TEST_CASE("canonical stack of type B") {
  for (int n = 1; n <= 5; ++n) {
    StackyFan c = canonical_stack(build_fan({Family::B, n}));
    CHECK(c.beta == upsilon_beta({Family::Bcan, n}));
    if (n >= 2)
      CHECK(c.family == FanFamily{Family::Bcan, n});
  }
  StackyFan a = build_fan({Family::A, 3});
  CHECK(canonical_stack(a).beta == a.beta);
}

TEST_CASE("type C maps into type A") {
  for (int n = 1; n <= 4; ++n)
    CHECK(fan_morphism_check(build_fan({Family::C, n}), build_fan({Family::A, 2 * n - 1}),
                             c_to_a_lattice_map(n)));
  // swapping two columns breaks the map
  IntMatrix L = c_to_a_lattice_map(3);
  IntMatrix bad = L.select_columns({1, 0, 2});
  CHECK_FALSE(fan_morphism_check(build_fan({Family::C, 3}), build_fan({Family::A, 5}), bad));
}

TEST_CASE("json round trip") {
  for (Family f : {Family::A, Family::Bcan, Family::C}) {
    StackyFan fan = build_fan({f, 3});
    auto j = fan_to_json(fan);
    StackyFan back = fan_from_json(j);
    CHECK(back.beta == fan.beta);
    CHECK(back.max_cones == fan.max_cones);
    CHECK(back.ray_labels == fan.ray_labels);
    CHECK(fan_to_json(back) == j);
  }
}

}
