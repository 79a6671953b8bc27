#pragma once

#include "corb/field.hpp"
#include "corb/root_fans.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <optional>
#include <vector>

namespace corb {

using FanPtr = std::shared_ptr<const StackyFan>;

struct FanPoint {
  FanPtr fan;
  Field field;
  std::vector<Rational> coords; // one per ray, in ray order
};

struct GroupElement {
  std::vector<Rational> units;
};

// A degree-n point with free boundary coefficients: a_0..a_n and b_1..b_{n-1},
// acted on by (kappa_0..kappa_n) with a_i -> kappa_i a_i and
// b_i -> kappa_i^2 / (kappa_{i-1} kappa_{i+1}) b_i.
struct ExtendedPoint {
  Field field;
  std::vector<Rational> a;
  std::vector<Rational> b;
  size_t degree() const { return a.empty() ? 0 : a.size() - 1; }
};

bool is_nondegenerate(const StackyFan &fan, const std::vector<Rational> &coords);
// normalizes coordinates into the field and rejects degenerate tuples
FanPoint make_point(FanPtr fan, const Field &field, std::vector<Rational> coords);

FanPoint act(const GroupElement &g, const FanPoint &p);
bool orbit_equal(const FanPoint &p, const FanPoint &q);
// some g with act(g, p) = q
std::optional<GroupElement> orbit_witness(const FanPoint &p, const FanPoint &q);

FanPoint canonical_form(const FanPoint &p);
FanPoint canonical_form_scan(const FanPoint &p);
FanPoint canonical_form_lattice(const FanPoint &p);

// character lattice quotient Z^rays / (image of beta^T + nonzero coordinate axes);
// throws when the stabilizer is not finite
FinDiagGroupDesc stabilizer(const FanPoint &p);
// the same group read off the weight matrix (split torus only)
FinDiagGroupDesc stabilizer_via_weights(const FanPoint &p);

BigInt count_coarse_points(const StackyFan &fan, const BigInt &q);

struct OrbitRecord {
  FanPoint representative;
  BigInt stabilizer_order;
  BigInt orbit_size;
};
std::vector<OrbitRecord> enumerate_orbits(FanPtr fan, const BigInt &p);

BigInt primitive_root(const BigInt &p);
BigInt discrete_log(const BigInt &x, const BigInt &p); // base primitive_root(p)

bool is_nondegenerate(const ExtendedPoint &e);
FanPtr shared_fan(const FanFamily &fam); // cached build_fan
FanPtr upsilon_a_fan(int rank);
// normalizes a_0 = a_n = 1 with kappa_0, kappa_n; lands on Upsilon(A_{n-1})
FanPoint standardize(const ExtendedPoint &e);
bool orbit_equal(const ExtendedPoint &e, const ExtendedPoint &f);
bool orbit_equal(const ExtendedPoint &e, const FanPoint &p);

nlohmann::ordered_json point_to_json(const FanPoint &p);
nlohmann::ordered_json point_to_json(const ExtendedPoint &e);

} // namespace corb
