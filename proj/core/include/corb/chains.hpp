#pragma once

#include "corb/orbit_points.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace corb {

// Univariate polynomials are ascending coefficient vectors over a Field.
using UPoly = std::vector<Rational>;

UPoly upoly_trim(const Field &f, UPoly p);
int upoly_degree(const UPoly &p); // -1 for zero
Rational upoly_eval(const Field &f, const UPoly &p, const Rational &x);
UPoly upoly_mul(const Field &f, const UPoly &a, const UPoly &b);
UPoly upoly_derivative(const Field &f, const UPoly &p);
// quotient and remainder, b nonzero
std::pair<UPoly, UPoly> upoly_divmod(const Field &f, const UPoly &a, const UPoly &b);
UPoly upoly_gcd(const Field &f, UPoly a, UPoly b); // monic
bool upoly_is_squarefree(const Field &f, const UPoly &p);
// multiplicity of x as a root of p (p nonzero)
unsigned upoly_root_multiplicity(const Field &f, UPoly p, const Rational &x);
// all roots in F_q^* by exhaustive scan, ascending, with multiplicities
std::vector<std::pair<Rational, unsigned>> upoly_nonzero_roots(const Field &f, const UPoly &p);
UPoly upoly_reverse(const UPoly &p);

struct ChainModel {
  Field field;
  size_t total_degree = 0;
  std::vector<size_t> component_degrees;
  std::vector<UPoly> component_polys; // chart t = y_{N+1}/y_N on each component
};

struct InvolutiveChainModel {
  ChainModel base;
  bool palindromic = true;
  std::optional<char> parity; // '+' or '-', only with a self-mapped middle component of even degree
};

struct FiberProfile {
  BigInt rational_ordered_preimages;
  std::vector<std::vector<unsigned>> multiplicity_profile; // per component, descending
  std::vector<std::vector<std::pair<Rational, unsigned>>> roots;
  bool is_ramified = false;
};

// interior elimination monomial beta_r = prod_{s=1}^{r-1} b[s-1]^{r-s} over the given b's
Rational chain_beta(const Field &f, const std::vector<Rational> &interior_b, size_t r);

ExtendedPoint extended_from_point(const FanPoint &p); // Upsilon(A_{n-1}) with a_0 = a_n = 1
ChainModel chain_from_point(const ExtendedPoint &e);
ChainModel chain_from_point(const FanPoint &p);
// a_i := c_i, b_i := 1
ExtendedPoint point_from_polynomial(const Field &f, const UPoly &c);

FiberProfile fiber_profile(const ChainModel &c);
FiberProfile fiber_profile(const FanPoint &p);
FiberProfile fiber_profile(const ExtendedPoint &e);

FanPoint c_point_embed(const FanPoint &p);
FanPoint b_point_embed(const FanPoint &p);
FanPoint minus_embed(const FanPoint &p);
// group element of Upsilon(A_m) built from palindromic duplication of units
GroupElement duplicate_units(const GroupElement &g, bool odd_center);
// stabilizer of an Upsilon(A_m) point inside the palindromic subtorus
FinDiagGroupDesc palindromic_stabilizer(const FanPoint &a_point);

// p on Upsilon(C_n) (even total degree) or Upsilon(B_n)^can (odd)
InvolutiveChainModel involutive_chain(const FanPoint &p);
// c with the component symmetric under t -> c/t
Rational involution_constant(const Field &f, const std::vector<Rational> &interior_b);
BigInt involutive_fiber_profile(const FanPoint &p);
char parity_component(const Field &f, const UPoly &coeffs);

nlohmann::ordered_json chain_to_json(const ChainModel &c);
nlohmann::ordered_json chain_to_json(const InvolutiveChainModel &c);
nlohmann::ordered_json fiber_to_json(const Field &f, const FiberProfile &fp);

} // namespace corb
