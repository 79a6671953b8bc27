#pragma once

#include "corb/orbit_points.hpp"
#include "corb/symbolic.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace corb {

// Coordinates are the first n-1 entries of a zero-sum vector in Z^n, i.e. the
// basis u_1-u_n, ..., u_{n-1}-u_n of the root lattice.
struct LatticePolytope {
  size_t ambient_dim = 0;
  std::vector<std::vector<BigInt>> vertices; // extreme points, sorted
  bool operator==(const LatticePolytope &o) const = default;
};

// extreme points of the hull of pts, deduplicated and sorted
LatticePolytope convex_hull(size_t dim, std::vector<std::vector<BigInt>> pts);
LatticePolytope permutohedron(int n);
LatticePolytope delta_j(int n, int j);
// l_{i,k} = conv{0, u_i - u_k}, 1-based
LatticePolytope segment(int n, int i, int k);
LatticePolytope minkowski_sum(const LatticePolytope &P, const LatticePolytope &Q);
LatticePolytope translate(const LatticePolytope &P, const std::vector<BigInt> &v);
// zero-sum vector in Z^n to root coordinates
std::vector<BigInt> root_coords(const std::vector<BigInt> &v);

using Subset = std::vector<int>; // sorted, 1-based
struct Relation {
  std::vector<Subset> lhs, rhs;
};
std::vector<Relation> relations_generator(int n, int l_max);
MultiPoly subset_monomial(int n, const Subset &J);

// permutation as a 1-based sequence sigma(1..n)
using Perm = std::vector<int>;
std::vector<Perm> all_permutations(int n);
std::string perm_label(const Perm &s);

// (sum_{|I|=j} x_I) / x_{sigma(1..j)} in t_i = x_{sigma(i+1)}/x_{sigma(i)}
MultiPoly chart_section(int n, const Perm &sigma, int j);

enum class Variant { Standard, NegativeControl };

struct VerifyReport {
  bool ok = true;
  std::vector<std::pair<std::string, bool>> cases;
};

VerifyReport verify_cd_disjoint(int n, Variant v = Variant::Standard);
VerifyReport verify_divisor_relation(int n, Variant v = Variant::Standard);
VerifyReport verify_section_hyperplane(int n, Variant v = Variant::Standard);
VerifyReport verify_a_data_cocycle(int n, Variant v = Variant::Standard);
VerifyReport verify_minkowski(int n, Variant v = Variant::Standard);

// min over |I| = k of |I cap J|
int divisor_order(int n, const Subset &J, int k);

struct SigmaPoint {
  Field field;
  int n = 0;
  std::map<Subset, Rational> w; // every nonempty proper subset
};

SigmaPoint make_sigma_point(const Field &f, int n, const std::map<Subset, Rational> &w);
bool is_nondegenerate(const SigmaPoint &sp);
ExtendedPoint sigma_forget(const SigmaPoint &sp);
std::vector<Subset> proper_subsets(int n); // by (size, lex)

nlohmann::ordered_json polytope_to_json(const LatticePolytope &P);
nlohmann::ordered_json report_to_json(const std::string &name, int n, const VerifyReport &r);

} // namespace corb
