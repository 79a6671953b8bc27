#pragma once

#include "corb/exact_linalg.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace corb {

enum class Family { A, B, Bcan, C, Cminus, SigmaA };

struct FanFamily {
  Family tag;
  int n;
  bool operator==(const FanFamily &o) const = default;
};

Family parse_family(const std::string &s);
std::string family_name(Family f);

// Ray positions of the Upsilon fans carry root indices: A runs 1..n, B and Bcan
// run n..1, C runs n-1..0, Cminus runs n-1..1.
int root_label(const FanFamily &fam, size_t position);

struct StackyFan {
  size_t rank = 0;
  std::vector<std::string> ray_labels;
  std::vector<std::vector<BigInt>> rays;
  std::vector<std::vector<size_t>> max_cones; // sorted ray indices
  std::vector<std::string> cone_labels;
  IntMatrix beta; // rank x #rays, columns are the rays
  std::optional<FanFamily> family;

  size_t num_rays() const { return rays.size(); }
};

struct FanReport {
  bool simplicial = false;
  bool pure = false;
  bool wall_condition = false;
  bool sampled_complete = false;
  bool all() const { return simplicial && pure && wall_condition && sampled_complete; }
};

IntMatrix cartan_matrix(Family family, int n);
IntMatrix upsilon_beta(const FanFamily &family);
StackyFan build_upsilon(const FanFamily &family);
StackyFan build_sigma_A(int n);
StackyFan build_fan(const FanFamily &family);
// assembles rays from the columns of beta
StackyFan make_fan(IntMatrix beta, std::vector<std::string> ray_labels,
                   std::vector<std::vector<size_t>> max_cones,
                   std::vector<std::string> cone_labels = {});

FanReport check_fan(const StackyFan &f);
// every pairwise intersection of max cones is the cone on their common rays
bool check_proper_intersections(const StackyFan &f);

FinDiagGroupDesc dg_group(const StackyFan &f);
IntMatrix weight_matrix(const StackyFan &f);

// L is dst.rank x src.rank
bool fan_morphism_check(const StackyFan &src, const StackyFan &dst, const IntMatrix &L);
// e'_k -> e_{n+k} + e_{n-k}, e'_0 -> e_n, from N(C_n) to N(A_{2n-1})
IntMatrix c_to_a_lattice_map(int n);

StackyFan canonical_stack(const StackyFan &f);

// all cones (faces of max cones), including the zero cone, sorted
std::vector<std::vector<size_t>> all_cones(const StackyFan &f);
// zero set of ray indices contained in some max cone
bool support_in_cone(const StackyFan &f, const std::vector<size_t> &rays);

nlohmann::ordered_json fan_to_json(const StackyFan &f);
StackyFan fan_from_json(const nlohmann::ordered_json &j);

} // namespace corb
