#include "corb/root_fans.hpp"
#include "corb/parallel.hpp"
#include "corb/rational_lp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace corb {

Family parse_family(const std::string &s) {
  if (s == "A")
    return Family::A;
  if (s == "B")
    return Family::B;
  if (s == "Bcan")
    return Family::Bcan;
  if (s == "C")
    return Family::C;
  if (s == "Cminus")
    return Family::Cminus;
  if (s == "SigmaA")
    return Family::SigmaA;
  throw std::invalid_argument("unknown family '" + s + "' (A|B|Bcan|C|Cminus|SigmaA)");
}

std::string family_name(Family f) {
  switch (f) {
  case Family::A:
    return "A";
  case Family::B:
    return "B";
  case Family::Bcan:
    return "Bcan";
  case Family::C:
    return "C";
  case Family::Cminus:
    return "Cminus";
  case Family::SigmaA:
    return "SigmaA";
  }
  return "?";
}

int root_label(const FanFamily &fam, size_t position) {
  int k = static_cast<int>(position) + 1;
  switch (fam.tag) {
  case Family::A:
    return k;
  case Family::B:
  case Family::Bcan:
    return fam.n + 1 - k;
  case Family::C:
  case Family::Cminus:
    return fam.n - k;
  case Family::SigmaA:
    break;
  }
  throw std::invalid_argument("root labels are defined for Upsilon families only");
}

IntMatrix cartan_matrix(Family family, int n) {
  if (n < 1)
    throw std::invalid_argument("Cartan matrix needs n >= 1");
  IntMatrix C(n, n);
  for (int i = 0; i < n; ++i) {
    C(i, i) = 2;
    if (i + 1 < n)
      C(i, i + 1) = C(i + 1, i) = -1;
  }
  switch (family) {
  case Family::A:
    return C;
  case Family::C:
    if (n >= 2)
      C(n - 1, n - 2) = -2;
    return C;
  case Family::B:
    return cartan_matrix(Family::C, n).transpose();
  default:
    throw std::invalid_argument("Cartan matrices are provided for types A, B, C");
  }
}

IntMatrix upsilon_beta(const FanFamily &fam) {
  const int n = fam.n;
  auto block = [](const IntMatrix &C, const IntMatrix &D) { return (-C).hconcat(D); };
  switch (fam.tag) {
  case Family::A:
  case Family::B:
  case Family::C:
    return block(cartan_matrix(fam.tag, n), IntMatrix::identity(n));
  case Family::Bcan: {
    IntMatrix C = cartan_matrix(Family::B, n);
    for (int i = 0; i < n; ++i)
      C(i, n - 1) /= 2;
    return block(C, IntMatrix::identity(n));
  }
  case Family::Cminus: {
    if (n < 2)
      throw std::invalid_argument("Cminus needs n >= 2");
    IntMatrix D = IntMatrix::identity(n - 1);
    D(n - 2, n - 2) = 2;
    return block(cartan_matrix(Family::C, n - 1), D);
  }
  case Family::SigmaA:
    break;
  }
  throw std::invalid_argument("SigmaA has no Upsilon block matrix");
}

StackyFan make_fan(IntMatrix beta, std::vector<std::string> ray_labels,
                   std::vector<std::vector<size_t>> max_cones, std::vector<std::string> cone_labels) {
  StackyFan f;
  f.rank = beta.rows();
  for (size_t j = 0; j < beta.cols(); ++j)
    f.rays.push_back(beta.column(j));
  if (ray_labels.empty())
    for (size_t j = 0; j < beta.cols(); ++j)
      ray_labels.push_back("r" + std::to_string(j));
  if (ray_labels.size() != beta.cols())
    throw std::invalid_argument("one label per ray required");
  for (auto &c : max_cones) {
    std::sort(c.begin(), c.end());
    for (size_t r : c)
      if (r >= beta.cols())
        throw std::invalid_argument("cone refers to a missing ray");
  }
  if (cone_labels.empty())
    for (size_t i = 0; i < max_cones.size(); ++i)
      cone_labels.push_back("c" + std::to_string(i));
  f.beta = std::move(beta);
  f.ray_labels = std::move(ray_labels);
  f.max_cones = std::move(max_cones);
  f.cone_labels = std::move(cone_labels);
  return f;
}

StackyFan build_upsilon(const FanFamily &fam) {
  if (fam.tag == Family::SigmaA)
    throw std::invalid_argument("use build_sigma_A for the Losev-Manin fan");
  if (fam.n < 1)
    throw std::invalid_argument("family rank must be >= 1");
  IntMatrix beta = upsilon_beta(fam);
  const size_t r = beta.rows();
  if (r > 20)
    throw std::invalid_argument("rank too large");
  std::vector<std::string> labels;
  for (size_t k = 0; k < r; ++k)
    labels.push_back("rho_" + std::to_string(root_label(fam, k)));
  for (size_t k = 0; k < r; ++k)
    labels.push_back("tau_" + std::to_string(root_label(fam, k)));
  std::vector<std::vector<size_t>> cones;
  std::vector<std::string> cone_labels;
  for (size_t mask = 0; mask < (size_t(1) << r); ++mask) {
    std::vector<size_t> c;
    std::string lab;
    for (size_t k = 0; k < r; ++k) {
      bool in_I = (mask >> k) & 1;
      c.push_back(in_I ? r + k : k);
    }
    std::vector<int> I;
    for (size_t k = 0; k < r; ++k)
      if ((mask >> k) & 1)
        I.push_back(root_label(fam, k));
    std::sort(I.begin(), I.end());
    for (int x : I)
      lab += (lab.empty() ? "" : ",") + std::to_string(x);
    cones.push_back(c);
    cone_labels.push_back("sigma_{" + lab + "}");
  }
  StackyFan f = make_fan(std::move(beta), std::move(labels), std::move(cones), std::move(cone_labels));
  f.family = fam;
  return f;
}

StackyFan build_sigma_A(int n) {
  if (n < 2)
    throw std::invalid_argument("Sigma(A_{n-1}) needs n >= 2");
  if (n > 10)
    throw std::invalid_argument("n too large for Sigma(A_{n-1})");
  const size_t d = n - 1;
  std::vector<uint32_t> subsets;
  for (uint32_t m = 1; m + 1 < (1u << n); ++m)
    subsets.push_back(m);
  auto elems = [n](uint32_t m) {
    std::vector<int> e;
    for (int i = 0; i < n; ++i)
      if ((m >> i) & 1)
        e.push_back(i + 1);
    return e;
  };
  std::sort(subsets.begin(), subsets.end(), [&](uint32_t a, uint32_t b) {
    auto ea = elems(a), eb = elems(b);
    if (ea.size() != eb.size())
      return ea.size() < eb.size();
    return ea < eb;
  });
  std::map<uint32_t, size_t> index;
  IntMatrix beta(d, subsets.size());
  std::vector<std::string> labels;
  for (size_t j = 0; j < subsets.size(); ++j) {
    index[subsets[j]] = j;
    std::string lab;
    for (int i : elems(subsets[j])) {
      lab += (lab.empty() ? "" : ",") + std::to_string(i);
      if (i < n)
        beta(i - 1, j) += 1;
      else
        for (size_t k = 0; k < d; ++k)
          beta(k, j) -= 1;
    }
    labels.push_back("{" + lab + "}");
  }
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1);
  std::vector<std::vector<size_t>> cones;
  std::vector<std::string> cone_labels;
  do {
    std::vector<size_t> c;
    uint32_t acc = 0;
    for (int k = n - 1; k >= 1; --k) {
      acc |= 1u << (sigma[k] - 1);
      c.push_back(index.at(acc));
    }
    std::string lab;
    for (int s : sigma)
      lab += std::to_string(s);
    cones.push_back(c);
    cone_labels.push_back("W_" + lab);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  StackyFan f = make_fan(std::move(beta), std::move(labels), std::move(cones), std::move(cone_labels));
  f.family = FanFamily{Family::SigmaA, n};
  return f;
}

StackyFan build_fan(const FanFamily &fam) {
  if (fam.tag == Family::SigmaA)
    return build_sigma_A(fam.n);
  return build_upsilon(fam);
}

namespace {

// Membership test for a full-dimensional simplicial cone: x = adj * v / det
struct ConeSolver {
  IntMatrix adj;
  int det_sign = 0;

  explicit ConeSolver(const IntMatrix &B) {
    const size_t n = B.rows();
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(2 * n));
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j)
        M[i][j] = Rational(B(i, j));
      M[i][n + i] = 1;
    }
    for (size_t c = 0; c < n; ++c) {
      size_t p = c;
      while (p < n && M[p][c] == 0)
        ++p;
      if (p == n)
        return; // singular
      std::swap(M[p], M[c]);
      Rational piv = M[c][c];
      for (auto &x : M[c])
        x /= piv;
      for (size_t i = 0; i < n; ++i) {
        if (i == c || M[i][c] == 0)
          continue;
        Rational f = M[i][c];
        for (size_t j = 0; j < 2 * n; ++j)
          M[i][j] -= f * M[c][j];
      }
    }
    BigInt det = determinant(B);
    det_sign = det > 0 ? 1 : -1;
    adj = IntMatrix(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Rational v = M[i][n + j] * Rational(det);
        adj(i, j) = numerator(v);
      }
  }

  bool valid() const { return det_sign != 0; }

  bool contains(const std::vector<BigInt> &v) const {
    const size_t n = adj.rows();
    for (size_t i = 0; i < n; ++i) {
      BigInt s = 0;
      for (size_t j = 0; j < n; ++j)
        s += adj(i, j) * v[j];
      if (s * det_sign < 0)
        return false;
    }
    return true;
  }
};

IntMatrix cone_matrix(const StackyFan &f, const std::vector<size_t> &cone) {
  return f.beta.select_columns(cone);
}

// LP membership for arbitrary cones
bool cone_contains_lp(const StackyFan &f, const std::vector<size_t> &cone,
                      const std::vector<BigInt> &v) {
  std::vector<std::vector<Rational>> A(f.rank, std::vector<Rational>(cone.size()));
  std::vector<Rational> b(f.rank);
  for (size_t i = 0; i < f.rank; ++i) {
    for (size_t j = 0; j < cone.size(); ++j)
      A[i][j] = Rational(f.rays[cone[j]][i]);
    b[i] = Rational(v[i]);
  }
  return lp_feasible(A, b);
}

struct Membership {
  const StackyFan &f;
  std::vector<std::optional<ConeSolver>> solvers;

  explicit Membership(const StackyFan &fan) : f(fan) {
    solvers.resize(f.max_cones.size());
    parallel_for(f.max_cones.size(), [&](size_t i) {
      if (f.max_cones[i].size() == f.rank) {
        ConeSolver s(cone_matrix(f, f.max_cones[i]));
        if (s.valid())
          solvers[i] = std::move(s);
      }
    });
  }

  bool in_cone(size_t i, const std::vector<BigInt> &v) const {
    if (solvers[i])
      return solvers[i]->contains(v);
    return cone_contains_lp(f, f.max_cones[i], v);
  }

  // index of a max cone containing every vector, or -1
  long containing_all(const std::vector<std::vector<BigInt>> &vs) const {
    for (size_t i = 0; i < f.max_cones.size(); ++i) {
      bool ok = true;
      for (auto &v : vs)
        if (!in_cone(i, v)) {
          ok = false;
          break;
        }
      if (ok)
        return static_cast<long>(i);
    }
    return -1;
  }
};

} // namespace

FanReport check_fan(const StackyFan &f) {
  FanReport rep;
  rep.simplicial = true;
  rep.pure = true;
  std::vector<char> indep(f.max_cones.size(), 1);
  parallel_for(f.max_cones.size(), [&](size_t i) {
    indep[i] = rank(cone_matrix(f, f.max_cones[i])) == f.max_cones[i].size();
  });
  for (size_t i = 0; i < f.max_cones.size(); ++i) {
    if (!indep[i])
      rep.simplicial = false;
    if (f.max_cones[i].size() != f.rank)
      rep.pure = false;
  }
  std::map<std::vector<size_t>, int> facets;
  for (auto &c : f.max_cones)
    for (size_t k = 0; k < c.size(); ++k) {
      std::vector<size_t> facet;
      for (size_t l = 0; l < c.size(); ++l)
        if (l != k)
          facet.push_back(c[l]);
      ++facets[facet];
    }
  rep.wall_condition = !f.max_cones.empty();
  for (auto &[facet, count] : facets)
    if (count != 2)
      rep.wall_condition = false;

  Membership mem(f);
  std::mt19937_64 rng(0x5eedULL);
  const size_t samples = 1000;
  std::vector<std::vector<BigInt>> pts(samples, std::vector<BigInt>(f.rank));
  for (auto &p : pts)
    for (auto &x : p)
      x = static_cast<long long>(rng() % 2001) - 1000;
  std::vector<char> hit(samples, 0);
  parallel_for(samples, [&](size_t s) { hit[s] = mem.containing_all({pts[s]}) >= 0; });
  rep.sampled_complete = std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
  return rep;
}

bool check_proper_intersections(const StackyFan &f) {
  const size_t m = f.max_cones.size();
  std::vector<std::pair<size_t, size_t>> pairs;
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b)
      pairs.emplace_back(a, b);
  std::vector<char> ok(pairs.size(), 1);
  parallel_for(pairs.size(), [&](size_t idx) {
    auto &ca = f.max_cones[pairs[idx].first];
    auto &cb = f.max_cones[pairs[idx].second];
    // variables: lambda (ca), mu (cb), slack; A*lambda - B*mu = 0, sum + slack = 1
    const size_t na = ca.size(), nb = cb.size(), nv = na + nb + 1;
    std::vector<std::vector<Rational>> A(f.rank + 1, std::vector<Rational>(nv));
    std::vector<Rational> rhs(f.rank + 1, 0), obj(nv, 0);
    for (size_t i = 0; i < f.rank; ++i) {
      for (size_t j = 0; j < na; ++j)
        A[i][j] = Rational(f.rays[ca[j]][i]);
      for (size_t j = 0; j < nb; ++j)
        A[i][na + j] = -Rational(f.rays[cb[j]][i]);
    }
    for (size_t j = 0; j < nv; ++j)
      A[f.rank][j] = 1;
    rhs[f.rank] = 1;
    for (size_t j = 0; j < na; ++j)
      if (!std::binary_search(cb.begin(), cb.end(), ca[j]))
        obj[j] = 1;
    for (size_t j = 0; j < nb; ++j)
      if (!std::binary_search(ca.begin(), ca.end(), cb[j]))
        obj[na + j] = 1;
    LpResult r = lp_maximize(A, rhs, obj);
    ok[idx] = r.status == LpResult::Status::Optimal && r.value == 0;
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

FinDiagGroupDesc dg_group(const StackyFan &f) {
  if (rank(f.beta) != f.rank)
    throw std::domain_error("rays do not span the lattice rationally");
  return cokernel(f.beta.transpose());
}

IntMatrix weight_matrix(const StackyFan &f) {
  FinDiagGroupDesc g = dg_group(f);
  if (!g.torsion.empty())
    throw std::domain_error("DG(beta) has torsion; weights exist only for a split torus");
  return kernel_basis(f.beta).transpose();
}

bool fan_morphism_check(const StackyFan &src, const StackyFan &dst, const IntMatrix &L) {
  if (L.rows() != dst.rank || L.cols() != src.rank)
    throw std::invalid_argument("lattice map has the wrong shape");
  Membership mem(dst);
  std::vector<char> ok(src.max_cones.size(), 0);
  parallel_for(src.max_cones.size(), [&](size_t i) {
    std::vector<std::vector<BigInt>> images;
    for (size_t r : src.max_cones[i])
      images.push_back(L * src.rays[r]);
    ok[i] = mem.containing_all(images) >= 0;
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

IntMatrix c_to_a_lattice_map(int n) {
  if (n < 1)
    throw std::invalid_argument("n must be >= 1");
  IntMatrix L(2 * n - 1, n);
  for (int j = 0; j < n; ++j) {
    int k = n - 1 - j;
    if (k == 0) {
      L(n - 1, j) = 1;
    } else {
      L(n + k - 1, j) = 1;
      L(n - k - 1, j) = 1;
    }
  }
  return L;
}

StackyFan canonical_stack(const StackyFan &f) {
  IntMatrix beta = f.beta;
  bool changed = false;
  for (size_t j = 0; j < beta.cols(); ++j) {
    BigInt g = 0;
    for (size_t i = 0; i < beta.rows(); ++i)
      g = gcd(g, beta(i, j));
    if (g == 0)
      throw std::domain_error("zero ray vector");
    if (g != 1) {
      changed = true;
      for (size_t i = 0; i < beta.rows(); ++i)
        beta(i, j) /= g;
    }
  }
  StackyFan c = make_fan(std::move(beta), f.ray_labels, f.max_cones, f.cone_labels);
  c.family = f.family;
  if (changed) {
    if (f.family && f.family->tag == Family::B)
      c.family = FanFamily{Family::Bcan, f.family->n};
    else
      c.family.reset();
  }
  return c;
}

std::vector<std::vector<size_t>> all_cones(const StackyFan &f) {
  std::set<std::vector<size_t>> faces;
  for (auto &c : f.max_cones) {
    const size_t k = c.size();
    for (size_t mask = 0; mask < (size_t(1) << k); ++mask) {
      std::vector<size_t> face;
      for (size_t i = 0; i < k; ++i)
        if ((mask >> i) & 1)
          face.push_back(c[i]);
      faces.insert(face);
    }
  }
  return {faces.begin(), faces.end()};
}

bool support_in_cone(const StackyFan &f, const std::vector<size_t> &rays) {
  for (auto &c : f.max_cones)
    if (std::includes(c.begin(), c.end(), rays.begin(), rays.end()))
      return true;
  return false;
}

nlohmann::ordered_json fan_to_json(const StackyFan &f) {
  nlohmann::ordered_json j;
  j["rank"] = f.rank;
  j["ray_labels"] = f.ray_labels;
  auto rays = nlohmann::ordered_json::array();
  for (auto &r : f.rays) {
    auto v = nlohmann::ordered_json::array();
    for (auto &x : r)
      v.push_back(big_to_json(x));
    rays.push_back(v);
  }
  j["rays"] = rays;
  j["max_cones"] = f.max_cones;
  j["cone_labels"] = f.cone_labels;
  if (f.family)
    j["family"] = {{"tag", family_name(f.family->tag)}, {"n", f.family->n}};
  return j;
}

StackyFan fan_from_json(const nlohmann::ordered_json &j) {
  size_t rank = j.at("rank").get<size_t>();
  std::vector<std::vector<BigInt>> cols;
  for (auto &r : j.at("rays")) {
    std::vector<BigInt> v;
    for (auto &x : r)
      v.push_back(x.is_string() ? BigInt(x.get<std::string>()) : BigInt(x.get<long long>()));
    if (v.size() != rank)
      throw std::invalid_argument("ray length does not match rank");
    cols.push_back(v);
  }
  IntMatrix beta = IntMatrix::from_columns(cols, rank);
  std::vector<std::string> labels;
  if (j.contains("ray_labels"))
    labels = j["ray_labels"].get<std::vector<std::string>>();
  auto cones = j.at("max_cones").get<std::vector<std::vector<size_t>>>();
  std::vector<std::string> cone_labels;
  if (j.contains("cone_labels"))
    cone_labels = j["cone_labels"].get<std::vector<std::string>>();
  StackyFan f = make_fan(std::move(beta), std::move(labels), std::move(cones), std::move(cone_labels));
  if (j.contains("family")) {
    FanFamily fam{parse_family(j["family"].at("tag").get<std::string>()),
                  j["family"].at("n").get<int>()};
    if (build_fan(fam).beta != f.beta)
      throw std::invalid_argument("fan rays do not match the declared family");
    f.family = fam;
  }
  return f;
}

} // namespace corb
