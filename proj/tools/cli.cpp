#include "cli.hpp"

#include "corb/chains.hpp"
#include "corb/lm_geometry.hpp"
#include "corb/orbit_points.hpp"
#include "corb/parallel.hpp"
#include "corb/root_fans.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace corb::cli {

namespace {

using json = nlohmann::ordered_json;

struct Opts {
  bool json = false;
  unsigned threads = 0;
  std::string fan_file, family, coords, other, field = "Q", poly, coeffs, method = "auto", out;
  std::string decomposition = "delta";
  int n = -1, j = -1;
  long long q = -1, p = -1;
};

struct Reply {
  int status = 0;
  json payload;
  std::string text;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

FanPtr load_fan(const Opts &o) {
  if (!o.fan_file.empty()) {
    std::ifstream in(o.fan_file);
    if (!in)
      throw UsageError("cannot read fan file '" + o.fan_file + "'");
    json j = json::parse(in);
    return std::make_shared<const StackyFan>(fan_from_json(j));
  }
  if (o.family.empty() || o.n < 0)
    throw UsageError("give --fan FILE or --family F --n N");
  return shared_fan(FanFamily{parse_family(o.family), o.n});
}

Field pick_field(const Opts &o) {
  if (o.q > 0)
    return Field::prime(BigInt(o.q));
  return Field::parse(o.field);
}

FanPoint load_point(const Opts &o, const std::string &coords) {
  if (coords.empty())
    throw UsageError("--coords is required");
  Field f = pick_field(o);
  return make_point(load_fan(o), f, f.parse_elements(coords));
}

std::string coords_text(const FanPoint &p) {
  std::string s;
  for (size_t i = 0; i < p.coords.size(); ++i)
    s += (i ? "," : "") + p.field.format(p.coords[i]);
  return s;
}

std::string poly_text(const Field &f, const UPoly &p) {
  std::string s;
  for (size_t i = 0; i < p.size(); ++i)
    s += (i ? "," : "") + f.format(p[i]);
  return s;
}

UPoly parse_upoly(const Field &f, const std::string &s) {
  if (s.empty())
    throw UsageError("--poly is required");
  if (s.find('x') == std::string::npos)
    return f.parse_elements(s);
  MultiPoly m = MultiPoly::parse(s, 1, f);
  UPoly out(m.total_degree() + 1, Rational(0));
  for (auto &[e, c] : m.terms())
    out[e[0]] = f.normalize(c);
  return out;
}

std::string polytope_text(const LatticePolytope &P) {
  std::ostringstream os;
  os << P.vertices.size() << " vertices in dimension " << P.ambient_dim << "\n";
  for (auto &v : P.vertices) {
    os << "(";
    for (size_t i = 0; i < v.size(); ++i)
      os << (i ? "," : "") << v[i];
    os << ")\n";
  }
  return os.str();
}

Reply report_reply(const std::string &name, int n, const VerifyReport &r) {
  Reply out;
  out.payload = report_to_json(name, n, r);
  out.status = r.ok ? 0 : 1;
  std::ostringstream os;
  os << name << " n=" << n << ": " << (r.ok ? "true" : "false") << " (" << r.cases.size() << " cases)";
  for (auto &[lab, ok] : r.cases)
    if (!ok)
      os << "\n  failed: " << lab;
  out.text = os.str();
  return out;
}

VerifyReport fan_map_report(int n) {
  VerifyReport r;
  StackyFan c = build_fan(FanFamily{Family::C, n});
  StackyFan a = build_fan(FanFamily{Family::A, 2 * n - 1});
  r.cases.emplace_back("C_" + std::to_string(n) + " -> A_" + std::to_string(2 * n - 1),
                       fan_morphism_check(c, a, c_to_a_lattice_map(n)));
  r.ok = r.cases.back().second;
  return r;
}

VerifyReport canonical_stack_report(int n) {
  VerifyReport r;
  StackyFan can = canonical_stack(build_fan(FanFamily{Family::B, n}));
  StackyFan ref = build_fan(FanFamily{Family::Bcan, n});
  for (size_t k = 0; k < ref.num_rays(); ++k)
    r.cases.emplace_back(ref.ray_labels[k], k < can.num_rays() && can.rays[k] == ref.rays[k]);
  r.cases.emplace_back("family tag", can.family && *can.family == *ref.family);
  r.cases.emplace_back("ray count", can.num_rays() == ref.num_rays());
  r.ok = std::all_of(r.cases.begin(), r.cases.end(), [](auto &c) { return c.second; });
  return r;
}

struct SuiteEntry {
  std::string name;
  int lo, hi;
  std::function<VerifyReport(int)> fn;
};

std::vector<SuiteEntry> suite() {
  return {
      {"cd-disjoint", 2, 7, [](int n) { return verify_cd_disjoint(n); }},
      {"hyperplane", 2, 5, [](int n) { return verify_section_hyperplane(n); }},
      {"minkowski", 2, 5, [](int n) { return verify_minkowski(n); }},
      {"divisor", 2, 10, [](int n) { return verify_divisor_relation(n); }},
      {"cocycle", 3, 8, [](int n) { return verify_a_data_cocycle(n); }},
      {"fan-map", 1, 4, fan_map_report},
      {"canonical-stack", 2, 8, canonical_stack_report},
  };
}

Reply verify_all(int N) {
  if (N < 1)
    throw UsageError("--n must be >= 1");
  Reply out;
  json checks = json::array();
  bool ok = true;
  std::ostringstream os;
  for (auto &e : suite())
    for (int n = e.lo; n <= std::min(N, e.hi); ++n) {
      VerifyReport r = e.fn(n);
      json failed = json::array();
      for (auto &[lab, good] : r.cases)
        if (!good)
          failed.push_back(lab);
      checks.push_back({{"check", e.name}, {"n", n}, {"ok", r.ok}, {"cases", r.cases.size()}, {"failed", failed}});
      ok = ok && r.ok;
      os << e.name << " n=" << n << ": " << (r.ok ? "true" : "false") << " (" << r.cases.size() << " cases)\n";
    }
  os << "all: " << (ok ? "true" : "false");
  out.payload = {{"n", N}, {"ok", ok}, {"checks", checks}};
  out.status = ok ? 0 : 1;
  out.text = os.str();
  return out;
}

void add_fan_source(CLI::App *c, Opts &o) {
  c->add_option("--fan", o.fan_file, "fan JSON file");
  c->add_option("--family", o.family, "A|B|Bcan|C|Cminus|SigmaA");
  c->add_option("--n", o.n, "family rank");
}

void add_field(CLI::App *c, Opts &o) {
  c->add_option("--field", o.field, "Q or Fp");
  c->add_option("--q", o.q, "prime field size (overrides --field)");
}

} // namespace

CommandResult run(const std::vector<std::string> &args) {
  CommandResult res;
  Opts o;
  CLI::App app{"corb: toric orbifolds of Cartan matrices, pointed chains, Losev-Manin checks"};
  app.name("corb");
  app.fallthrough();
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "emit JSON");
  app.add_option("--threads", o.threads, "worker cap (0 = hardware)");

  std::function<Reply()> action;
  auto leaf = [&](CLI::App *parent, const std::string &name, const std::string &desc, std::function<Reply()> fn) {
    CLI::App *c = parent->add_subcommand(name, desc);
    c->callback([&action, fn] { action = fn; });
    return c;
  };

  CLI::App *fan = app.add_subcommand("fan", "stacky fans")->require_subcommand(1);
  CLI::App *c_build = leaf(fan, "build", "build a family fan", [&] {
    FanPtr f = load_fan(o);
    Reply r;
    r.payload = fan_to_json(*f);
    std::ostringstream os;
    os << "rank " << f->rank << ", " << f->num_rays() << " rays, " << f->max_cones.size() << " max cones";
    if (!o.out.empty()) {
      std::ofstream out(o.out);
      if (!out)
        throw UsageError("cannot write '" + o.out + "'");
      out << r.payload.dump(2) << "\n";
      os << "\nwrote " << o.out;
    }
    r.text = os.str();
    return r;
  });
  add_fan_source(c_build, o);
  c_build->add_option("--out", o.out, "write fan JSON here");

  CLI::App *c_check = leaf(fan, "check", "run fan checks", [&] {
    FanPtr f = load_fan(o);
    FanReport fr = check_fan(*f);
    bool proper = check_proper_intersections(*f);
    Reply r;
    bool ok = fr.all() && proper;
    r.payload = {{"simplicial", fr.simplicial},
                 {"pure", fr.pure},
                 {"wall_condition", fr.wall_condition},
                 {"sampled_complete", fr.sampled_complete},
                 {"proper_intersections", proper},
                 {"ok", ok}};
    std::ostringstream os;
    for (auto &[k, v] : r.payload.items())
      os << k << ": " << (v.get<bool>() ? "true" : "false") << "\n";
    r.text = os.str();
    r.status = ok ? 0 : 1;
    return r;
  });
  add_fan_source(c_check, o);
  c_check->add_option("file", o.fan_file, "fan JSON file");

  CLI::App *c_export = leaf(fan, "export", "fan with group data", [&] {
    FanPtr f = load_fan(o);
    Reply r;
    FinDiagGroupDesc g = dg_group(*f);
    r.payload = {{"fan", fan_to_json(*f)}, {"dg_group", to_json(g)}};
    r.payload["weight_matrix"] = g.torsion.empty() ? to_json(weight_matrix(*f)) : json(nullptr);
    r.text = r.payload.dump(2);
    return r;
  });
  add_fan_source(c_export, o);

  CLI::App *point = app.add_subcommand("point", "points and torus orbits")->require_subcommand(1);
  CLI::App *c_stab = leaf(point, "stab", "stabilizer group", [&] {
    FanPoint p = load_point(o, o.coords);
    FinDiagGroupDesc g = stabilizer(p);
    Reply r;
    r.payload = {{"stabilizer", to_json(g)}, {"order", big_to_json(g.order())}};
    r.text = to_json(g).dump();
    return r;
  });
  CLI::App *c_canon = leaf(point, "canon", "canonical orbit representative over F_p", [&] {
    FanPoint p = load_point(o, o.coords);
    FanPoint c = o.method == "scan"      ? canonical_form_scan(p)
                 : o.method == "lattice" ? canonical_form_lattice(p)
                 : o.method == "auto"    ? canonical_form(p)
                                         : throw UsageError("--method must be auto, scan or lattice");
    Reply r;
    r.payload = point_to_json(c);
    r.text = coords_text(c);
    return r;
  });
  c_canon->add_option("--method", o.method, "auto|scan|lattice");
  CLI::App *c_oeq = leaf(point, "orbit-eq", "decide orbit equality", [&] {
    FanPoint p = load_point(o, o.coords), q = load_point(o, o.other);
    auto g = orbit_witness(p, q);
    Reply r;
    r.payload = {{"orbit_equal", g.has_value()}};
    json w = nullptr;
    if (g) {
      w = json::array();
      for (auto &u : g->units)
        w.push_back(p.field.format(u));
    }
    r.payload["witness"] = w;
    r.text = g ? "true" : "false";
    return r;
  });
  c_oeq->add_option("--other", o.other, "second point coordinates")->required();
  CLI::App *c_count = leaf(point, "count", "coarse F_q point count", [&] {
    if (o.q <= 0)
      throw UsageError("--q is required");
    FanPtr f = load_fan(o);
    BigInt n = count_coarse_points(*f, BigInt(o.q));
    Reply r;
    r.payload = {{"q", o.q}, {"count", big_to_json(n)}};
    r.text = n.str();
    return r;
  });
  CLI::App *c_enum = leaf(point, "enumerate", "all orbits over F_p", [&] {
    if (o.p <= 0)
      throw UsageError("--p is required");
    FanPtr f = load_fan(o);
    auto recs = enumerate_orbits(f, BigInt(o.p));
    Reply r;
    json orbits = json::array();
    std::ostringstream os;
    os << recs.size() << " orbits";
    for (auto &rec : recs) {
      orbits.push_back({{"representative", point_to_json(rec.representative)["coords"]},
                        {"orbit_size", big_to_json(rec.orbit_size)},
                        {"stabilizer_order", big_to_json(rec.stabilizer_order)}});
      os << "\n" << coords_text(rec.representative) << "  size " << rec.orbit_size << "  stab " << rec.stabilizer_order;
    }
    r.payload = {{"p", o.p}, {"num_orbits", recs.size()}, {"orbits", orbits}};
    r.text = os.str();
    return r;
  });
  c_enum->add_option("--p", o.p, "prime");
  for (CLI::App *c : {c_stab, c_canon, c_oeq, c_count, c_enum}) {
    add_fan_source(c, o);
    if (c != c_count && c != c_enum) {
      c->add_option("--coords", o.coords, "comma-separated coordinates in ray order");
      add_field(c, o);
    } else if (c == c_count) {
      c->add_option("--q", o.q, "prime power");
    }
  }

  CLI::App *chain = app.add_subcommand("chain", "pointed chains")->require_subcommand(1);
  auto chain_text = [](const ChainModel &c) {
    std::ostringstream os;
    os << c.component_degrees.size() << " component(s), total degree " << c.total_degree;
    for (size_t k = 0; k < c.component_polys.size(); ++k)
      os << "\n  degree " << c.component_degrees[k] << ": " << poly_text(c.field, c.component_polys[k]);
    return os.str();
  };
  CLI::App *c_fp = leaf(chain, "from-point", "chain of an Upsilon(A) point", [&] {
    ChainModel c = chain_from_point(load_point(o, o.coords));
    Reply r;
    r.payload = chain_to_json(c);
    r.text = chain_text(c);
    return r;
  });
  add_fan_source(c_fp, o);
  c_fp->add_option("--coords", o.coords, "coordinates");
  add_field(c_fp, o);

  CLI::App *c_fpoly = leaf(chain, "from-poly", "extended point of c_0 + c_1 y + ... + c_n y^n", [&] {
    Field f = pick_field(o);
    ExtendedPoint e = point_from_polynomial(f, parse_upoly(f, o.poly));
    ChainModel c = chain_from_point(e);
    Reply r;
    r.payload = {{"extended_point", point_to_json(e)},
                 {"standard_point", point_to_json(standardize(e))},
                 {"chain", chain_to_json(c)}};
    r.text = "extended a=" + poly_text(f, e.a) + " b=" + poly_text(f, e.b) + "\nstandard " +
             coords_text(standardize(e)) + "\n" + chain_text(c);
    return r;
  });
  c_fpoly->add_option("--poly", o.poly, "coefficients c_0..c_n or a literal in x1");
  add_field(c_fpoly, o);

  CLI::App *c_fiber = leaf(chain, "fiber", "fiber of the degree-n! forgetting map", [&] {
    Field f = pick_field(o);
    FiberProfile fp = !o.poly.empty() ? fiber_profile(point_from_polynomial(f, parse_upoly(f, o.poly)))
                                      : fiber_profile(load_point(o, o.coords));
    Reply r;
    r.payload = fiber_to_json(f, fp);
    std::ostringstream os;
    os << "ordered preimages: " << fp.rational_ordered_preimages << "\nramified: " << (fp.is_ramified ? "yes" : "no");
    for (auto &comp : fp.multiplicity_profile) {
      os << "\nmultiplicities:";
      for (unsigned m : comp)
        os << " " << m;
    }
    r.text = os.str();
    return r;
  });
  c_fiber->add_option("--poly", o.poly, "coefficients c_0..c_n or a literal in x1");
  add_fan_source(c_fiber, o);
  c_fiber->add_option("--coords", o.coords, "coordinates");
  add_field(c_fiber, o);

  CLI::App *c_par = leaf(chain, "parity", "parity component of a palindromic polynomial", [&] {
    Field f = pick_field(o);
    if (o.coeffs.empty())
      throw UsageError("--coeffs is required");
    char s = parity_component(f, f.parse_elements(o.coeffs));
    Reply r;
    r.payload = {{"parity", std::string(1, s)}};
    r.text = std::string(1, s);
    return r;
  });
  c_par->add_option("--coeffs", o.coeffs, "coefficients c_0..c_2n");
  add_field(c_par, o);

  CLI::App *c_emb = leaf(chain, "embed", "C, Bcan or Cminus point into its A or C target", [&] {
    FanPoint p = load_point(o, o.coords);
    if (!p.fan->family)
      throw UsageError("embed needs a family fan");
    FanPoint img = p.fan->family->tag == Family::C        ? c_point_embed(p)
                   : p.fan->family->tag == Family::Bcan   ? b_point_embed(p)
                   : p.fan->family->tag == Family::Cminus ? minus_embed(p)
                                                          : throw UsageError("embed needs family C, Bcan or Cminus");
    Reply r;
    r.payload = {{"source", point_to_json(p)}, {"image", point_to_json(img)}};
    if (p.fan->family->tag != Family::Cminus) {
      InvolutiveChainModel ic = involutive_chain(p);
      r.payload["involutive_chain"] = chain_to_json(ic);
    }
    r.text = coords_text(img);
    return r;
  });
  add_fan_source(c_emb, o);
  c_emb->add_option("--coords", o.coords, "coordinates");
  add_field(c_emb, o);

  CLI::App *poly = app.add_subcommand("polytope", "lattice polytopes")->require_subcommand(1);
  auto poly_reply = [](const LatticePolytope &P) {
    Reply r;
    r.payload = polytope_to_json(P);
    r.text = polytope_text(P);
    return r;
  };
  leaf(poly, "permutohedron", "translated permutohedron", [&] { return poly_reply(permutohedron(o.n)); })
      ->add_option("--n", o.n)
      ->required();
  CLI::App *c_delta = leaf(poly, "delta", "Delta_j hypersimplex translate", [&] { return poly_reply(delta_j(o.n, o.j)); });
  c_delta->add_option("--n", o.n)->required();
  c_delta->add_option("--j", o.j)->required();
  CLI::App *c_mink = leaf(poly, "minkowski", "Minkowski sum of the Delta_j or of the segments", [&] {
    if (o.n < 2 || o.n > 6)
      throw UsageError("--n must be in 2..6");
    LatticePolytope acc{static_cast<size_t>(o.n - 1), {std::vector<BigInt>(o.n - 1, BigInt(0))}};
    if (o.decomposition == "delta") {
      for (int j = 1; j < o.n; ++j)
        acc = minkowski_sum(acc, delta_j(o.n, j));
    } else if (o.decomposition == "segments") {
      for (int j = 2; j <= o.n; ++j)
        for (int k = 1; k < j; ++k)
          acc = minkowski_sum(acc, segment(o.n, j, k));
    } else {
      throw UsageError("--decomposition must be delta or segments");
    }
    Reply r = poly_reply(acc);
    r.payload["equals_permutohedron"] = acc == permutohedron(o.n);
    return r;
  });
  c_mink->add_option("--n", o.n)->required();
  c_mink->add_option("--decomposition", o.decomposition, "delta|segments");

  CLI::App *verify = app.add_subcommand("verify", "machine checks")->require_subcommand(1);
  leaf(verify, "all", "run the full suite up to rank n", [&] { return verify_all(o.n); })->add_option("--n", o.n)->required();
  for (auto &e : suite()) {
    if (e.name == "fan-map") {
      CLI::App *c = leaf(verify, e.name, "fan morphism Upsilon(C_n) -> Upsilon(A_{2n-1})", [&] {
        if (!o.family.empty() && parse_family(o.family) != Family::C)
          throw UsageError("fan-map is defined for --family C");
        if (o.n < 1 || o.n > 5)
          throw UsageError("--n must be in 1..5");
        return report_reply("fan-map", o.n, fan_map_report(o.n));
      });
      c->add_option("--family", o.family, "C");
      c->add_option("--n", o.n)->required();
      continue;
    }
    auto fn = e.fn;
    std::string name = e.name;
    leaf(verify, e.name, e.name + " check", [&o, fn, name] { return report_reply(name, o.n, fn(o.n)); })
        ->add_option("--n", o.n)
        ->required();
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError &e) {
    std::ostringstream out, err;
    int code = app.exit(e, out, err);
    res.status = code == 0 ? 0 : 2;
    res.output = out.str();
    res.error = err.str();
    return res;
  }

  try {
    if (o.threads)
      set_max_threads(o.threads);
    if (!action)
      throw UsageError("no command given");
    Reply r = action();
    res.status = r.status;
    res.payload = r.payload;
    res.output = o.json ? r.payload.dump() : r.text;
  } catch (const std::invalid_argument &e) {
    res.status = 2;
    res.error = std::string("error: ") + e.what();
  } catch (const std::domain_error &e) {
    res.status = 2;
    res.error = std::string("error: ") + e.what();
  } catch (const std::out_of_range &e) {
    res.status = 2;
    res.error = std::string("error: ") + e.what();
  } catch (const nlohmann::json::exception &e) {
    res.status = 2;
    res.error = std::string("error: bad JSON: ") + e.what();
  } catch (const std::logic_error &e) {
    res.status = 3;
    res.error = std::string("internal error: ") + e.what();
  } catch (const std::exception &e) {
    res.status = 3;
    res.error = std::string("internal error: ") + e.what();
  }
  return res;
}

} // namespace corb::cli
