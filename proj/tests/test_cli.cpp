#include "cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <fstream>

using corb::cli::run;

TEST_SUITE("cli") {

TEST_CASE("stabilizer output") {
  auto r = run({"point", "stab", "--family", "A", "--n", "2", "--coords", "0,0,1,1", "--field", "F7"});
  CHECK(r.status == 0);
  CHECK(r.output.find(R"({"torsion":[3],"free_rank":0})") != std::string::npos);
  auto j = run({"--json", "point", "stab", "--family", "A", "--n", "2", "--coords", "0,0,1,1", "--field", "F7"});
  CHECK(j.payload["order"] == 3);
  CHECK(j.payload["stabilizer"]["torsion"][0] == 3);
}

TEST_CASE("point commands") {
  CHECK(run({"point", "count", "--family", "A", "--n", "1", "--q", "5"}).output.find("6") == 0);
  auto c = run({"--json", "point", "canon", "--family", "A", "--n", "1", "--coords", "2,3", "--field", "F5"});
  CHECK(c.status == 0);
  auto l = run({"--json", "point", "canon", "--family", "A", "--n", "1", "--coords", "2,3", "--field", "F5",
                "--method", "lattice"});
  CHECK(c.payload == l.payload);
  auto e = run({"--json", "point", "orbit-eq", "--family", "A", "--n", "1", "--coords", "1,1", "--other", "2,4",
                "--field", "F7"});
  CHECK(e.status == 0);
  CHECK(e.output.find("true") != std::string::npos);
  auto en = run({"--json", "point", "enumerate", "--family", "A", "--n", "1", "--p", "3"});
  CHECK(en.status == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({"point", "stab", "--family", "A", "--n", "1", "--coords", "0,0", "--field", "F7"}).status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"point"}).status == 2);
  CHECK(run({"--help"}).status == 0);
  CHECK(run({"point", "count", "--family", "A", "--n", "1", "--q", "6"}).status == 2);
  CHECK(run({"point", "stab", "--family", "Z", "--n", "1", "--coords", "1,1", "--field", "F7"}).status == 2);
  CHECK(run({"fan", "check", "/nonexistent/fan.json"}).status == 2);
}

TEST_CASE("fan round trip through a file") {
  std::string path = "corb_cli_test_fan.json";
  auto b = run({"fan", "build", "--family", "C", "--n", "2", "--out", path});
  CHECK(b.status == 0);
  auto c = run({"--json", "fan", "check", path});
  CHECK(c.status == 0);
  std::remove(path.c_str());
}

TEST_CASE("chains and polytopes") {
  auto f = run({"--json", "chain", "fiber", "--poly", "x1^3 - 6*x1^2 + 11*x1 - 6", "--field", "F7"});
  CHECK(f.status == 0);
  CHECK(f.payload["rational_ordered_preimages"] == 6);
  CHECK(run({"chain", "parity", "--coeffs", "1,3,1", "--field", "F7"}).output.find("+") == 0);
  auto p = run({"--json", "polytope", "permutohedron", "--n", "3"});
  CHECK(p.payload["num_vertices"] == 6);
  auto m = run({"--json", "polytope", "minkowski", "--n", "3", "--decomposition", "segments"});
  CHECK(m.status == 0);
}

TEST_CASE("verification reports are independent of the thread count") {
  auto a = run({"--json", "--threads", "1", "verify", "all", "--n", "3"});
  auto b = run({"--json", "--threads", "3", "verify", "all", "--n", "3"});
  CHECK(a.status == 0);
  CHECK(a.output == b.output);
  CHECK(a.payload["ok"] == true);
  CHECK(run({"verify", "minkowski", "--n", "9"}).status == 2);
}

}
