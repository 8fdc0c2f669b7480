#include <cmath>
#include <sstream>

#include "doctest.h"
#include "ellarr/report.hpp"
#include "ellarr/verify.hpp"

using namespace ellarr;

TEST_CASE("float formatting round-trips") {
  CHECK(dump_json(json(0.1), 0) == "0.10000000000000001\n");
  CHECK(dump_json(json(NAN), 0) == "null\n");
  CHECK(dump_json(json(-INFINITY), 0) == "null\n");
  CHECK(dump_json(json(3), 0) == "3\n");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(dump_json(json(x), 0)) == x);
  CHECK(dump_json(to_json(cplx(1.5, -2)), 0) == "[1.5,-2]\n");
}

TEST_CASE("object keys come out sorted") {
  json j;
  j["zeta"] = 1;
  j["alpha"] = 2;
  j["mid"] = json::object({{"b", 1}, {"a", 2}});
  CHECK(dump_json(j, 0) == "{\"alpha\":2,\"mid\":{\"a\":2,\"b\":1},\"zeta\":1}\n");
  CHECK(dump_json(json::object(), 2) == "{}\n");
  CHECK(dump_json(json::array(), 2) == "[]\n");
  CHECK(dump_json(json::array({1, 2}), 2) == "[\n  1,\n  2\n]\n");
}

TEST_CASE("describe_b is byte-deterministic and carries the key fields") {
  Lattice lat = Lattice::from_tau({0.21, 1.37});
  BFunction f = construct_b({0.2}, {1, 1, 3}, lat);
  std::string a = dump_json(describe_b(f)), b = dump_json(describe_b(construct_b({0.2}, {1, 1, 3}, lat)));
  CHECK(a == b);
  json d = describe_b(f);
  CHECK(d["order"] == 3);
  CHECK(d["tau"] == "1/3,1/3");
  CHECK(d["translate_sum_residual"].get<double>() <= 1e-9);
  CHECK(d["abel_residual"].get<double>() <= 1e-8);
  CHECK(d["double_zero_check"]["pass"] == true);
  CHECK(d["zeros"].contains("q1"));
  auto r0 = d["residues"][0], r1 = d["residues"][1];
  CHECK(std::abs(r0[0].get<double>() - 1) <= 1e-8);
  CHECK(std::abs(r1[0].get<double>() + 1) <= 1e-8);
  CHECK(json::parse(a) == json::parse(b));
}

TEST_CASE("arrangement report and CSV") {
  Lattice lat = Lattice::from_tau({0.21, 1.37});
  ArrangementReport r = classify_arrangement(subgroup_from_generators({{1, 0, 2}, {0, 1, 2}}), {0.3}, lat);
  json j = to_json(r);
  CHECK(j["verdict"] == "NodesAndTriples");
  CHECK(j["totals"]["triples"] == 4);
  CHECK(j["clusters"].size() == 3);
  CHECK(dump_json(j) == dump_json(to_json(classify_arrangement(r.subgroup, {0.3}, lat))));

  std::string csv = arrangement_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "re,im,kind");
  int triples = 0, poles = 0, rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    triples += line.ends_with(",triple");
    poles += line.ends_with(",pole");
  }
  CHECK(rows == 4);
  CHECK(triples == 3);
  CHECK(poles == 1);

  BFunction f = construct_b({0.0}, {1, 0, 2}, Lattice::square());
  std::string b = bfun_csv(f, find_zeros(f));
  CHECK(b.rfind("re,im,kind\n", 0) == 0);
  CHECK(std::count(b.begin(), b.end(), '\n') == 5);
}

TEST_CASE("verify report for a single criterion") {
  VerifyConfig cfg;
  cfg.only = "nodal-fiber-sum";
  VerifyReport a = run_verify(cfg), b = run_verify(cfg);
  REQUIRE(a.results.size() == 1);
  CHECK(a.results[0].id == 7);
  CHECK(a.results[0].pass);
  CHECK(dump_json(a.to_json()) == dump_json(b.to_json()));
  CHECK(a.to_text().find("nodal-fiber-sum") != std::string::npos);

  cfg.only = "7";
  CHECK(run_verify(cfg).results[0].name == "nodal-fiber-sum");
  cfg.only = "no-such-check";
  CHECK_THROWS(run_verify(cfg));
  CHECK(criterion_names().size() == 12);
}
