#include "ellarr/report.hpp"

#include <cmath>
#include <cstdio>

#include "ellarr/errors.hpp"

namespace ellarr {

namespace {

void write(const json& j, int indent, int depth, std::string& out) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {  // std::map: keys already sorted
        if (!first) out += ',';
        first = false;
        out += pad;
        out += json(k).dump();
        out += sep;
        write(v, indent, depth + 1, out);
      }
      out += close;
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        out += pad;
        write(v, indent, depth + 1, out);
      }
      out += close;
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string dump_json(const json& j, int indent) {
  std::string out;
  write(j, indent, 0, out);
  out += '\n';
  return out;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const TorsionPoint& t) { return t.to_string(); }

json to_json(const Lattice& lat) {
  return {{"tau", to_json(lat.tau())}, {"label", lat.label()}, {"non_generic", lat.is_special()}};
}

json to_json(const ZeroPair& z) {
  return {{"q1", to_json(z.q1)},
          {"q2", to_json(z.q2)},
          {"double_zero", z.double_zero},
          {"derivative_magnitudes", {z.deriv1, z.deriv2}},
          {"residuals", {z.residual1, z.residual2}},
          {"grid_attempts", z.grid_attempts}};
}

json to_json(const DoubleZeroReport& r) {
  json etas = json::array();
  for (std::size_t i = 0; i < r.etas.size(); ++i)
    etas.push_back({{"eta", to_json(r.etas[i])}, {"magnitude", r.magnitudes[i]}});
  return {{"etas", etas}, {"min_magnitude", r.min_magnitude}, {"pass", r.pass}};
}

json to_json(const ArrangementReport& r) {
  json clusters = json::array();
  for (const auto& c : r.clusters) {
    json van = json::array();
    for (std::size_t i = 0; i < c.vanishing.size(); ++i)
      van.push_back({{"tau", to_json(c.vanishing[i])}, {"margin", c.margins[i]}});
    clusters.push_back({{"center", to_json(c.center)}, {"branches", c.branches()}, {"radius", c.radius},
                        {"vanishing", van}});
  }
  json sub = json::array();
  for (const auto& t : r.subgroup) sub.push_back(to_json(t));
  return {{"lattice", to_json(r.lattice)},
          {"p", to_json(r.p)},
          {"subgroup", sub},
          {"subgroup_order", r.subgroup.size()},
          {"contains_full_two_torsion", r.contains_two_torsion},
          {"clusters", clusters},
          {"on_base_curve", {{"nodes", r.nodes_on_g}, {"triples", r.triples_on_g}}},
          {"totals", {{"nodes", r.total_nodes}, {"triples", r.total_triples}}},
          {"pair_count", r.pair_count},
          {"expected_pair_count", r.expected_pairs},
          {"min_margin", r.min_margin},
          {"min_separation", r.min_separation},
          {"non_generic", r.non_generic},
          {"verdict", to_string(r.verdict)},
          {"issues", r.issues}};
}

json to_json(const DichotomyExperiment& e) {
  json runs = json::array();
  for (const auto& r : e.runs)
    runs.push_back({{"type", r.type.to_string()},
                    {"trial", r.trial},
                    {"tau_lattice", to_json(r.tau_lat)},
                    {"p", to_json(r.p)},
                    {"expected", to_string(r.expected)},
                    {"verdict", to_string(r.verdict)},
                    {"nodes", r.total_nodes},
                    {"triples", r.total_triples},
                    {"issues", r.issues},
                    {"match", r.matches()}});
  json types = json::array();
  for (const auto& t : subgroup_types(e.m)) types.push_back(t.to_string());
  return {{"m", e.m},
          {"trials", e.trials},
          {"seed", e.seed},
          {"prediction", to_string(e.prediction)},
          {"subgroup_types", types},
          {"runs", runs},
          {"mismatches", e.mismatches()},
          {"unclassified", e.unclassified()}};
}

json describe_b(const BFunction& f) {
  const Lattice& lat = f.lattice();
  auto [p0, p1] = f.poles();
  auto fn = [&f](cplx z) { return f(z); };
  const double r = 1e-3;
  const cplx res0 = contour_residue(fn, f.p(), r);
  const cplx res1 = contour_residue(fn, f.p() - f.tau_lift(), r);

  double ts = 0;
  for (int i = 0; i < 8; ++i) {
    cplx z = f.p() + lat.point(0.1 + 0.1 * i, 0.37 + 0.07 * i);
    try {
      ts = std::max(ts, std::abs(translate_sum(f, z)));
    } catch (const PoleProximity&) {
    }
  }

  ZeroPair zp = find_zeros(f);
  json j = {{"lattice", to_json(lat)},
            {"p", to_json(f.p())},
            {"tau", to_json(f.tau())},
            {"order", f.order()},
            {"tau_lift", to_json(f.tau_lift())},
            {"constant", to_json(f.constant())},
            {"poles", {to_json(p0), to_json(p1)}},
            {"residues", {to_json(res0), to_json(res1)}},
            {"zeros", to_json(zp)},
            {"abel_residual", abel_residual(f, zp)},
            {"translate_sum_residual", ts}};
  j["double_zero_check"] = to_json(check_no_double_zero(f));
  return j;
}

std::string arrangement_csv(const ArrangementReport& r) {
  std::string out = "re,im,kind\n";
  out += fmt(r.p.real()) + "," + fmt(r.p.imag()) + ",pole\n";
  for (const auto& c : r.clusters) {
    std::string kind = c.branches() == 2 ? "node" : c.branches() == 3 ? "triple" : "cluster" + std::to_string(c.branches());
    out += fmt(c.center.real()) + "," + fmt(c.center.imag()) + "," + kind + "\n";
  }
  return out;
}

std::string bfun_csv(const BFunction& f, const ZeroPair& z) {
  auto [p0, p1] = f.poles();
  std::string out = "re,im,kind\n";
  for (cplx w : {p0, p1}) out += fmt(w.real()) + "," + fmt(w.imag()) + ",pole\n";
  for (cplx w : {z.q1, z.q2}) out += fmt(w.real()) + "," + fmt(w.imag()) + ",zero\n";
  return out;
}

}  // namespace ellarr
