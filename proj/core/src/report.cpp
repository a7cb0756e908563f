#include "parshin/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace parshin {
namespace {

using json = nlohmann::ordered_json;

json complex_json(std::complex<double> v) {
  return json{{"re", fmt_double(v.real())}, {"im", fmt_double(v.imag())}};
}

json quadrature_json(const QuadratureResult& q) {
  json j;
  j["value"] = complex_json(q.value);
  j["est_error"] = fmt_double(q.est_error);
  j["min_denominator"] = fmt_double(q.min_denominator);
  json hist = json::array();
  for (size_t k = 0; k < q.history.size(); ++k)
    hist.push_back(json{{"N", q.grids[k]},
                        {"re", fmt_double(q.history[k].real())},
                        {"im", fmt_double(q.history[k].imag())}});
  j["history"] = std::move(hist);
  return j;
}

json point_json(const ParshinPoint& pt) {
  json j;
  j["orbit"] = pt.orbit_id;
  j["members"] = pt.members;
  j["covering"] = pt.covering;
  return j;
}

json flag_json(const FlagResult& r) {
  json j;
  j["name"] = r.name;
  j["validation"] = json{{"ok", r.validation.ok()},
                         {"violations", r.validation.violations},
                         {"notes", r.validation.notes}};
  {
    json s;
    s["ran"] = r.symbolic.ran;
    s["ok"] = r.symbolic.ok;
    s["applicable"] = r.symbolic.applicable;
    if (!r.symbolic.error.empty()) s["error"] = r.symbolic.error;
    if (!r.symbolic.reason.empty()) s["reason"] = r.symbolic.reason;
    if (r.symbolic.ok && r.symbolic.applicable) {
      s["total"] = r.symbolic.total.str();
      json pts = json::array();
      for (const auto& v : r.symbolic.per_point) pts.push_back(v.str());
      s["per_point"] = std::move(pts);
    }
    j["symbolic"] = std::move(s);
  }
  {
    json n;
    n["ran"] = r.numeric.ran;
    n["ok"] = r.numeric.ok;
    if (!r.numeric.error.empty()) n["error"] = r.numeric.error;
    if (r.numeric.ok) {
      n["delta1"] = fmt_double(r.numeric.res.delta1);
      n["delta2"] = fmt_double(r.numeric.res.delta2);
      n["total"] = complex_json(r.numeric.res.total);
      json pts = json::array();
      for (const auto& pt : r.numeric.res.points) pts.push_back(point_json(pt));
      n["points"] = std::move(pts);
      json comps = json::array();
      for (const auto& q : r.numeric.res.components) comps.push_back(quadrature_json(q));
      n["components"] = std::move(comps);
    }
    j["numeric"] = std::move(n);
  }
  j["cross_check"] = json{{"ran", r.cross_ran},
                          {"pass", r.cross_ok},
                          {"difference", fmt_double(r.cross_diff)}};
  return j;
}

std::string dump(json j) { return j.dump(2) + "\n"; }

}  // namespace

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_compute_report(const FlagResult& r) {
  json j;
  j["schema"] = 1;
  j["kind"] = "compute";
  j["flag"] = flag_json(r);
  j["verdict"] = r.pass() ? "PASS" : "FAIL";
  return dump(std::move(j));
}

std::string json_points_report(const std::vector<ParshinPoint>& points,
                               const MonodromyPermutation& perm, double delta1,
                               double delta2) {
  json j;
  j["schema"] = 1;
  j["kind"] = "points";
  j["delta1"] = fmt_double(delta1);
  j["delta2"] = fmt_double(delta2);
  j["count"] = points.size();
  j["monodromy"] = json{{"map", perm.map}, {"orbits", perm.orbits}};
  json pts = json::array();
  for (const auto& pt : points) pts.push_back(point_json(pt));
  j["points"] = std::move(pts);
  return dump(std::move(j));
}

std::string json_reciprocity_report(const ReciprocityResult& r) {
  json j;
  j["schema"] = 1;
  j["kind"] = "reciprocity";
  json flags = json::array();
  for (const auto& f : r.flags) flags.push_back(flag_json(f));
  j["flags"] = std::move(flags);
  j["sum"] = complex_json(r.sum);
  j["all_exact"] = r.all_exact;
  if (r.all_exact) j["exact_sum"] = r.exact_sum.str();
  j["verdict"] = r.pass ? "PASS" : "FAIL";
  return dump(std::move(j));
}

std::string json_vanish_report(const VanishResult& r) {
  json j;
  j["schema"] = 1;
  j["kind"] = "vanish";
  j["misconfigured"] = r.misconfigured;
  j["flag"] = flag_json(r.flag);
  j["verdict"] = r.misconfigured ? "MISCONFIGURED" : (r.pass ? "PASS" : "FAIL");
  return dump(std::move(j));
}

std::string csv_convergence(const NumericFlagResidue& res) {
  std::string out = "N,real,imag,abs_change\n";
  for (const auto& q : res.components) {
    for (size_t k = 0; k < q.history.size(); ++k) {
      double change = k == 0 ? 0.0 : std::abs(q.history[k] - q.history[k - 1]);
      out += std::to_string(q.grids[k]) + "," + fmt_double(q.history[k].real()) + "," +
             fmt_double(q.history[k].imag()) + "," + fmt_double(change) + "\n";
    }
  }
  return out;
}

}  // namespace parshin
