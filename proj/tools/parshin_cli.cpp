// Command-line interface: compute | points | reciprocity | vanish | convergence.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "parshin/report.hpp"

namespace {

using namespace parshin;

struct CliOptions {
  std::string deck_path;
  std::string engine;
  double delta1 = -1, delta2 = -1, tol = -1;
  int grid = -1;
  std::string json_path, csv_path;
};

void add_common(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--deck", o.deck_path, "problem deck file")->required();
  cmd->add_option("--engine", o.engine, "symbolic | numeric | both")
      ->check(CLI::IsMember({"symbolic", "numeric", "both"}));
  cmd->add_option("--delta1", o.delta1, "radius of the u1 circle");
  cmd->add_option("--delta2", o.delta2, "radius of the u2 circle");
  cmd->add_option("--grid", o.grid, "samples per 2*pi (power of two)");
  cmd->add_option("--tol", o.tol, "quadrature refinement tolerance");
  cmd->add_option("--json", o.json_path, "write the JSON report to this path");
  cmd->add_option("--csv", o.csv_path, "write the CSV convergence table to this path");
}

ComputeOptions merge(const ProblemDeck& deck, const CliOptions& o) {
  ComputeOptions c = ComputeOptions::from_deck(deck);
  if (!o.engine.empty()) c.engine = o.engine;
  if (o.delta1 >= 0) c.delta1 = o.delta1;
  if (o.delta2 >= 0) c.delta2 = o.delta2;
  if (o.grid > 0) c.grid = o.grid;
  if (o.tol > 0) c.tol = o.tol;
  return c;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

std::string fmt_complex(std::complex<double> v) {
  return fmt_double(v.real()) + (v.imag() < 0 ? " - " : " + ") +
         fmt_double(std::abs(v.imag())) + "i";
}

void print_flag(const FlagResult& r) {
  std::cout << "flag '" << r.name << "':";
  if (!r.validation.ok()) {
    std::cout << " INVALID\n";
    for (const auto& v : r.validation.violations) std::cout << "  violation: " << v << "\n";
    return;
  }
  std::cout << "\n";
  if (r.symbolic.ran) {
    if (r.symbolic.ok && r.symbolic.applicable) {
      std::cout << "  symbolic: " << r.symbolic.total.str() << "  (per point:";
      for (const auto& v : r.symbolic.per_point) std::cout << " " << v.str();
      std::cout << ")\n";
    } else if (r.symbolic.ok) {
      std::cout << "  symbolic: not applicable (" << r.symbolic.reason << ")\n";
    } else {
      std::cout << "  symbolic: ERROR " << r.symbolic.error << "\n";
    }
  }
  if (r.numeric.ran) {
    if (r.numeric.ok) {
      std::cout << "  numeric:  " << fmt_complex(r.numeric.res.total) << "  (delta1="
                << fmt_double(r.numeric.res.delta1)
                << ", delta2=" << fmt_double(r.numeric.res.delta2) << ", "
                << r.numeric.res.points.size() << " Parshin point(s))\n";
    } else {
      std::cout << "  numeric:  ERROR " << r.numeric.error << "\n";
    }
  }
  if (r.cross_ran)
    std::cout << "  cross-check: |symbolic - numeric| = " << fmt_double(r.cross_diff)
              << (r.cross_ok ? "  OK" : "  FAIL") << "\n";
}

std::string cycles_str(const MonodromyPermutation& perm) {
  std::string out;
  for (const auto& orbit : perm.orbits) {
    if (orbit.size() < 2) continue;
    // follow the permutation within the orbit, 1-based
    out += "(";
    int start = orbit[0], cur = start;
    bool first = true;
    do {
      out += (first ? "" : " ") + std::to_string(cur + 1);
      cur = perm.map[size_t(cur)];
      first = false;
    } while (cur != start);
    out += ")";
  }
  if (out.empty()) out = "identity";
  return out;
}

int cmd_compute(const CliOptions& o) {
  ProblemDeck deck = load_deck(o.deck_path);
  ComputeOptions opts = merge(deck, o);
  FlagResult r = compute_flag(deck.problem, opts);
  print_flag(r);
  std::cout << "verdict: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  if (!o.json_path.empty()) write_file(o.json_path, json_compute_report(r));
  if (!o.csv_path.empty() && r.numeric.ok)
    write_file(o.csv_path, csv_convergence(r.numeric.res));
  return r.pass() ? 0 : 1;
}

int cmd_points(const CliOptions& o) {
  ProblemDeck deck = load_deck(o.deck_path);
  ComputeOptions opts = merge(deck, o);
  const FlagProblem& p = deck.problem;
  double d1 = opts.delta1, d2 = opts.delta2;
  if (d1 <= 0 || (p.n == 2 && d2 <= 0)) {
    RadiiChoice rc = choose_radii(p);
    if (d1 <= 0) d1 = rc.delta1;
    if (p.n == 2 && d2 <= 0) d2 = rc.delta2;
  }
  auto points = enumerate_parshin_points(p, d1, d2);
  MonodromyPermutation perm;
  if (p.n == 2) {
    perm = monodromy_along_loop(p, d1, d2);
  } else {
    perm.map.resize(points.size());
    for (size_t k = 0; k < points.size(); ++k) {
      perm.map[k] = int(k);
      perm.orbits.push_back({int(k)});
    }
  }
  std::cout << points.size() << " Parshin point" << (points.size() == 1 ? "" : "s")
            << "; monodromy: " << cycles_str(perm) << "\n";
  for (const auto& pt : points) {
    std::cout << "  point " << pt.orbit_id << ": covering (";
    for (size_t k = 0; k < pt.covering.size(); ++k)
      std::cout << (k ? "," : "") << pt.covering[k];
    std::cout << "); branches {";
    for (size_t k = 0; k < pt.members.size(); ++k)
      std::cout << (k ? "," : "") << pt.members[k] + 1;
    std::cout << "}\n";
  }
  if (!o.json_path.empty())
    write_file(o.json_path, json_points_report(points, perm, d1, d2));
  return 0;
}

int cmd_reciprocity(const CliOptions& o) {
  ProblemDeck deck = load_deck(o.deck_path);
  ComputeOptions opts = merge(deck, o);
  ReciprocityResult r = verify_reciprocity(deck, opts);
  for (const auto& f : r.flags) print_flag(f);
  if (r.all_exact) std::cout << "exact sum: " << r.exact_sum.str() << "\n";
  std::cout << "sum: " << fmt_complex(r.sum) << "\n";
  std::cout << "verdict: " << (r.pass ? "PASS" : "FAIL") << "\n";
  if (!o.json_path.empty()) write_file(o.json_path, json_reciprocity_report(r));
  return r.pass ? 0 : 1;
}

int cmd_vanish(const CliOptions& o) {
  ProblemDeck deck = load_deck(o.deck_path);
  ComputeOptions opts = merge(deck, o);
  VanishResult r = vanishing_check(deck, opts);
  if (r.misconfigured) {
    std::cout << "misconfigured: off-flag curve lies inside the polar set of the form\n";
    if (!o.json_path.empty()) write_file(o.json_path, json_vanish_report(r));
    return 2;
  }
  print_flag(r.flag);
  std::cout << "verdict: " << (r.pass ? "PASS" : "FAIL") << "\n";
  if (!o.json_path.empty()) write_file(o.json_path, json_vanish_report(r));
  return r.pass ? 0 : 1;
}

int cmd_convergence(const CliOptions& o) {
  ProblemDeck deck = load_deck(o.deck_path);
  ComputeOptions opts = merge(deck, o);
  NumericFlagResidue res = residue_numeric_at_flag(deck.problem, opts.delta1,
                                                   opts.delta2, opts.grid, opts.tol);
  std::string csv = csv_convergence(res);
  if (!o.csv_path.empty())
    write_file(o.csv_path, csv);
  else
    std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parshin residues of rational forms at complete flags"};
  app.require_subcommand(1);
  CliOptions o;
  auto* compute = app.add_subcommand("compute", "residue at the deck's flag");
  auto* points = app.add_subcommand("points", "Parshin points and monodromy");
  auto* reciprocity = app.add_subcommand("reciprocity", "sum over candidate flags");
  auto* vanish = app.add_subcommand("vanish", "off-flag vanishing check");
  auto* convergence = app.add_subcommand("convergence", "CSV quadrature history");
  for (auto* cmd : {compute, points, reciprocity, vanish, convergence})
    add_common(cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (compute->parsed()) return cmd_compute(o);
    if (points->parsed()) return cmd_points(o);
    if (reciprocity->parsed()) return cmd_reciprocity(o);
    if (vanish->parsed()) return cmd_vanish(o);
    if (convergence->parsed()) return cmd_convergence(o);
  } catch (const deck_error& e) {
    std::cerr << "deck error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
