// Deterministic machine-readable reports: versioned JSON (schema 1) with
// fixed key order and 17-significant-digit float formatting, plus CSV
// convergence tables.
#pragma once

#include "parshin/engine.hpp"
#include "parshin/monodromy.hpp"

namespace parshin {

// Fixed float rendering used everywhere in reports (%.17g: lossless).
std::string fmt_double(double v);

std::string json_compute_report(const FlagResult& r);
std::string json_points_report(const std::vector<ParshinPoint>& points,
                               const MonodromyPermutation& perm, double delta1,
                               double delta2);
std::string json_reciprocity_report(const ReciprocityResult& r);
std::string json_vanish_report(const VanishResult& r);

// Columns: N, real, imag, abs_change; one block per torus component.
std::string csv_convergence(const NumericFlagResidue& res);

}  // namespace parshin
