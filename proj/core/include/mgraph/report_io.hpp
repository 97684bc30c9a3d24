#pragma once

#include <iosfwd>
#include <string>

#include "mgraph/geometry.hpp"
#include "mgraph/msolver.hpp"

namespace mgraph {

/// JSON-lines iteration log. One object per Picard step with the keys
///   iteration, u_c2, diff_c2, ratio (null on the first step), F_c0,
///   poisson_iterations, poisson_residual, poisson_unknowns
/// followed by one closing object with "final": true and the run summary
///   epsilon, gamma, lambda, iterations, u0_c2, max_u_c2, converged, induction_bound_held,
///   mean_ratio, deviation_c2, deviation_c0, ms_residual_interior, ms_residual_boundary.
void write_iteration_log(std::ostream& out, const IterationReport& report);

/// The closing summary object on its own, as a single-line JSON string.
std::string iteration_summary_json(const IterationReport& report);

/// Plot-friendly polylines: one "x y" pair per line, a blank line between chains.
/// Closed chains repeat their first vertex at the end.
void write_level_set_text(std::ostream& out, const LevelSet& ls);

/// {"length", "margin", "chains", "closed_chains", "perturbed_corners"}.
std::string level_set_summary_json(const LevelSet& ls);

}  // namespace mgraph
