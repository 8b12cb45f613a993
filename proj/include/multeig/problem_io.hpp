#ifndef MULTEIG_PROBLEM_IO_HPP
#define MULTEIG_PROBLEM_IO_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "multeig/pipeline.hpp"

namespace multeig {

// Problem files are JSON:
//
//   {
//     "size": 3,
//     "degree": 2,
//     "coefficients": [A_0, ..., A_m],   // each an n x n array of [re, im]
//     "mu": [-4.0, 0.0],
//     "weights": [1.0, 1.0, 1.0],
//     "tolerances": {                    // optional overrides
//       "tol_weak": ..., "tol_mult": ..., "tol_eig": ...,
//       "grid_points": ..., "gamma_max_factor": ...
//     }
//   }

/// Parses and validates a problem file. Every failure carries the offending
/// field in the message (ParseError).
ProblemSpec parse_problem(const std::string& path);

/// Same, from an already-parsed document; `context` prefixes diagnostics.
ProblemSpec parse_problem_json(const nlohmann::json& doc, const std::string& context);

/// Inverse of parsing; parse(emit(spec)) reproduces the spec exactly.
nlohmann::json emit_problem(const ProblemSpec& spec);

void write_problem(const ProblemSpec& spec, const std::string& path);

}  // namespace multeig

#endif
