#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <json.hpp>

#include "biorth/curvature.hpp"
#include "biorth/forms.hpp"
#include "biorth/minimizer.hpp"
#include "biorth/verdict.hpp"

namespace biorth {

// Object keys are kept sorted (std::map), which makes dumps deterministic.
using Json = nlohmann::json;

inline constexpr std::string_view kToolVersion = "1.0.0";

/// {"dim": n, "lambda2_matrix": [[...], ...]} in the lexicographic basis.
Json operator_to_json(const CurvatureOperator& r);
/// Throws InputError for a malformed document, InvalidOperator for a matrix
/// that is not a curvature operator.
CurvatureOperator operator_from_json(const Json& doc);

/// {"rank": r, "matrix": [[...], ...]}; entries may be JSON integers or
/// decimal strings (for values beyond 64 bits).
Json form_to_json(const IntersectionForm& q);
IntersectionForm form_from_json(const Json& doc);

Json plane_to_json(const Plane& p);
Json frame_pair_to_json(const FramePair& fp);

struct CurvatureSettings {
  double tol = kConeTolerance;
  MinimizeOptions minimize;
  std::size_t oracle_samples = 0;

  Json to_json() const;
};

/// Curvature quantities of an operator. Throws NumericalFailure when an
/// optimizer run fails to converge on every restart.
Json curvature_results(const CurvatureOperator& r, const CurvatureSettings& settings);

Json certificate_to_json(const Certificate& c);
Json verdict_to_json(const VerdictReport& v);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string digest_hex(std::string_view bytes);

/// Pretty-printed with a trailing newline.
std::string dump_report(const Json& report);

/// Parses a JSON document, mapping syntax errors to InputError.
Json parse_document(std::string_view text);

} // namespace biorth
