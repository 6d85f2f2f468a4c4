#pragma once

#include <optional>
#include <string>

#include "biorth/forms.hpp"
#include "biorth/sumword.hpp"

namespace biorth {

/// Answer to: does (some smooth structure on) the manifold admit a metric with
/// positive biorthogonal curvature, equivalently Ric > 0, equivalently
/// scal > 0. The answer is at the level of homeomorphism classes.
struct VerdictReport {
  HomeoClass homeo;
  FormInvariants invariants;
  Rational a_hat;
  Answer answer;
  std::string reason;
  bool assume_smoothable;
  std::string smooth_structure_note;
  /// Canonical word and certificate, present when the answer is yes.
  std::optional<SumWord> canonical_word;
  std::optional<Certificate> certificate;
};

VerdictReport theorem_verdict(const IntersectionForm& q, bool assume_smoothable,
                              double tol = kConeTolerance);

/// Classifies a connected-sum word through its form and, for E8-free words,
/// also through the rewrite system; throws InvariantViolation if the two
/// routes disagree.
VerdictReport classify_word(const SumWord& w, bool assume_smoothable,
                            double tol = kConeTolerance);

} // namespace biorth
