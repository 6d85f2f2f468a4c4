#include "biorth/verdict.hpp"

#include "biorth/errors.hpp"

namespace biorth {

VerdictReport theorem_verdict(const IntersectionForm& q, bool assume_smoothable, double tol) {
  VerdictReport r{serre_normal_form(q, assume_smoothable),
                  invariants(q),
                  0,
                  Answer::Conditional,
                  {},
                  assume_smoothable,
                  "the answer holds up to changing the smooth structure: it concerns the "
                  "homeomorphism class, and a given smooth structure may carry no metric "
                  "with scal > 0",
                  std::nullopt,
                  std::nullopt};
  r.a_hat = a_hat(r.invariants);
  const PscAnswer psc = admits_psc(r.homeo);
  r.answer = psc.answer;
  r.reason = psc.reason;
  if (r.answer == Answer::Yes) {
    r.canonical_word = word_of_class(r.homeo);
    r.certificate = certificate(*r.canonical_word, tol);
  }
  return r;
}

VerdictReport classify_word(const SumWord& w, bool assume_smoothable, double tol) {
  if (w.empty()) throw PreconditionError("the empty word is not a manifold; write S4");
  VerdictReport r = theorem_verdict(to_form(w), assume_smoothable, tol);
  if (!w.has_e8()) {
    const SumWord normal = normalize(w);
    const HomeoClass via_rewrite = word_class(normal);
    if (!via_rewrite.same_class(r.homeo))
      throw InvariantViolation("form route gives " + r.homeo.display() +
                               " but rewriting gives " + via_rewrite.display());
  }
  return r;
}

} // namespace biorth
