#include "biorth/report.hpp"

#include <cstdint>

#include "biorth/errors.hpp"

namespace biorth {
namespace {

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object()) throw InputError("input document must be a JSON object");
  const auto it = doc.find(name);
  if (it == doc.end()) throw InputError(std::string("missing field '") + name + "'");
  return *it;
}

int integer_field(const Json& doc, const char* name) {
  const Json& v = field(doc, name);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + name + "' must be an integer");
  const auto value = v.get<std::int64_t>();
  if (value < 0 || value > 100000) throw InputError(std::string("field '") + name + "' out of range");
  return static_cast<int>(value);
}

Integer integer_entry(const Json& v) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
    return Integer(v.get<std::int64_t>());
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw InputError("form entry '" + s + "' is not a decimal integer");
    return Integer(s[0] == '+' ? s.substr(1) : s);
  }
  throw InputError("form entries must be integers");
}

long long to_ll(const Integer& v) { return v.convert_to<long long>(); }

Json invariants_json(const FormInvariants& inv) {
  return {{"rank", inv.rank},
          {"signature", inv.signature},
          {"b_plus", inv.b_plus},
          {"b_minus", inv.b_minus},
          {"parity", to_string(inv.parity)},
          {"definiteness", to_string(inv.definiteness)},
          {"determinant", to_ll(inv.determinant)}};
}

Json homeo_json(const HomeoClass& h) {
  Json j{{"tag", h.tag_name()}, {"display", h.display()}, {"caveat", h.caveat}};
  switch (h.tag) {
  case HomeoClass::Tag::MixedCP2:
    j["m"] = h.m;
    j["n"] = h.n;
    break;
  case HomeoClass::Tag::SumS2xS2:
    j["n"] = h.n;
    break;
  case HomeoClass::Tag::E8Family:
    j["s"] = h.m;
    j["n"] = h.n;
    break;
  case HomeoClass::Tag::DefiniteNonDiagonal:
    j["rank"] = h.m;
    j["signature"] = h.signature;
    break;
  case HomeoClass::Tag::S4:
    break;
  }
  return j;
}

} // namespace

Json operator_to_json(const CurvatureOperator& r) {
  Json rows = Json::array();
  const Matrix& m = r.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return {{"dim", r.dim()}, {"lambda2_matrix", std::move(rows)}};
}

CurvatureOperator operator_from_json(const Json& doc) {
  const int n = integer_field(doc, "dim");
  if (n < 2) throw InputError("field 'dim' must be >= 2");
  const Json& rows = field(doc, "lambda2_matrix");
  const int size = bivector_dim(n);
  if (!rows.is_array() || static_cast<int>(rows.size()) != size)
    throw InputError("lambda2_matrix must have " + std::to_string(size) + " rows");
  Matrix m(size, size);
  for (int i = 0; i < size; ++i) {
    const Json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != size)
      throw InputError("lambda2_matrix row " + std::to_string(i) + " must have " +
                       std::to_string(size) + " entries");
    for (int j = 0; j < size; ++j) {
      const Json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) throw InputError("lambda2_matrix entries must be numbers");
      m(i, j) = v.get<double>();
    }
  }
  return CurvatureOperator::from_matrix(m, n);
}

Json form_to_json(const IntersectionForm& q) {
  Json rows = Json::array();
  for (int i = 0; i < q.rank(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < q.rank(); ++j) {
      const Integer& v = q(i, j);
      if (v >= std::numeric_limits<std::int64_t>::min() &&
          v <= std::numeric_limits<std::int64_t>::max())
        row.push_back(v.convert_to<std::int64_t>());
      else
        row.push_back(v.str());
    }
    rows.push_back(std::move(row));
  }
  return {{"rank", q.rank()}, {"matrix", std::move(rows)}};
}

IntersectionForm form_from_json(const Json& doc) {
  const int rank = integer_field(doc, "rank");
  const Json& rows = field(doc, "matrix");
  if (!rows.is_array() || static_cast<int>(rows.size()) != rank)
    throw InputError("matrix must have " + std::to_string(rank) + " rows");
  std::vector<std::vector<Integer>> entries;
  for (const Json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != rank)
      throw InputError("every matrix row must have " + std::to_string(rank) + " entries");
    std::vector<Integer> r;
    for (const Json& v : row) r.push_back(integer_entry(v));
    entries.push_back(std::move(r));
  }
  return IntersectionForm::from_rows(entries);
}

Json plane_to_json(const Plane& p) {
  return {{"x", vector_json(p.x())}, {"y", vector_json(p.y())}};
}

Json frame_pair_to_json(const FramePair& fp) {
  return {{"x1", vector_json(fp.x1())},
          {"x2", vector_json(fp.x2())},
          {"y1", vector_json(fp.y1())},
          {"y2", vector_json(fp.y2())}};
}

Json CurvatureSettings::to_json() const {
  return {{"tol", tol},
          {"restarts", minimize.restarts},
          {"seed", minimize.seed},
          {"gtol", minimize.gtol},
          {"max_iterations", minimize.max_iterations},
          {"armijo_c", minimize.armijo_c},
          {"backtrack", minimize.backtrack},
          {"initial_step", minimize.initial_step},
          {"oracle_samples", oracle_samples},
          {"bianchi_tolerance", kBianchiTolerance},
          {"symmetry_tolerance", kSymmetryTolerance}};
}

Json curvature_results(const CurvatureOperator& r, const CurvatureSettings& settings) {
  const int n = r.dim();
  Json out;
  out["dim"] = n;
  out["scal"] = scal(r);
  Eigen::SelfAdjointEigenSolver<Matrix> ric(ricci(r), Eigen::EigenvaluesOnly);
  out["ricci_eigenvalues"] = vector_json(ric.eigenvalues());

  const MinSecResult ms = min_sec(r, settings.minimize);
  if (!ms.converged) throw NumericalFailure("minimum sectional curvature search did not converge");
  out["min_sec"] = {{"value", ms.value},
                    {"method", "minimizer"},
                    {"witness", plane_to_json(ms.witness)}};

  if (n == 4) {
    const ConeVerdict v = in_cone(r, settings.tol);
    out["min_biorth"] = {{"value", v.min_value},
                         {"method", "exact4"},
                         {"witness", plane_to_json(v.witness)}};
    out["cone"] = {{"status", to_string(v.status)}, {"tol", v.tol}, {"certified", true}};
  } else if (n > 4) {
    const MinimizeResult mr = minimize(r, settings.minimize);
    if (!mr.converged) throw NumericalFailure("biorthogonal minimization did not converge");
    out["min_biorth"] = {{"value", mr.value},
                         {"method", "minimizer"},
                         {"best_restart", mr.best_restart},
                         {"restarts", mr.restarts_used},
                         {"witness", frame_pair_to_json(mr.witness)}};
    out["cone"] = {{"status", to_string(cone_status(mr.value, settings.tol))},
                   {"tol", settings.tol},
                   {"certified", false}};
  } else {
    out["min_biorth"] = nullptr;
    out["cone"] = nullptr;
  }

  if (settings.oracle_samples > 0 && n >= 4)
    out["oracle"] = {{"samples", settings.oracle_samples},
                     {"seed", settings.minimize.seed},
                     {"value", grid_oracle(r, settings.oracle_samples, settings.minimize.seed)}};
  return out;
}

Json certificate_to_json(const Certificate& c) {
  Json blocks = Json::array();
  for (const auto& b : c.blocks) {
    Json e;
    if (const auto* op = std::get_if<OperatorEvidence>(&b.evidence)) {
      e = {{"kind", "operator"},
           {"model", std::string(model_name(op->model))},
           {"min_biorth", op->min_biorth}};
      if (b.block == Block::CP2bar) e["orientation_reversed"] = true;
    } else {
      const auto& cit = std::get<CitationEvidence>(b.evidence);
      e = {{"kind", "citation"}, {"key", cit.key}, {"note", cit.note}};
    }
    blocks.push_back({{"block", std::string(block_name(b.block))}, {"evidence", std::move(e)}});
  }
  Json hyps = Json::array();
  for (const auto& h : c.glue.hypotheses)
    hyps.push_back({{"name", h.name}, {"verified", h.verified}, {"detail", h.detail}});
  return {{"blocks", std::move(blocks)},
          {"glue", {{"statement", c.glue.statement}, {"hypotheses", std::move(hyps)}}},
          {"valid", c.valid()}};
}

Json verdict_to_json(const VerdictReport& v) {
  Json out{{"invariants", invariants_json(v.invariants)},
           {"homeo_class", homeo_json(v.homeo)},
           {"a_hat", v.a_hat.str()},
           {"assume_smoothable", v.assume_smoothable},
           {"verdict",
            {{"answer", to_string(v.answer)},
             {"conditions", {"sec_biorth > 0", "Ric > 0", "scal > 0"}},
             {"reason", v.reason},
             {"note", v.smooth_structure_note}}}};
  out["canonical_word"] = v.canonical_word ? Json(to_string(*v.canonical_word)) : Json(nullptr);
  out["certificate"] = v.certificate ? certificate_to_json(*v.certificate) : Json(nullptr);
  return out;
}

std::string digest_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return out;
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

} // namespace biorth
