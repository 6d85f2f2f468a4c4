#include "biorth/sumword.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "biorth/errors.hpp"
#include "biorth/sampling.hpp"

namespace biorth {
namespace {

// Longest spellings first so that "CP2bar" is not read as "CP2".
constexpr std::array<std::pair<std::string_view, Block>, 6> kSpellings{{
    {"CP2bar", Block::CP2bar},
    {"CP2", Block::CP2},
    {"S2xS2", Block::S2xS2},
    {"S4", Block::S4},
    {"-E8", Block::E8bar},
    {"E8", Block::E8},
}};

constexpr std::uint64_t kGlueSeed = 0x5eed'c0de;

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

void require_fact_word(const SumWord& w, const char* op) {
  if (w.has_e8()) throw PreconditionError(std::string(op) + " does not accept E8 blocks");
  if (w.empty()) throw PreconditionError("the empty word is not a manifold; write S4");
}

double spectral_norm(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

} // namespace

std::string_view block_name(Block b) {
  switch (b) {
  case Block::S4: return "S4";
  case Block::CP2: return "CP2";
  case Block::CP2bar: return "CP2bar";
  case Block::S2xS2: return "S2xS2";
  case Block::E8: return "E8";
  case Block::E8bar: return "-E8";
  }
  return "?";
}

bool SumWord::empty() const {
  for (auto c : counts)
    if (c != 0) return false;
  return true;
}

SumWord parse_word(std::string_view text) {
  SumWord w;
  std::size_t pos = 0;
  while (true) {
    skip_space(text, pos);
    const std::size_t term_start = pos;
    std::uint64_t count = 1;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      count = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        const auto digit = static_cast<std::uint64_t>(text[pos] - '0');
        if (count > (std::numeric_limits<std::uint64_t>::max() - digit) / 10)
          throw ParseError("count too large", term_start);
        count = count * 10 + digit;
        ++pos;
      }
      skip_space(text, pos);
      if (pos >= text.size() || text[pos] != '*') throw ParseError("expected '*'", pos);
      ++pos;
      skip_space(text, pos);
      if (count == 0) throw ParseError("zero count", term_start);
    }
    bool matched = false;
    for (const auto& [spelling, block] : kSpellings) {
      if (text.substr(pos).starts_with(spelling)) {
        w[block] += count;
        pos += spelling.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError("expected a block (S4, CP2, CP2bar, S2xS2, E8, -E8)", pos);
    skip_space(text, pos);
    if (pos == text.size()) break;
    if (text[pos] != '#') throw ParseError("expected '#'", pos);
    ++pos;
  }
  return w;
}

std::string to_string(const SumWord& w) {
  static constexpr std::array kOrder{Block::CP2,   Block::CP2bar, Block::S2xS2,
                                     Block::E8,    Block::E8bar,  Block::S4};
  std::string out;
  for (Block b : kOrder) {
    const auto c = w[b];
    if (c == 0) continue;
    if (!out.empty()) out += " # ";
    if (c != 1) out += std::to_string(c) + "*";
    out += block_name(b);
  }
  return out.empty() ? "S4" : out;
}

IntersectionForm to_form(const SumWord& w) {
  const std::uint64_t rank64 = w[Block::CP2] + w[Block::CP2bar] + 2 * w[Block::S2xS2] +
                               8 * (w[Block::E8] + w[Block::E8bar]);
  if (rank64 > 100000) throw PreconditionError("word too large to expand into a form");
  const int rank = static_cast<int>(rank64);
  const IntMatrix e8 = builtin(BuiltinForm::E8).matrix();
  IntMatrix m(rank);
  int at = 0;
  for (std::uint64_t i = 0; i < w[Block::CP2]; ++i, ++at) m(at, at) = 1;
  for (std::uint64_t i = 0; i < w[Block::CP2bar]; ++i, ++at) m(at, at) = -1;
  for (std::uint64_t i = 0; i < w[Block::S2xS2]; ++i, at += 2) m(at, at + 1) = m(at + 1, at) = 1;
  for (Block b : {Block::E8, Block::E8bar}) {
    const int sign = b == Block::E8 ? 1 : -1;
    for (std::uint64_t i = 0; i < w[b]; ++i, at += 8)
      for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) m(at + r, at + c) = sign * e8(r, c);
  }
  return IntersectionForm::from_matrix(std::move(m));
}

SumWord normalize(const SumWord& w, NormalizeOptions options) {
  require_fact_word(w, "normalize");
  SumWord out = w;
  // Each rewrite trades one S2xS2 for one CP2 and one CP2bar and leaves the
  // triggering summand in place, so the fixed point is reached in one step.
  const std::uint64_t s = out[Block::S2xS2];
  const bool trigger = out[Block::CP2] > 0 || (options.mirrored_rule && out[Block::CP2bar] > 0);
  if (s > 0 && trigger) {
    out[Block::CP2] += s;
    out[Block::CP2bar] += s;
    out[Block::S2xS2] = 0;
  }
  const bool others = out[Block::CP2] + out[Block::CP2bar] + out[Block::S2xS2] > 0;
  out[Block::S4] = others ? 0 : 1;
  return out;
}

bool is_canonical(const SumWord& w) {
  if (w.has_e8() || w.empty()) return false;
  const auto cp = w[Block::CP2] + w[Block::CP2bar];
  const auto s = w[Block::S2xS2];
  if (w[Block::S4] > 0) return w[Block::S4] == 1 && cp == 0 && s == 0;
  return cp == 0 || s == 0;
}

HomeoClass word_class(const SumWord& w) {
  if (!is_canonical(w)) throw PreconditionError("word is not canonical: " + to_string(w));
  HomeoClass h{HomeoClass::Tag::S4, 0, 0, 0, Parity::Even, {}};
  if (w[Block::S4] == 1) return h;
  if (w[Block::S2xS2] > 0) {
    h.tag = HomeoClass::Tag::SumS2xS2;
    h.n = static_cast<long long>(w[Block::S2xS2]);
    return h;
  }
  h.tag = HomeoClass::Tag::MixedCP2;
  h.m = static_cast<long long>(w[Block::CP2]);
  h.n = static_cast<long long>(w[Block::CP2bar]);
  h.signature = static_cast<int>(h.m - h.n);
  h.parity = Parity::Odd;
  return h;
}

SumWord word_of_class(const HomeoClass& h) {
  SumWord w;
  switch (h.tag) {
  case HomeoClass::Tag::S4:
    w[Block::S4] = 1;
    return w;
  case HomeoClass::Tag::MixedCP2:
    w[Block::CP2] = static_cast<std::uint64_t>(h.m);
    w[Block::CP2bar] = static_cast<std::uint64_t>(h.n);
    return w;
  case HomeoClass::Tag::SumS2xS2:
    w[Block::S2xS2] = static_cast<std::uint64_t>(h.n);
    return w;
  default:
    throw PreconditionError("class " + h.tag_name() + " has no positive-curvature word");
  }
}

bool Certificate::valid() const {
  for (const auto& b : blocks)
    if (const auto* op = std::get_if<OperatorEvidence>(&b.evidence); op && !(op->min_biorth > 0))
      return false;
  for (const auto& h : glue.hypotheses)
    if (!h.verified) return false;
  return !blocks.empty() && glue.hypotheses.size() == 4;
}

GlueRecord verify_glue(double tol) {
  GlueRecord record;
  record.statement =
      "positive biorthogonal curvature survives connected sums: surgery stability of a "
      "curvature condition given by an open, convex, O(4)-invariant cone containing the "
      "S3xR operator (codimension-4 surgery)";

  const CurvatureOperator s3xr = model_operator(Model::S3xR);
  const CurvatureOperator round = model_operator(Model::RoundSphere);
  const CurvatureOperator cp2 = model_operator(Model::CP2FubiniStudy);
  const ConeVerdict base = in_cone(s3xr, tol);
  Engine rng(kGlueSeed);

  // Openness: min biorth is 1-Lipschitz in the operator norm, so every
  // perturbation of norm min/2 must stay inside with min moved by <= min/2.
  {
    bool ok = base.status == ConeStatus::Inside;
    const double radius = 0.5 * base.min_value;
    double worst = 0.0;
    for (int i = 0; i < 16 && ok; ++i) {
      const CurvatureOperator e = bianchi_project(random_symmetric(6, rng), 4);
      const CurvatureOperator scaled = e * (radius / spectral_norm(e.matrix()));
      const ConeVerdict v = in_cone(s3xr + scaled, tol);
      worst = std::max(worst, std::abs(v.min_value - base.min_value));
      ok = v.status == ConeStatus::Inside && worst <= radius + 1e-12;
    }
    record.hypotheses.push_back(
        {"cone_open", ok,
         "16 random perturbations of operator norm " + fmt(radius) +
             " around S3xR stay inside; largest change of min biorth " + fmt(worst)});
  }

  // Convexity: min biorth is concave, checked along segments between the
  // evidence operators and a rotated copy of S3xR.
  {
    const CurvatureOperator rotated = conjugate(s3xr, random_orthogonal(4, rng));
    const std::array<CurvatureOperator, 4> ops{round, cp2, s3xr, rotated};
    bool ok = true;
    int checks = 0;
    for (std::size_t a = 0; a < ops.size(); ++a)
      for (std::size_t b = a + 1; b < ops.size(); ++b)
        for (double t : {0.25, 0.5, 0.75}) {
          const double ma = min_biorth_exact4(ops[a]).value;
          const double mb = min_biorth_exact4(ops[b]).value;
          const ConeVerdict v = in_cone(t * ops[a] + (1.0 - t) * ops[b], tol);
          ok = ok && v.status == ConeStatus::Inside &&
               v.min_value >= t * ma + (1.0 - t) * mb - 1e-12;
          ++checks;
        }
    record.hypotheses.push_back(
        {"cone_convex", ok,
         std::to_string(checks) +
             " convex combinations of round S4, CP2, S3xR and a rotated S3xR stay inside "
             "with min biorth above the interpolated minima"});
  }

  // O(4)-invariance, including orientation-reversing maps.
  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
      Matrix q = random_orthogonal(4, rng);
      if (i % 2 == 1) q.col(0) = -q.col(0);
      for (const CurvatureOperator* r : {&s3xr, &cp2}) {
        const double d =
            std::abs(min_biorth_exact4(conjugate(*r, q)).value - min_biorth_exact4(*r).value);
        worst = std::max(worst, d);
      }
    }
    ok = worst <= 1e-10;
    record.hypotheses.push_back(
        {"cone_O4_invariant", ok,
         "min biorth of S3xR and CP2 unchanged under 8 random orthogonal maps (4 "
         "orientation-reversing); largest change " +
             fmt(worst)});
  }

  record.hypotheses.push_back({"S3xR_inside", base.status == ConeStatus::Inside,
                               "min biorth of S3xR = " + fmt(base.min_value) + " > tol " +
                                   fmt(tol)});
  return record;
}

Certificate certificate(const SumWord& w, double tol) {
  require_fact_word(w, "certificate");
  if (!is_canonical(w)) throw PreconditionError("certificate needs a normalized word");

  Certificate cert;
  cert.glue = verify_glue(tol);
  const Matrix reflection = Eigen::Vector4d(1, 1, 1, -1).asDiagonal().toDenseMatrix();
  for (Block b : kAllBlocks) {
    for (std::uint64_t i = 0; i < w[b]; ++i) {
      switch (b) {
      case Block::S4:
        cert.blocks.push_back(
            {b, OperatorEvidence{Model::RoundSphere,
                                 min_biorth_exact4(model_operator(Model::RoundSphere)).value}});
        break;
      case Block::CP2:
        cert.blocks.push_back(
            {b, OperatorEvidence{Model::CP2FubiniStudy,
                                 min_biorth_exact4(model_operator(Model::CP2FubiniStudy)).value}});
        break;
      case Block::CP2bar:
        // Reversing orientation is a pull-back by a reflection.
        cert.blocks.push_back(
            {b, OperatorEvidence{
                    Model::CP2FubiniStudy,
                    min_biorth_exact4(conjugate(model_operator(Model::CP2FubiniStudy), reflection))
                        .value}});
        break;
      case Block::S2xS2:
        cert.blocks.push_back(
            {b, CitationEvidence{
                    "external:S2xS2-deformed-metric",
                    "published deformation of the product metric with positive biorthogonal "
                    "curvature; the product operator itself has min biorth " +
                        fmt(min_biorth_exact4(model_operator(Model::S2xS2Product)).value) +
                        " and is not evidence"}});
        break;
      default:
        break;
      }
    }
  }
  return cert;
}

} // namespace biorth
