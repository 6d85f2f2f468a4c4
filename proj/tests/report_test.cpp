#include <gtest/gtest.h>

#include "biorth/errors.hpp"
#include "biorth/report.hpp"
#include "biorth/sampling.hpp"

using namespace biorth;

namespace {

CurvatureSettings fast_settings() {
  CurvatureSettings s;
  s.minimize.restarts = 8;
  s.minimize.threads = 1;
  return s;
}

} // namespace

TEST(OperatorJson, RoundTripIsBitExact) {
  Engine rng(1);
  const auto r = conjugate(model_operator(Model::CP2FubiniStudy), random_orthogonal(4, rng));
  const Json doc = parse_document(operator_to_json(r).dump());
  EXPECT_EQ(operator_from_json(doc).matrix(), r.matrix());
}

TEST(OperatorJson, Errors) {
  EXPECT_THROW(operator_from_json(parse_document("[]")), InputError);
  EXPECT_THROW(operator_from_json(parse_document(R"({"dim": 4})")), InputError);
  EXPECT_THROW(operator_from_json(parse_document(R"({"dim": 2, "lambda2_matrix": [[1, 2]]})")),
               InputError);
  EXPECT_THROW(operator_from_json(parse_document(R"({"dim": 2, "lambda2_matrix": [["a"]]})")),
               InputError);
  EXPECT_THROW(parse_document("{"), InputError);
  Json asym = operator_to_json(model_operator(Model::RoundSphere));
  asym["lambda2_matrix"][0][1] = 0.5;
  EXPECT_THROW(operator_from_json(asym), InvalidOperator);
}

TEST(FormJson, RoundTripAndBigEntries) {
  const auto e8 = builtin(BuiltinForm::E8);
  EXPECT_EQ(form_from_json(form_to_json(e8)), e8);
  const Json big = parse_document(
      R"({"rank": 2, "matrix": [["123456789012345678901234567890", 1], [1, 0]]})");
  const auto q = form_from_json(big);
  EXPECT_EQ(q(0, 0), Integer("123456789012345678901234567890"));
  EXPECT_EQ(form_from_json(form_to_json(q)), q);
  EXPECT_THROW(form_from_json(parse_document(R"({"rank": 1, "matrix": [[1.5]]})")), InputError);
  EXPECT_THROW(form_from_json(parse_document(R"({"rank": 1, "matrix": [["x"]]})")), InputError);
  EXPECT_THROW(form_from_json(parse_document(R"({"rank": 1, "matrix": [[2]]})")), NotUnimodular);
}

TEST(CurvatureResults, S3xR) {
  const Json j = curvature_results(model_operator(Model::S3xR), fast_settings());
  EXPECT_EQ(j["dim"], 4);
  EXPECT_DOUBLE_EQ(j["scal"].get<double>(), 6.0);
  EXPECT_NEAR(j["min_biorth"]["value"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(j["min_biorth"]["method"], "exact4");
  EXPECT_EQ(j["cone"]["status"], "inside");
  EXPECT_NEAR(j["min_sec"]["value"].get<double>(), 0.0, 1e-8);
  EXPECT_FALSE(j.contains("oracle"));
}

TEST(CurvatureResults, FlatFiveAndSmallDimensions) {
  CurvatureSettings s = fast_settings();
  s.oracle_samples = 100;
  const Json flat = curvature_results(model_operator(Model::Flat, 5), s);
  EXPECT_EQ(flat["scal"].get<double>(), 0.0);
  EXPECT_EQ(flat["min_biorth"]["value"].get<double>(), 0.0);
  EXPECT_EQ(flat["min_biorth"]["method"], "minimizer");
  EXPECT_EQ(flat["cone"]["certified"], false);
  EXPECT_EQ(flat["oracle"]["value"].get<double>(), 0.0);
  const Json three = curvature_results(model_operator(Model::RoundSphere, 3), s);
  EXPECT_TRUE(three["min_biorth"].is_null());
  EXPECT_TRUE(three["cone"].is_null());
}

TEST(VerdictJson, Shape) {
  const Json j = verdict_to_json(classify_word(parse_word("E8 # S2xS2"), false));
  EXPECT_EQ(j["verdict"]["answer"], "no");
  EXPECT_EQ(j["a_hat"], "-1");
  EXPECT_TRUE(j["certificate"].is_null());
  EXPECT_EQ(j["homeo_class"]["tag"], "E8_family");
  const Json yes = verdict_to_json(classify_word(parse_word("S2xS2"), false));
  EXPECT_EQ(yes["certificate"]["valid"], true);
  EXPECT_EQ(yes["canonical_word"], "S2xS2");
}

TEST(Digest, KnownValues) {
  // FNV-1a 64 reference values
  EXPECT_EQ(digest_hex(""), "cbf29ce484222325");
  EXPECT_EQ(digest_hex("a"), "af63dc4c8601ec8c");
}

TEST(Dump, SortedKeysAndTrailingNewline) {
  const std::string text = dump_report(Json{{"b", 1}, {"a", 2}});
  EXPECT_EQ(text, "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}
