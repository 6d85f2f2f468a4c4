#include <gtest/gtest.h>

#include <cmath>

#include "biorth/curvature.hpp"
#include "biorth/errors.hpp"
#include "biorth/minimizer.hpp"
#include "biorth/sampling.hpp"
#include "oracle.hpp"

using namespace biorth;

namespace {

CurvatureOperator random_operator(int n, Engine& rng) {
  return bianchi_project(random_symmetric(bivector_dim(n), rng), n);
}

Matrix reflection4() {
  Matrix q = Matrix::Identity(4, 4);
  q(3, 3) = -1.0;
  return q;
}

} // namespace

TEST(Validation, RejectsWrongSize) {
  try {
    CurvatureOperator::from_matrix(Matrix::Identity(5, 5), 4);
    FAIL();
  } catch (const InvalidOperator& e) {
    EXPECT_EQ(e.kind(), InvalidOperator::Kind::Size);
  }
}

TEST(Validation, RejectsAsymmetry) {
  Matrix m = Matrix::Identity(6, 6);
  m(0, 1) = 1e-6;
  try {
    CurvatureOperator::from_matrix(m, 4);
    FAIL();
  } catch (const InvalidOperator& e) {
    EXPECT_EQ(e.kind(), InvalidOperator::Kind::Symmetry);
    EXPECT_DOUBLE_EQ(e.defect(), 1e-6);
  }
}

TEST(Validation, BianchiViolationReportsDefect) {
  // a single unit entry at (e12, e34) leaves R_1234 = 1 alone in the cyclic sum
  Matrix m = Matrix::Zero(6, 6);
  m(0, 5) = m(5, 0) = 1.0;
  try {
    CurvatureOperator::from_matrix(m, 4);
    FAIL();
  } catch (const InvalidOperator& e) {
    EXPECT_EQ(e.kind(), InvalidOperator::Kind::Bianchi);
    EXPECT_DOUBLE_EQ(e.defect(), 1.0);
  }
  // the (e12,e34)+(e13,-e24)... combination of the Hodge star has defect 3
  Matrix star = Matrix::Zero(6, 6);
  star(0, 5) = star(5, 0) = 1;
  star(1, 4) = star(4, 1) = -1;
  star(2, 3) = star(3, 2) = 1;
  EXPECT_DOUBLE_EQ(bianchi_defect(star, 4), 3.0);
}

TEST(Validation, BianchiIsVacuousBelowFour) {
  Engine rng(2);
  EXPECT_NO_THROW(CurvatureOperator::from_matrix(random_symmetric(3, rng), 3));
}

TEST(BianchiProject, IdempotentAndFixesValidOperators) {
  Engine rng(4);
  for (int n = 4; n <= 6; ++n) {
    const Matrix m = random_symmetric(bivector_dim(n), rng);
    const CurvatureOperator p = bianchi_project(m, n);
    EXPECT_LT(bianchi_defect(p.matrix(), n), 1e-14);
    EXPECT_LT((bianchi_project(p.matrix(), n).matrix() - p.matrix()).norm(), 1e-14);
    // the removed part is orthogonal to every valid operator
    const CurvatureOperator other = random_operator(n, rng);
    EXPECT_NEAR(((m - p.matrix()).array() * other.matrix().array()).sum(), 0.0, 1e-12);
  }
  const Matrix id = Matrix::Identity(6, 6);
  EXPECT_EQ(bianchi_project(id, 4).matrix(), id);
}

TEST(Components, Symmetries) {
  Engine rng(6);
  const CurvatureOperator r = random_operator(5, rng);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k)
        for (int l = 0; l < 5; ++l) {
          const double v = r.component(i, j, k, l);
          EXPECT_DOUBLE_EQ(v, -r.component(j, i, k, l));
          EXPECT_DOUBLE_EQ(v, -r.component(i, j, l, k));
          EXPECT_DOUBLE_EQ(v, r.component(k, l, i, j));
          EXPECT_NEAR(v + r.component(i, k, l, j) + r.component(i, l, j, k), 0.0, 1e-14);
        }
}

TEST(Sec, MatchesComponentContraction) {
  Engine rng(7);
  const CurvatureOperator r = random_operator(5, rng);
  for (const Plane& p : sample_planes(5, 30, 3)) {
    double s = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k)
          for (int l = 0; l < 5; ++l)
            s += r.component(i, j, k, l) * p.x()(i) * p.y()(j) * p.x()(k) * p.y()(l);
    EXPECT_NEAR(sec(r, p), s, 1e-12);
  }
}

TEST(Models, RoundSphereAndFlat) {
  const auto round = model_operator(Model::RoundSphere);
  const auto flat = model_operator(Model::Flat);
  for (const Plane& p : sample_planes(4, 50, 5)) {
    EXPECT_NEAR(sec(round, p), 1.0, 1e-14);
    EXPECT_NEAR(biorth::biorth(round, p), 1.0, 1e-14);
    EXPECT_EQ(sec(flat, p), 0.0);
  }
  EXPECT_DOUBLE_EQ(scal(round), 12.0);
  EXPECT_DOUBLE_EQ(scal(model_operator(Model::RoundSphere, 6)), 30.0);
}

TEST(Models, ExactMinimaTable) {
  struct Row {
    Model model;
    double expected;
  };
  const Row rows[] = {{Model::Flat, 0.0},         {Model::RoundSphere, 1.0},
                      {Model::S3xR, 0.5},         {Model::S2xR2, 0.0},
                      {Model::S2xS2Product, 0.0}, {Model::CP2FubiniStudy, 1.0}};
  for (const auto& row : rows) {
    const auto r = model_operator(row.model);
    EXPECT_NEAR(min_biorth_exact4(r).value, row.expected, 1e-12) << model_name(row.model);
    // the witness attains the value
    const auto ex = min_biorth_exact4(r);
    EXPECT_NEAR(biorth::biorth(r, ex.witness), ex.value, 1e-12) << model_name(row.model);
    // an independent sampled upper bound never beats the exact minimum
    const auto s = oracle::sample_curvature4(r, 20000, 17);
    EXPECT_GE(s.min_biorth, ex.value - 1e-12);
    EXPECT_LT(s.min_biorth - ex.value, 2e-2) << model_name(row.model);
  }
}

TEST(Models, CP2Curvatures) {
  const auto r = model_operator(Model::CP2FubiniStudy);
  EXPECT_DOUBLE_EQ(scal(r), 24.0);
  const auto s = oracle::sample_curvature4(r, 20000, 3);
  EXPECT_GE(s.min_sec, 1.0 - 1e-12);
  EXPECT_LE(s.max_sec, 4.0 + 1e-12);
  EXPECT_LT(s.min_sec, 1.05);
  EXPECT_GT(s.max_sec, 3.95);
  EXPECT_TRUE(ricci(r).isApprox(6.0 * Matrix::Identity(4, 4), 1e-14));
  // holomorphic plane span(e1, J e1) and a totally real plane
  EXPECT_NEAR(sec(r, Plane::coordinate(4, 0, 1)), 4.0, 1e-14);
  EXPECT_NEAR(sec(r, Plane::coordinate(4, 0, 2)), 1.0, 1e-14);
}

TEST(Models, RicciOfProducts) {
  Matrix expected = Matrix::Zero(4, 4);
  expected.diagonal() << 2, 2, 2, 0;
  EXPECT_TRUE(ricci(model_operator(Model::S3xR)).isApprox(expected));
  expected.diagonal() << 1, 1, 1, 1;
  EXPECT_TRUE(ricci(model_operator(Model::S2xS2Product)).isApprox(expected));
  expected.diagonal() << 1, 1, 0, 0;
  EXPECT_TRUE(ricci(model_operator(Model::S2xR2)).isApprox(expected));
}

TEST(Models, ScalIsTraceOfRicci) {
  Engine rng(12);
  for (int n = 2; n <= 6; ++n) {
    const auto r = random_operator(n, rng);
    EXPECT_NEAR(ricci(r).trace(), scal(r), 1e-12);
    double pairs = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) pairs += sec(r, Plane::coordinate(n, std::min(i, j), std::max(i, j)));
    EXPECT_NEAR(pairs, scal(r), 1e-12);
  }
}

TEST(Models, NamesAndDimensions) {
  for (auto m : kAllModels) EXPECT_EQ(model_from_name(model_name(m)), m);
  EXPECT_FALSE(model_from_name("nope"));
  EXPECT_THROW(model_operator(Model::CP2FubiniStudy, 5), DimensionError);
  EXPECT_EQ(model_operator(Model::SphereTimesLine, 5).dim(), 5);
  const int s3[] = {3};
  EXPECT_EQ(product_operator(s3, 1).matrix(), model_operator(Model::S3xR).matrix());
}

TEST(Exact4, AgreesWithOrthogonalPlaneRoute) {
  Engine rng(13);
  for (int k = 0; k < 20; ++k) {
    const auto r = random_operator(4, rng);
    const auto ex = min_biorth_exact4(r);
    const Plane q = orthogonal_plane(ex.witness);
    EXPECT_NEAR(ex.value, 0.5 * (sec(r, ex.witness) + sec(r, q)), 1e-12);
    for (const Plane& p : sample_planes(4, 200, static_cast<std::uint64_t>(k)))
      EXPECT_GE(biorth::biorth(r, p), ex.value - 1e-12);
  }
}

TEST(Exact4, RejectsOtherDimensions) {
  EXPECT_THROW(min_biorth_exact4(model_operator(Model::RoundSphere, 5)), DimensionError);
}

TEST(Cone, StatusThresholds) {
  EXPECT_EQ(cone_status(1.0, 1e-9), ConeStatus::Inside);
  EXPECT_EQ(cone_status(1e-10, 1e-9), ConeStatus::Boundary);
  EXPECT_EQ(cone_status(-1e-9, 1e-9), ConeStatus::Boundary);
  EXPECT_EQ(cone_status(-1e-8, 1e-9), ConeStatus::Outside);
  EXPECT_EQ(in_cone(model_operator(Model::S3xR)).status, ConeStatus::Inside);
  EXPECT_EQ(in_cone(model_operator(Model::S2xS2Product)).status, ConeStatus::Boundary);
  EXPECT_EQ(in_cone(-1.0 * model_operator(Model::RoundSphere)).status, ConeStatus::Outside);
}

TEST(Conjugation, PreservesCurvatureQuantities) {
  Engine rng(14);
  for (int k = 0; k < 20; ++k) {
    const auto r = random_operator(4, rng);
    const Matrix q = random_orthogonal(4, rng);
    const auto c = conjugate(r, q);
    EXPECT_LT(bianchi_defect(c.matrix(), 4), 1e-12);
    EXPECT_NEAR(min_biorth_exact4(c).value, min_biorth_exact4(r).value, 1e-12);
    EXPECT_NEAR(scal(c), scal(r), 1e-12);
    for (const Plane& p : sample_planes(4, 10, 100 + static_cast<std::uint64_t>(k))) {
      const Plane image = Plane::from_frame(q * p.x(), q * p.y());
      EXPECT_NEAR(sec(c, p), sec(r, image), 1e-12);
    }
  }
  // orientation reversal preserves the minimum too
  const auto cp2 = model_operator(Model::CP2FubiniStudy);
  EXPECT_NEAR(min_biorth_exact4(conjugate(cp2, reflection4())).value, 1.0, 1e-12);
  EXPECT_THROW(conjugate(cp2, 2.0 * Matrix::Identity(4, 4)), PreconditionError);
}

TEST(Conjugation, Lambda2IsMultiplicative) {
  Engine rng(15);
  const Matrix a = random_orthogonal(5, rng), b = random_orthogonal(5, rng);
  EXPECT_LT((lambda2(a * b) - lambda2(a) * lambda2(b)).norm(), 1e-13);
  EXPECT_LT((lambda2(a).transpose() * lambda2(a) - Matrix::Identity(10, 10)).norm(), 1e-13);
}

TEST(Cone, ScalingAndSums) {
  const auto s3r = model_operator(Model::S3xR);
  EXPECT_NEAR(min_biorth_exact4(3.0 * s3r).value, 1.5, 1e-12);
  const auto sum = s3r + model_operator(Model::CP2FubiniStudy);
  EXPECT_GE(min_biorth_exact4(sum).value, 0.5 + 1.0 - 1e-12);
}
