#include <gtest/gtest.h>

#include <random>

#include <Eigen/Dense>

#include "biorth/errors.hpp"
#include "biorth/forms.hpp"

using namespace biorth;

namespace {

IntersectionForm form(const std::vector<std::vector<Integer>>& rows) {
  return IntersectionForm::from_rows(rows);
}

IntersectionForm diag(const std::vector<int>& d) {
  IntMatrix m(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return IntersectionForm::from_matrix(m);
}

IntersectionForm sum_of(std::initializer_list<IntersectionForm> parts) {
  IntersectionForm out = IntersectionForm::empty();
  for (const auto& p : parts) out = direct_sum(out, p);
  return out;
}

// Unimodular P: product of elementary row operations and signed swaps.
IntMatrix random_unimodular(int n, std::mt19937_64& rng) {
  IntMatrix p = IntMatrix::identity(n);
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2), op(0, 3);
  for (int step = 0; step < 3 * n; ++step) {
    const int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    IntMatrix e = IntMatrix::identity(n);
    switch (op(rng)) {
    case 0:
      e(i, i) = 0;
      e(j, j) = 0;
      e(i, j) = 1;
      e(j, i) = 1;
      break;
    case 1:
      e(i, i) = -1;
      break;
    default:
      e(i, j) = coef(rng);
    }
    p = e * p;
  }
  return p;
}

// Floating-point reference for small well-conditioned forms.
std::pair<int, int> float_signs(const IntersectionForm& q) {
  const int n = q.rank();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = q(i, j).convert_to<double>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  int pos = 0, neg = 0;
  for (int i = 0; i < n; ++i) (es.eigenvalues()(i) > 0 ? pos : neg)++;
  return {pos, neg};
}

} // namespace

TEST(IntMatrix, DeterminantExamples) {
  EXPECT_EQ(determinant(IntMatrix::identity(5)), 1);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{2, 1}, {1, 1}})), 1);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{0, 1}, {1, 0}})), -1);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})), 0);
  EXPECT_EQ(determinant(IntMatrix::from_rows({{0, 0, 2}, {0, 3, 0}, {5, 0, 0}})), -30);
  EXPECT_EQ(determinant(IntMatrix()), 1);
}

TEST(IntMatrix, CharacteristicPolynomial) {
  // [[2,1],[1,2]]: x^2 - 4x + 3
  const auto c = characteristic_polynomial(IntMatrix::from_rows({{2, 1}, {1, 2}}));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], 3);
  EXPECT_EQ(c[1], -4);
  EXPECT_EQ(c[2], 1);
}

TEST(IntMatrix, SturmCountsRepeatedRoots) {
  // (x-1)^3 (x+2)^2 = x^5 + x^4 - 5x^3 - x^2 + 8x - 4
  const auto s = count_roots_by_sign({-4, 8, -1, -5, 1, 1});
  EXPECT_EQ(s.positive, 3);
  EXPECT_EQ(s.negative, 2);
}

TEST(Form, Validation) {
  EXPECT_THROW(form({{1, 2}, {3, 1}}), InvalidForm);
  try {
    form({{2, 0}, {0, 1}});
    FAIL();
  } catch (const NotUnimodular& e) {
    EXPECT_EQ(e.determinant(), "2");
  }
  EXPECT_THROW(IntMatrix::from_rows({{1, 0}, {0}}), InvalidForm);
  EXPECT_EQ(IntersectionForm::empty().rank(), 0);
}

TEST(Invariants, Examples) {
  const auto h = builtin(BuiltinForm::H);
  const auto inv_h = invariants(h);
  EXPECT_EQ(inv_h.rank, 2);
  EXPECT_EQ(inv_h.signature, 0);
  EXPECT_EQ(inv_h.parity, Parity::Even);
  EXPECT_EQ(inv_h.definiteness, Definiteness::Indefinite);
  EXPECT_EQ(inv_h.determinant, -1);

  const auto e8 = invariants(builtin(BuiltinForm::E8));
  EXPECT_EQ(e8.rank, 8);
  EXPECT_EQ(e8.signature, 8);
  EXPECT_EQ(e8.parity, Parity::Even);
  EXPECT_EQ(e8.definiteness, Definiteness::Positive);
  EXPECT_EQ(e8.determinant, 1);

  const auto mixed = invariants(diag({1, 1, -1}));
  EXPECT_EQ(mixed.signature, 1);
  EXPECT_EQ(mixed.parity, Parity::Odd);
  EXPECT_EQ(mixed.b_plus, 2);
  EXPECT_EQ(mixed.b_minus, 1);

  const auto zero = invariants(IntersectionForm::empty());
  EXPECT_EQ(zero.definiteness, Definiteness::ZeroRank);
  EXPECT_EQ(zero.determinant, 1);
}

TEST(Invariants, E8AgainstFloatingEigenvalues) {
  const auto e8 = builtin(BuiltinForm::E8);
  EXPECT_EQ(float_signs(e8), std::make_pair(8, 0));
  // every diagonal entry 2, 7 edges of a tree
  int edges = 0;
  for (int i = 0; i < 8; ++i) {
    EXPECT_EQ(e8(i, i), 2);
    for (int j = i + 1; j < 8; ++j) edges += e8(i, j) != 0;
  }
  EXPECT_EQ(edges, 7);
}

TEST(Invariants, CongruenceFuzz) {
  std::mt19937_64 rng(20);
  const IntersectionForm pieces[] = {diag({1}), diag({-1}), builtin(BuiltinForm::H),
                                     builtin(BuiltinForm::E8), builtin(BuiltinForm::E8).negated()};
  std::uniform_int_distribution<int> pick(0, 4);
  for (int trial = 0; trial < 60; ++trial) {
    IntersectionForm d = IntersectionForm::empty();
    while (d.rank() < 2 || (d.rank() < 12 && pick(rng) < 3)) {
      const auto& p = pieces[pick(rng)];
      if (d.rank() + p.rank() > 12) break;
      d = direct_sum(d, p);
    }
    const IntMatrix p = random_unimodular(d.rank(), rng);
    const auto congruent = IntersectionForm::from_matrix(p * d.matrix() * p.transpose());
    const auto a = invariants(d), b = invariants(congruent);
    EXPECT_EQ(a.rank, b.rank);
    EXPECT_EQ(a.signature, b.signature);
    EXPECT_EQ(a.parity, b.parity);
    EXPECT_EQ(a.definiteness, b.definiteness);
    EXPECT_EQ(a.determinant, b.determinant);
    EXPECT_EQ(float_signs(d), std::make_pair(a.b_plus, a.b_minus));
  }
}

TEST(Invariants, BigEntriesStayExact) {
  // [[a, 1], [1, 0]] has determinant -1 for any a
  const Integer big("123456789012345678901234567890");
  const auto q = form({{big, 1}, {1, 0}});
  const auto inv = invariants(q);
  EXPECT_EQ(inv.determinant, -1);
  EXPECT_EQ(inv.signature, 0);
  EXPECT_EQ(inv.parity, Parity::Even);
}

TEST(AHat, MinusSignatureOverEight) {
  EXPECT_EQ(a_hat(builtin(BuiltinForm::E8)), -1);
  EXPECT_EQ(a_hat(sum_of({builtin(BuiltinForm::E8).negated(), builtin(BuiltinForm::E8).negated(),
                          builtin(BuiltinForm::H)})),
            2);
  EXPECT_EQ(a_hat(diag({1, 1, 1})), Rational(-3, 8));
}

TEST(Serre, Classification) {
  EXPECT_EQ(serre_normal_form(IntersectionForm::empty(), false).tag, HomeoClass::Tag::S4);

  const auto mixed = serre_normal_form(diag({1, 1, -1}), false);
  EXPECT_EQ(mixed.tag, HomeoClass::Tag::MixedCP2);
  EXPECT_EQ(mixed.m, 2);
  EXPECT_EQ(mixed.n, 1);

  const auto h = serre_normal_form(sum_of({builtin(BuiltinForm::H), builtin(BuiltinForm::H)}), false);
  EXPECT_EQ(h.tag, HomeoClass::Tag::SumS2xS2);
  EXPECT_EQ(h.n, 2);

  const auto k3 = serre_normal_form(
      sum_of({builtin(BuiltinForm::E8).negated(), builtin(BuiltinForm::E8).negated(),
              builtin(BuiltinForm::H), builtin(BuiltinForm::H), builtin(BuiltinForm::H)}),
      false);
  EXPECT_EQ(k3.tag, HomeoClass::Tag::E8Family);
  EXPECT_EQ(k3.m, -2);
  EXPECT_EQ(k3.n, 3);

  // odd indefinite, off-diagonal: [[1,1],[1,0]] ~ (1) + (-1)
  const auto off = serre_normal_form(form({{1, 1}, {1, 0}}), false);
  EXPECT_EQ(off.tag, HomeoClass::Tag::MixedCP2);
  EXPECT_EQ(off.m, 1);
  EXPECT_EQ(off.n, 1);
}

TEST(Serre, DefiniteForms) {
  const auto e8 = serre_normal_form(builtin(BuiltinForm::E8), false);
  EXPECT_EQ(e8.tag, HomeoClass::Tag::DefiniteNonDiagonal);
  EXPECT_FALSE(e8.caveat.empty());

  const auto id = serre_normal_form(diag({-1, -1}), false);
  EXPECT_EQ(id.tag, HomeoClass::Tag::MixedCP2);
  EXPECT_EQ(id.n, 2);

  // odd positive definite, not literally diagonal: [[2,1],[1,1]] ~ I_2
  const auto q = form({{2, 1}, {1, 1}});
  EXPECT_EQ(serre_normal_form(q, false).tag, HomeoClass::Tag::DefiniteNonDiagonal);
  const auto smooth = serre_normal_form(q, true);
  EXPECT_EQ(smooth.tag, HomeoClass::Tag::MixedCP2);
  EXPECT_EQ(smooth.m, 2);
  EXPECT_EQ(smooth.n, 0);
  EXPECT_FALSE(smooth.caveat.empty());
}

TEST(Psc, SoundOnTags) {
  EXPECT_EQ(admits_psc(serre_normal_form(diag({1, -1}), false)).answer, Answer::Yes);
  EXPECT_EQ(admits_psc(serre_normal_form(IntersectionForm::empty(), false)).answer, Answer::Yes);
  EXPECT_EQ(admits_psc(serre_normal_form(builtin(BuiltinForm::H), false)).answer, Answer::Yes);
  const auto k3 = sum_of({builtin(BuiltinForm::E8).negated(), builtin(BuiltinForm::E8).negated(),
                          builtin(BuiltinForm::H), builtin(BuiltinForm::H), builtin(BuiltinForm::H)});
  const auto no = admits_psc(serre_normal_form(k3, false));
  EXPECT_EQ(no.answer, Answer::No);
  EXPECT_NE(no.reason.find("spin"), std::string::npos);
  EXPECT_EQ(admits_psc(serre_normal_form(builtin(BuiltinForm::E8), false)).answer, Answer::No);
  EXPECT_EQ(admits_psc(serre_normal_form(form({{2, 1}, {1, 1}}), false)).answer,
            Answer::Conditional);
}

TEST(Serre, DisplayNotation) {
  EXPECT_EQ(serre_normal_form(diag({1, 1, -1}), false).display(), "2*CP2 # CP2bar");
  EXPECT_EQ(serre_normal_form(IntersectionForm::empty(), false).display(), "S4");
}
