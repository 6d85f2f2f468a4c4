#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace biorth {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense row-major square integer matrix.
struct IntMatrix {
  int size = 0;
  std::vector<Integer> data;

  IntMatrix() = default;
  explicit IntMatrix(int n) : size(n), data(static_cast<std::size_t>(n) * n) {}

  Integer& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * size + j]; }
  const Integer& operator()(int i, int j) const {
    return data[static_cast<std::size_t>(i) * size + j];
  }
  bool operator==(const IntMatrix&) const = default;

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<Integer>>& rows);
  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix transpose() const;
  bool is_symmetric() const;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
Integer determinant(const IntMatrix& m);

/// Coefficients c_0..c_n of det(x I - M), lowest degree first (c_n = 1).
std::vector<Integer> characteristic_polynomial(const IntMatrix& m);

struct SignCounts {
  int positive;
  int negative;
};

/// Real roots of a polynomial with only real roots, counted with multiplicity,
/// split by sign. Zero must not be a root. Uses Sturm sequences on the chain
/// p, gcd(p, p'), ... so that repeated roots are counted once per level.
SignCounts count_roots_by_sign(const std::vector<Integer>& coeffs);

/// Symmetric unimodular integer matrix; rank 0 is allowed (the form of S^4).
class IntersectionForm {
public:
  /// Throws InvalidForm for non-square or non-symmetric input and
  /// NotUnimodular (carrying the determinant) when det != +-1.
  static IntersectionForm from_matrix(IntMatrix m);
  static IntersectionForm from_rows(const std::vector<std::vector<Integer>>& rows);
  static IntersectionForm empty() { return IntersectionForm(IntMatrix()); }

  int rank() const { return m_.size; }
  const IntMatrix& matrix() const { return m_; }
  const Integer& operator()(int i, int j) const { return m_(i, j); }

  IntersectionForm negated() const;
  bool operator==(const IntersectionForm&) const = default;

private:
  explicit IntersectionForm(IntMatrix m) : m_(std::move(m)) {}
  friend IntersectionForm direct_sum(const IntersectionForm&, const IntersectionForm&);
  IntMatrix m_;
};

IntersectionForm direct_sum(const IntersectionForm& a, const IntersectionForm& b);

enum class Parity { Even, Odd };
enum class Definiteness { Positive, Negative, Indefinite, ZeroRank };

std::string to_string(Parity p);
std::string to_string(Definiteness d);

struct FormInvariants {
  int rank;
  int signature;
  int b_plus;
  int b_minus;
  Parity parity;
  Definiteness definiteness;
  Integer determinant;

  bool operator==(const FormInvariants&) const = default;
};

/// Exact invariants. The matrix is split into its connected blocks first; each
/// block contributes its Bareiss determinant and Sturm sign counts.
FormInvariants invariants(const IntersectionForm& q);

/// -signature/8
Rational a_hat(const IntersectionForm& q);
Rational a_hat(const FormInvariants& inv);

/// Homeomorphism class of a closed simply-connected 4-manifold with the given
/// form, restricted to the families relevant for smoothable manifolds.
struct HomeoClass {
  enum class Tag { S4, MixedCP2, SumS2xS2, E8Family, DefiniteNonDiagonal };

  Tag tag;
  // MixedCP2: m copies of CP2 and n of CP2bar. SumS2xS2: n copies.
  // E8Family: m is the signed E8 count, n the S2xS2 count.
  // DefiniteNonDiagonal: m is the rank, n unused.
  long long m = 0;
  long long n = 0;
  int signature = 0;
  Parity parity = Parity::Even;
  std::string caveat;

  /// Equality of tag and multiplicities; caveats are ignored.
  bool same_class(const HomeoClass& other) const {
    return tag == other.tag && m == other.m && n == other.n;
  }
  std::string tag_name() const;
  /// Connected-sum notation, e.g. "2*CP2 # CP2bar".
  std::string display() const;
};

HomeoClass serre_normal_form(const IntersectionForm& q, bool assume_smoothable);

enum class Answer { Yes, No, Conditional };
std::string to_string(Answer a);

struct PscAnswer {
  Answer answer;
  std::string reason;
};

/// Whether the class contains a manifold with positive scalar curvature.
PscAnswer admits_psc(const HomeoClass& h);

enum class BuiltinForm { One, MinusOne, H, E8 };

/// (1), (-1), the hyperbolic plane [[0,1],[1,0]] and the E8 Cartan matrix.
IntersectionForm builtin(BuiltinForm which);

} // namespace biorth
