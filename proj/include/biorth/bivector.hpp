#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace biorth {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kFrameTolerance = 1e-12;
inline constexpr double kFrameRepairTolerance = 1e-8;

/// Dimension of the exterior square, n(n-1)/2.
constexpr int bivector_dim(int n) { return n * (n - 1) / 2; }

/// Slot of e_i ^ e_j (0-based, i < j) in the lexicographic basis
/// e_0^e_1, e_0^e_2, ..., e_{n-2}^e_{n-1}.
constexpr int pair_index(int n, int i, int j) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Inverse of pair_index.
std::pair<int, int> index_pair(int n, int slot);

/// Element of the exterior square of R^n in the lexicographic basis, which is
/// taken to be orthonormal (no 1/2 factor in the inner product).
class Bivector {
public:
  explicit Bivector(int n);
  Bivector(int n, Vector coeffs);

  /// e_i ^ e_j for any i != j (sign flips when i > j).
  static Bivector basis(int n, int i, int j);

  int dim() const { return n_; }
  const Vector& coeffs() const { return coeffs_; }

  /// Antisymmetric component b_ij, valid for any ordering of i, j.
  double operator()(int i, int j) const;

  double dot(const Bivector& other) const;
  double squared_norm() const { return coeffs_.squaredNorm(); }
  double norm() const { return coeffs_.norm(); }

  /// The n x n antisymmetric matrix B with B_ij = b_ij.
  Matrix as_antisymmetric() const;

  Bivector operator+(const Bivector& other) const;
  Bivector operator-(const Bivector& other) const;
  Bivector operator-() const;
  Bivector operator*(double s) const;
  friend Bivector operator*(double s, const Bivector& b) { return b * s; }

private:
  int n_;
  Vector coeffs_;
};

Bivector wedge(const Vector& x, const Vector& y);

/// Hodge star on the exterior square of R^4 with e1^e2^e3^e4 positive.
Bivector hodge_star(const Bivector& b);

/// Largest |(b ^ b)_{ijkl}| over i<j<k<l. For n = 4 this is
/// 2 |b12 b34 - b13 b24 + b14 b23|; zero for n < 4.
double plucker_defect(const Bivector& b);

bool is_decomposable(const Bivector& b, double tol);

struct SelfDualSplit {
  Bivector self_dual;
  Bivector anti_self_dual;
};

SelfDualSplit self_dual_parts(const Bivector& b);

/// Oriented 2-plane in R^n carried by an orthonormal frame (x, y).
class Plane {
public:
  /// Accepts frames with orthonormality defect <= kFrameTolerance as given,
  /// re-orthonormalizes up to kFrameRepairTolerance, throws FrameError above.
  static Plane from_frame(Vector x, Vector y);

  /// Orthonormalizes an arbitrary linearly independent pair (same span and
  /// orientation).
  static Plane span(const Vector& u, const Vector& v);

  /// Plane of a nonzero decomposable bivector; orientation matches b.
  static Plane from_bivector(const Bivector& b, double tol = 1e-9);

  /// span(e_i, e_j), 0-based.
  static Plane coordinate(int n, int i, int j);

  int dim() const { return static_cast<int>(x_.size()); }
  const Vector& x() const { return x_; }
  const Vector& y() const { return y_; }

  /// Unit decomposable bivector x ^ y.
  Bivector bivector() const { return wedge(x_, y_); }

  /// Orthogonal projector onto the span.
  Matrix projector() const;

  bool same_span(const Plane& other, double tol = 1e-10) const;

private:
  Plane(Vector x, Vector y) : x_(std::move(x)), y_(std::move(y)) {}
  Vector x_;
  Vector y_;
};

/// max(| |x|-1 |, | |y|-1 |, |<x,y>|)
double frame_defect(const Vector& x, const Vector& y);

/// Orthogonal complement of a plane in R^4, oriented so that its bivector is
/// the Hodge star of the input bivector.
Plane orthogonal_plane(const Plane& p);

/// Rotation-invariant random planes (orthonormalized Gaussian pairs).
std::vector<Plane> sample_planes(int n, std::size_t count, std::uint64_t seed);

} // namespace biorth
