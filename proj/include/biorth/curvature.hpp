#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "biorth/bivector.hpp"

namespace biorth {

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kBianchiTolerance = 1e-10;
inline constexpr double kConeTolerance = 1e-9;
inline constexpr double kOrthogonalityTolerance = 1e-10;

/// Largest |m_ab - m_ba|.
double symmetry_defect(const Matrix& mat);

/// Largest |R_ijkl + R_iklj + R_iljk| over i<j<k<l, where
/// R_ijkl = <mat(e_i^e_j), e_k^e_l>.
double bianchi_defect(const Matrix& mat, int n);

/// Symmetric operator on the exterior square of R^n that satisfies the first
/// Bianchi identity. The unit round sphere is the identity.
class CurvatureOperator {
public:
  /// Validates size, symmetry and the Bianchi identity; throws InvalidOperator
  /// carrying the offending defect.
  static CurvatureOperator from_matrix(const Matrix& mat, int n);

  static CurvatureOperator zero(int n);

  int dim() const { return n_; }
  const Matrix& matrix() const { return mat_; }

  /// R_ijkl with the antisymmetries of each index pair applied.
  double component(int i, int j, int k, int l) const;

  /// <R b, b>
  double quadratic_form(const Bivector& b) const;

  CurvatureOperator operator+(const CurvatureOperator& other) const;
  CurvatureOperator operator*(double s) const;
  friend CurvatureOperator operator*(double s, const CurvatureOperator& r) {
    return r * s;
  }

private:
  CurvatureOperator(int n, Matrix mat) : n_(n), mat_(std::move(mat)) {}
  int n_;
  Matrix mat_;
};

/// Frobenius-nearest symmetric matrix with vanishing Bianchi defect: each
/// 4-subset's Bianchi sum t is removed along its own pattern S, M - (t/3) S.
CurvatureOperator bianchi_project(const Matrix& mat, int n);

/// Sectional curvature <R(x^y), x^y> of the plane.
double sec(const CurvatureOperator& r, const Plane& p);

/// Biorthogonal curvature: average of sec over a plane and its orthogonal
/// complement in R^4.
double biorth(const CurvatureOperator& r, const Plane& p);

/// Same as biorth, from a unit decomposable bivector: (<Rb,b> + <R*b,*b>)/2.
double biorth(const CurvatureOperator& r, const Bivector& b);

/// Sum of sec over ordered pairs of distinct basis vectors, 2 tr(mat).
double scal(const CurvatureOperator& r);

/// Ric(x, y) = sum_i <R(x^e_i), y^e_i>; tr(Ric) = scal.
Matrix ricci(const CurvatureOperator& r);

struct ExtremalPlane {
  double value;
  Plane witness;
};

/// Orthonormal basis of the self-dual (first three columns) and anti-self-dual
/// (last three) bivectors of R^4, expressed in the lexicographic basis.
Matrix self_dual_basis();

/// Exact minimum of biorthogonal curvature over all planes in R^4.
///
/// In the self-dual/anti-self-dual basis R = [[A, B], [B^T, C]]. A unit
/// decomposable bivector splits as (a + c)/sqrt(2) with unit a, c, and its
/// Hodge dual is (a - c)/sqrt(2), so the B terms cancel in the average:
/// biorth = (a^T A a + c^T C c)/2. Every unit pair (a, c) occurs, hence the
/// minimum is (lambda_min(A) + lambda_min(C))/2.
ExtremalPlane min_biorth_exact4(const CurvatureOperator& r);

enum class ConeStatus { Inside, Boundary, Outside };

std::string_view to_string(ConeStatus status);

/// Inside iff value > tol, boundary iff |value| <= tol, outside otherwise.
ConeStatus cone_status(double min_value, double tol);

struct ConeVerdict {
  ConeStatus status;
  double min_value;
  Plane witness;
  double tol;
};

/// Membership in the open cone of operators with positive biorthogonal
/// curvature (n = 4).
ConeVerdict in_cone(const CurvatureOperator& r, double tol = kConeTolerance);

enum class Model {
  Flat,
  RoundSphere,
  S3xR,
  S2xR2,
  S2xS2Product,
  CP2FubiniStudy,
  SphereTimesLine,
};

inline constexpr std::array<Model, 7> kAllModels{
    Model::Flat,         Model::RoundSphere,    Model::S3xR,
    Model::S2xR2,        Model::S2xS2Product,   Model::CP2FubiniStudy,
    Model::SphereTimesLine};

std::string_view model_name(Model model);
std::optional<Model> model_from_name(std::string_view name);

/// True for models whose dimension is a free parameter.
bool model_takes_dimension(Model model);

/// Curvature operator of a model space. Dimension-parametric models default to
/// n = 4; the others are four-dimensional and reject any other n.
CurvatureOperator model_operator(Model model, std::optional<int> n = std::nullopt);

/// Riemannian product of unit round spheres of the given dimensions (each
/// >= 2) with a flat factor; the sphere coordinates come first.
CurvatureOperator product_operator(std::span<const int> sphere_dims, int flat_dim);

/// Induced action of a linear map on the exterior square:
/// column (k,l) is Q e_k ^ Q e_l.
Matrix lambda2(const Matrix& q);

/// Pull-back of R by the isometry Q: sec of the result at a plane equals sec
/// of R at its image under Q.
CurvatureOperator conjugate(const CurvatureOperator& r, const Matrix& q);

} // namespace biorth
