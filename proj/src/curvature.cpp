#include "biorth/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "biorth/errors.hpp"

namespace biorth {
namespace {

void require_dim4(int n, const char* op) {
  if (n != 4)
    throw DimensionError(std::string(op) + " requires n = 4, got n = " +
                         std::to_string(n));
}

void require_size(const Matrix& mat, int n) {
  if (n < 2) throw InvalidOperator(InvalidOperator::Kind::Size, "operators need n >= 2", 0.0);
  const int size = bivector_dim(n);
  if (mat.rows() != size || mat.cols() != size)
    throw InvalidOperator(InvalidOperator::Kind::Size,
                          "operator matrix must be " + std::to_string(size) + "x" +
                              std::to_string(size) + " for n = " + std::to_string(n),
                          0.0);
}

void require_symmetric(const Matrix& mat) {
  const double defect = symmetry_defect(mat);
  if (!(defect <= kSymmetryTolerance))
    throw InvalidOperator(InvalidOperator::Kind::Symmetry,
                          "operator matrix is not symmetric (defect " +
                              std::to_string(defect) + ")",
                          defect);
}

double bianchi_sum(const Matrix& m, int n, int i, int j, int k, int l) {
  return m(pair_index(n, i, j), pair_index(n, k, l)) -
         m(pair_index(n, i, k), pair_index(n, j, l)) +
         m(pair_index(n, i, l), pair_index(n, j, k));
}

template <typename F> void for_each_quadruple(int n, F&& f) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) f(i, j, k, l);
}

// Signed slot of e_i ^ e_j: (slot, +1/-1), or slot -1 when i == j.
std::pair<int, double> signed_slot(int n, int i, int j) {
  if (i == j) return {-1, 0.0};
  return i < j ? std::pair{pair_index(n, i, j), 1.0}
               : std::pair{pair_index(n, j, i), -1.0};
}

} // namespace

double symmetry_defect(const Matrix& mat) {
  if (mat.rows() != mat.cols()) return std::numeric_limits<double>::infinity();
  if (mat.size() == 0) return 0.0;
  return (mat - mat.transpose()).cwiseAbs().maxCoeff();
}

double bianchi_defect(const Matrix& mat, int n) {
  double worst = 0.0;
  for_each_quadruple(n, [&](int i, int j, int k, int l) {
    worst = std::max(worst, std::abs(bianchi_sum(mat, n, i, j, k, l)));
  });
  return worst;
}

CurvatureOperator CurvatureOperator::from_matrix(const Matrix& mat, int n) {
  require_size(mat, n);
  require_symmetric(mat);
  const double defect = bianchi_defect(mat, n);
  if (!(defect <= kBianchiTolerance))
    throw InvalidOperator(InvalidOperator::Kind::Bianchi,
                          "operator violates the first Bianchi identity (defect " +
                              std::to_string(defect) + ")",
                          defect);
  return CurvatureOperator(n, 0.5 * (mat + mat.transpose()));
}

CurvatureOperator CurvatureOperator::zero(int n) {
  if (n < 2) throw DimensionError("operators need n >= 2");
  const int size = bivector_dim(n);
  return CurvatureOperator(n, Matrix::Zero(size, size));
}

double CurvatureOperator::component(int i, int j, int k, int l) const {
  const auto [a, sa] = signed_slot(n_, i, j);
  const auto [b, sb] = signed_slot(n_, k, l);
  if (a < 0 || b < 0) return 0.0;
  return sa * sb * mat_(a, b);
}

double CurvatureOperator::quadratic_form(const Bivector& b) const {
  if (b.dim() != n_) throw DimensionError("bivector and operator dimensions differ");
  return b.coeffs().dot(mat_ * b.coeffs());
}

CurvatureOperator CurvatureOperator::operator+(const CurvatureOperator& other) const {
  if (other.n_ != n_) throw DimensionError("operator dimension mismatch");
  return CurvatureOperator(n_, mat_ + other.mat_);
}

CurvatureOperator CurvatureOperator::operator*(double s) const {
  return CurvatureOperator(n_, s * mat_);
}

CurvatureOperator bianchi_project(const Matrix& mat, int n) {
  require_size(mat, n);
  require_symmetric(mat);
  Matrix m = 0.5 * (mat + mat.transpose());
  // Distinct quadruples touch disjoint entries, so the per-quadruple
  // projections commute and one pass is exact.
  for_each_quadruple(n, [&](int i, int j, int k, int l) {
    const double t = bianchi_sum(m, n, i, j, k, l) / 3.0;
    const int ij = pair_index(n, i, j), kl = pair_index(n, k, l);
    const int ik = pair_index(n, i, k), jl = pair_index(n, j, l);
    const int il = pair_index(n, i, l), jk = pair_index(n, j, k);
    m(ij, kl) -= t;
    m(kl, ij) -= t;
    m(ik, jl) += t;
    m(jl, ik) += t;
    m(il, jk) -= t;
    m(jk, il) -= t;
  });
  return CurvatureOperator::from_matrix(m, n);
}

double sec(const CurvatureOperator& r, const Plane& p) {
  if (p.dim() != r.dim()) throw DimensionError("plane and operator dimensions differ");
  return r.quadratic_form(p.bivector());
}

double biorth(const CurvatureOperator& r, const Plane& p) {
  require_dim4(r.dim(), "biorth");
  require_dim4(p.dim(), "biorth");
  return 0.5 * (sec(r, p) + sec(r, orthogonal_plane(p)));
}

double biorth(const CurvatureOperator& r, const Bivector& b) {
  require_dim4(r.dim(), "biorth");
  return 0.5 * (r.quadratic_form(b) + r.quadratic_form(hodge_star(b)));
}

double scal(const CurvatureOperator& r) { return 2.0 * r.matrix().trace(); }

Matrix ricci(const CurvatureOperator& r) {
  const int n = r.dim();
  Matrix ric = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < n; ++i) ric(a, b) += r.component(a, i, b, i);
  return ric;
}

Matrix self_dual_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  // slots: 0 e12, 1 e13, 2 e14, 3 e23, 4 e24, 5 e34
  Matrix u = Matrix::Zero(6, 6);
  u(0, 0) = h;  u(5, 0) = h;   // (e12 + e34)
  u(1, 1) = h;  u(4, 1) = -h;  // (e13 - e24)
  u(2, 2) = h;  u(3, 2) = h;   // (e14 + e23)
  u(0, 3) = h;  u(5, 3) = -h;  // (e12 - e34)
  u(1, 4) = h;  u(4, 4) = h;   // (e13 + e24)
  u(2, 5) = h;  u(3, 5) = -h;  // (e14 - e23)
  return u;
}

ExtremalPlane min_biorth_exact4(const CurvatureOperator& r) {
  require_dim4(r.dim(), "min_biorth_exact4");
  const Matrix u = self_dual_basis();
  const Matrix plus = u.leftCols(3);
  const Matrix minus = u.rightCols(3);
  const Eigen::Matrix3d a = plus.transpose() * r.matrix() * plus;
  const Eigen::Matrix3d c = minus.transpose() * r.matrix() * minus;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> ea(a);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> ec(c);
  const double value = 0.5 * (ea.eigenvalues()(0) + ec.eigenvalues()(0));
  const Vector b = (plus * ea.eigenvectors().col(0) + minus * ec.eigenvectors().col(0)) /
                   std::sqrt(2.0);
  return {value, Plane::from_bivector(Bivector(4, b))};
}

std::string_view to_string(ConeStatus status) {
  switch (status) {
  case ConeStatus::Inside: return "inside";
  case ConeStatus::Boundary: return "boundary";
  case ConeStatus::Outside: return "outside";
  }
  return "unknown";
}

ConeStatus cone_status(double min_value, double tol) {
  if (min_value > tol) return ConeStatus::Inside;
  if (min_value < -tol) return ConeStatus::Outside;
  return ConeStatus::Boundary;
}

ConeVerdict in_cone(const CurvatureOperator& r, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("cone tolerance must be positive");
  auto [value, witness] = min_biorth_exact4(r);
  return {cone_status(value, tol), value, std::move(witness), tol};
}

std::string_view model_name(Model model) {
  switch (model) {
  case Model::Flat: return "flat";
  case Model::RoundSphere: return "round_sphere";
  case Model::S3xR: return "S3xR";
  case Model::S2xR2: return "S2xR2";
  case Model::S2xS2Product: return "S2xS2_product";
  case Model::CP2FubiniStudy: return "CP2_fubini_study";
  case Model::SphereTimesLine: return "Sn-1xR";
  }
  return "unknown";
}

std::optional<Model> model_from_name(std::string_view name) {
  for (Model m : kAllModels)
    if (model_name(m) == name) return m;
  return std::nullopt;
}

bool model_takes_dimension(Model model) {
  return model == Model::Flat || model == Model::RoundSphere ||
         model == Model::SphereTimesLine;
}

CurvatureOperator product_operator(std::span<const int> sphere_dims, int flat_dim) {
  if (flat_dim < 0) throw PreconditionError("flat factor dimension must be >= 0");
  int n = flat_dim;
  for (int d : sphere_dims) {
    if (d < 2) throw PreconditionError("sphere factors need dimension >= 2");
    n += d;
  }
  if (n < 2) throw DimensionError("operators need n >= 2");
  const int size = bivector_dim(n);
  Matrix m = Matrix::Zero(size, size);
  int start = 0;
  for (int d : sphere_dims) {
    for (int i = start; i < start + d; ++i)
      for (int j = i + 1; j < start + d; ++j) {
        const int s = pair_index(n, i, j);
        m(s, s) = 1.0;
      }
    start += d;
  }
  return CurvatureOperator::from_matrix(m, n);
}

CurvatureOperator model_operator(Model model, std::optional<int> n) {
  if (!model_takes_dimension(model) && n && *n != 4)
    throw DimensionError(std::string(model_name(model)) + " is four-dimensional");
  const int dim = n.value_or(4);
  switch (model) {
  case Model::Flat:
    return CurvatureOperator::zero(dim);
  case Model::RoundSphere: {
    if (dim < 2) throw DimensionError("operators need n >= 2");
    const int size = bivector_dim(dim);
    return CurvatureOperator::from_matrix(Matrix::Identity(size, size), dim);
  }
  case Model::S3xR:
    return product_operator(std::array{3}, 1);
  case Model::S2xR2:
    return product_operator(std::array{2}, 2);
  case Model::S2xS2Product:
    return product_operator(std::array{2, 2}, 0);
  case Model::CP2FubiniStudy: {
    // Kahler operator for J e1 = e2, J e3 = e4: 6 on the Kahler form
    // (e12+e34)/sqrt2, 0 on the rest of the self-dual part, 2 on the
    // anti-self-dual part. Holomorphic planes have sec 4, totally real ones 1.
    Matrix m = Matrix::Identity(6, 6);
    m(0, 0) = m(5, 5) = 4.0;
    m(0, 5) = m(5, 0) = 2.0;
    m(1, 4) = m(4, 1) = 1.0;
    m(2, 3) = m(3, 2) = -1.0;
    return CurvatureOperator::from_matrix(m, 4);
  }
  case Model::SphereTimesLine:
    if (dim < 3) throw DimensionError("Sn-1xR needs n >= 3");
    return product_operator(std::array{dim - 1}, 1);
  }
  throw PreconditionError("unknown model");
}

Matrix lambda2(const Matrix& q) {
  if (q.rows() != q.cols()) throw DimensionError("lambda2 needs a square matrix");
  const int n = static_cast<int>(q.rows());
  const int size = bivector_dim(n);
  Matrix l(size, size);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int m = k + 1; m < n; ++m)
          l(pair_index(n, i, j), pair_index(n, k, m)) =
              q(i, k) * q(j, m) - q(i, m) * q(j, k);
  return l;
}

CurvatureOperator conjugate(const CurvatureOperator& r, const Matrix& q) {
  if (q.rows() != r.dim() || q.cols() != r.dim())
    throw DimensionError("conjugating matrix has the wrong size");
  const double defect =
      (q.transpose() * q - Matrix::Identity(r.dim(), r.dim())).cwiseAbs().maxCoeff();
  if (!(defect <= kOrthogonalityTolerance))
    throw PreconditionError("conjugating matrix is not orthogonal (defect " +
                            std::to_string(defect) + ")");
  const Matrix l = lambda2(q);
  const Matrix pulled = l.transpose() * r.matrix() * l;
  return CurvatureOperator::from_matrix(0.5 * (pulled + pulled.transpose()), r.dim());
}

} // namespace biorth
