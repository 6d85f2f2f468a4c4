#include "biorth/bivector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "biorth/errors.hpp"
#include "biorth/sampling.hpp"

namespace biorth {
namespace {

void require_dim4(int n, const char* op) {
  if (n != 4)
    throw DimensionError(std::string(op) + " requires n = 4, got n = " +
                         std::to_string(n));
}

int permutation_sign(std::array<int, 4> p) {
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

// (b ^ b)_{ijkl} / 2 for i<j<k<l
double plucker_term(const Bivector& b, int i, int j, int k, int l) {
  return b(i, j) * b(k, l) - b(i, k) * b(j, l) + b(i, l) * b(j, k);
}

} // namespace

std::pair<int, int> index_pair(int n, int slot) {
  if (slot < 0 || slot >= bivector_dim(n))
    throw PreconditionError("bivector slot out of range");
  int i = 0;
  while (slot >= n - 1 - i) {
    slot -= n - 1 - i;
    ++i;
  }
  return {i, i + 1 + slot};
}

Bivector::Bivector(int n) : n_(n), coeffs_(Vector::Zero(bivector_dim(n))) {
  if (n < 2) throw DimensionError("bivectors need n >= 2");
}

Bivector::Bivector(int n, Vector coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  if (n < 2) throw DimensionError("bivectors need n >= 2");
  if (coeffs_.size() != bivector_dim(n))
    throw DimensionError("bivector coefficient vector has length " +
                         std::to_string(coeffs_.size()) + ", expected " +
                         std::to_string(bivector_dim(n)));
}

Bivector Bivector::basis(int n, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw PreconditionError("invalid basis bivector indices");
  Bivector b(n);
  if (i < j)
    b.coeffs_(pair_index(n, i, j)) = 1.0;
  else
    b.coeffs_(pair_index(n, j, i)) = -1.0;
  return b;
}

double Bivector::operator()(int i, int j) const {
  if (i == j) return 0.0;
  return i < j ? coeffs_(pair_index(n_, i, j)) : -coeffs_(pair_index(n_, j, i));
}

double Bivector::dot(const Bivector& other) const {
  if (other.n_ != n_) throw DimensionError("bivector dimension mismatch");
  return coeffs_.dot(other.coeffs_);
}

Matrix Bivector::as_antisymmetric() const {
  Matrix m = Matrix::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      m(i, j) = coeffs_(pair_index(n_, i, j));
      m(j, i) = -m(i, j);
    }
  return m;
}

Bivector Bivector::operator+(const Bivector& other) const {
  if (other.n_ != n_) throw DimensionError("bivector dimension mismatch");
  return Bivector(n_, coeffs_ + other.coeffs_);
}

Bivector Bivector::operator-(const Bivector& other) const {
  if (other.n_ != n_) throw DimensionError("bivector dimension mismatch");
  return Bivector(n_, coeffs_ - other.coeffs_);
}

Bivector Bivector::operator-() const { return Bivector(n_, -coeffs_); }

Bivector Bivector::operator*(double s) const { return Bivector(n_, coeffs_ * s); }

Bivector wedge(const Vector& x, const Vector& y) {
  if (x.size() != y.size())
    throw DimensionError("wedge of vectors of different dimensions");
  const int n = static_cast<int>(x.size());
  Vector c(bivector_dim(n));
  int slot = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) c(slot++) = x(i) * y(j) - x(j) * y(i);
  return Bivector(n, std::move(c));
}

Bivector hodge_star(const Bivector& b) {
  require_dim4(b.dim(), "hodge_star");
  Vector out(6);
  for (int slot = 0; slot < 6; ++slot) {
    const auto [i, j] = index_pair(4, slot);
    std::array<int, 2> rest{};
    int r = 0;
    for (int k = 0; k < 4; ++k)
      if (k != i && k != j) rest[r++] = k;
    const int sign = permutation_sign({i, j, rest[0], rest[1]});
    out(pair_index(4, rest[0], rest[1])) = sign * b.coeffs()(slot);
  }
  return Bivector(4, std::move(out));
}

double plucker_defect(const Bivector& b) {
  const int n = b.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
          worst = std::max(worst, 2.0 * std::abs(plucker_term(b, i, j, k, l)));
  return worst;
}

bool is_decomposable(const Bivector& b, double tol) {
  return plucker_defect(b) <= tol;
}

SelfDualSplit self_dual_parts(const Bivector& b) {
  require_dim4(b.dim(), "self_dual_parts");
  const Bivector star = hodge_star(b);
  return {0.5 * (b + star), 0.5 * (b - star)};
}

double frame_defect(const Vector& x, const Vector& y) {
  return std::max({std::abs(x.norm() - 1.0), std::abs(y.norm() - 1.0),
                   std::abs(x.dot(y))});
}

Plane Plane::from_frame(Vector x, Vector y) {
  if (x.size() != y.size()) throw DimensionError("frame vectors differ in dimension");
  if (x.size() < 2) throw DimensionError("planes need n >= 2");
  const double defect = frame_defect(x, y);
  if (defect <= kFrameTolerance) return Plane(std::move(x), std::move(y));
  if (defect < kFrameRepairTolerance) return span(x, y);
  throw FrameError("frame is not orthonormal (defect " + std::to_string(defect) + ")",
                   defect);
}

Plane Plane::span(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw DimensionError("frame vectors differ in dimension");
  if (u.size() < 2) throw DimensionError("planes need n >= 2");
  const double nu = u.norm();
  if (!(nu > 0.0)) throw PreconditionError("degenerate spanning pair");
  Vector x = u / nu;
  Vector y = v - v.dot(x) * x;
  y -= y.dot(x) * x;
  const double ny = y.norm();
  if (!(ny > 1e-14 * std::max(1.0, v.norm())))
    throw PreconditionError("degenerate spanning pair");
  y /= ny;
  return Plane(std::move(x), std::move(y));
}

Plane Plane::from_bivector(const Bivector& b, double tol) {
  const double norm2 = b.squared_norm();
  if (!(norm2 > 0.0)) throw PreconditionError("zero bivector has no plane");
  if (plucker_defect(b) > tol * norm2)
    throw PreconditionError("bivector is not decomposable");
  const Matrix a = b.as_antisymmetric();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a * a.transpose());
  const int n = b.dim();
  Plane p = span(eig.eigenvectors().col(n - 1), eig.eigenvectors().col(n - 2));
  if (p.bivector().dot(b) < 0.0) p.y_ = -p.y_;
  return p;
}

Plane Plane::coordinate(int n, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw PreconditionError("invalid coordinate plane indices");
  return Plane(Vector::Unit(n, i), Vector::Unit(n, j));
}

Matrix Plane::projector() const {
  return x_ * x_.transpose() + y_ * y_.transpose();
}

bool Plane::same_span(const Plane& other, double tol) const {
  if (other.dim() != dim()) return false;
  return (projector() - other.projector()).cwiseAbs().maxCoeff() <= tol;
}

Plane orthogonal_plane(const Plane& p) {
  require_dim4(p.dim(), "orthogonal_plane");
  const Matrix proj = Matrix::Identity(4, 4) - p.projector();
  // The column of the complementary projector with the largest norm gives the
  // first vector; the second is taken from what remains after removing it.
  int best = 0;
  for (int k = 1; k < 4; ++k)
    if (proj.col(k).norm() > proj.col(best).norm()) best = k;
  Vector u = proj.col(best).normalized();
  Matrix rest = proj - u * u.transpose();
  int second = 0;
  for (int k = 1; k < 4; ++k)
    if (rest.col(k).norm() > rest.col(second).norm()) second = k;
  Plane q = Plane::span(u, rest.col(second));
  if (q.bivector().dot(hodge_star(p.bivector())) < 0.0)
    q = Plane::from_frame(q.x(), -q.y());
  return q;
}

std::vector<Plane> sample_planes(int n, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw PreconditionError("sample_planes needs count > 0");
  if (n < 2) throw DimensionError("planes need n >= 2");
  Engine rng(seed);
  std::vector<Plane> out;
  out.reserve(count);
  while (out.size() < count) {
    const Vector u = gaussian_vector(n, rng);
    const Vector v = gaussian_vector(n, rng);
    // A numerically dependent Gaussian pair has probability ~0; skip it.
    try {
      out.push_back(Plane::span(u, v));
    } catch (const PreconditionError&) {
    }
  }
  return out;
}

} // namespace biorth
