#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "biorth/curvature.hpp"

namespace biorth {

inline constexpr double kFramePairTolerance = 1e-10;

/// Four orthonormal vectors of R^n: the orthogonal planes
/// span(x1, x2) and span(y1, y2).
class FramePair {
public:
  static FramePair from_vectors(Vector x1, Vector x2, Vector y1, Vector y2);
  /// Columns of an n x 4 matrix in the order x1, x2, y1, y2.
  static FramePair from_matrix(const Matrix& frame);

  int dim() const { return static_cast<int>(frame_.rows()); }
  Vector x1() const { return frame_.col(0); }
  Vector x2() const { return frame_.col(1); }
  Vector y1() const { return frame_.col(2); }
  Vector y2() const { return frame_.col(3); }
  const Matrix& matrix() const { return frame_; }

  Plane first() const { return Plane::from_frame(x1(), x2()); }
  Plane second() const { return Plane::from_frame(y1(), y2()); }

private:
  explicit FramePair(Matrix frame) : frame_(std::move(frame)) {}
  Matrix frame_;
};

/// Largest entry of |F^T F - I|.
double gram_defect(const Matrix& frame);

/// (sec(span(x1,x2)) + sec(span(y1,y2))) / 2
double biorth_general(const CurvatureOperator& r, const FramePair& fp);

struct MinimizeOptions {
  int restarts = 64;
  std::uint64_t seed = 1;
  double gtol = 1e-10;
  int max_iterations = 10000;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double initial_step = 1.0;
  /// Worker threads for restarts; 0 picks the hardware concurrency. Results do
  /// not depend on this value.
  unsigned threads = 0;
};

struct MinimizeResult {
  double value;
  FramePair witness;
  int restarts_used;
  int best_restart;
  bool converged;
};

/// Minimum of biorth_general over orthonormal 4-frames of R^n (n >= 4), by
/// projected-gradient descent with Armijo backtracking from seeded restarts.
/// converged is false only when no restart met the stopping rule.
MinimizeResult minimize(const CurvatureOperator& r, const MinimizeOptions& options = {});

struct MinSecResult {
  double value;
  Plane witness;
  bool converged;
};

/// Minimum sectional curvature over 2-frames of R^n. For n = 4 the result is
/// checked against the exact biorthogonal minimum (min sec <= min biorth) and
/// NumericalFailure is thrown if the optimizer overshoots it.
MinSecResult min_sec(const CurvatureOperator& r, const MinimizeOptions& options = {});

/// Minimum of the biorthogonal objective over `samples` random frames
/// (n = 4: random planes with their complement). Deterministic given seed.
double grid_oracle(const CurvatureOperator& r, std::size_t samples, std::uint64_t seed);

// Frame-level building blocks of the descent, exposed for testing.

/// Objective on an n x k frame. k = 2: sec of the spanned plane. k = 4: the
/// biorthogonal average of the planes of columns (0,1) and (2,3). The formula
/// is polynomial in the entries and is evaluated as-is off the manifold.
double frame_objective(const CurvatureOperator& r, const Matrix& frame);

/// Euclidean gradient of frame_objective.
Matrix frame_gradient(const CurvatureOperator& r, const Matrix& frame);

/// Projection onto the tangent space of the Stiefel manifold at frame:
/// G - X sym(X^T G).
Matrix project_tangent(const Matrix& frame, const Matrix& g);

/// Orthonormalizes the columns (QR with positive diagonal, via Gram-Schmidt
/// with one reorthogonalization pass).
Matrix retract(const Matrix& frame);

struct DescentRun {
  Matrix frame;
  double value;
  double gradient_norm;
  int iterations;
  bool converged;
  std::vector<double> trace;  // objective per accepted iterate when recorded
};

DescentRun descend(const CurvatureOperator& r, const Matrix& start,
                   const MinimizeOptions& options, bool record_trace = false);

} // namespace biorth
