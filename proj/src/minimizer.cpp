#include "biorth/minimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "biorth/errors.hpp"
#include "biorth/sampling.hpp"

namespace biorth {
namespace {

// Below this step length a failed line search counts as a stall.
constexpr double kMinStep = 1e-16;

// Squared projected-gradient norms under kPrecisionFloor * eps * scale^2 cannot
// produce an objective decrease that double precision resolves; such iterates
// are reported as converged.
constexpr double kPrecisionFloor = 1e3;

void require_frame_columns(const Matrix& frame) {
  if (frame.cols() != 2 && frame.cols() != 4)
    throw PreconditionError("frame objective needs 2 or 4 columns, got " +
                            std::to_string(frame.cols()));
}

// Objective and gradient on n x k frames without per-call allocation.
class FrameEvaluator {
public:
  FrameEvaluator(const CurvatureOperator& r, int columns)
      : m_(r.matrix()), n_(r.dim()), planes_(columns / 2),
        weight_(columns == 4 ? 0.5 : 1.0), b_(bivector_dim(r.dim())),
        mb_(bivector_dim(r.dim())) {}

  double value(const Matrix& x) {
    double f = 0.0;
    for (int p = 0; p < planes_; ++p) {
      wedge_into(x.col(2 * p), x.col(2 * p + 1));
      mb_.noalias() = m_ * b_;
      f += weight_ * b_.dot(mb_);
    }
    return f;
  }

  double value_and_gradient(const Matrix& x, Matrix& g) {
    g.resize(n_, 2 * planes_);
    double f = 0.0;
    for (int p = 0; p < planes_; ++p) {
      wedge_into(x.col(2 * p), x.col(2 * p + 1));
      mb_.noalias() = m_ * b_;
      f += weight_ * b_.dot(mb_);
      // d<Mb,b>/dx1 = 2 A x2 and d<Mb,b>/dx2 = -2 A x1, with A the
      // antisymmetric matrix of Mb.
      auto g1 = g.col(2 * p);
      auto g2 = g.col(2 * p + 1);
      g1.setZero();
      g2.setZero();
      const double s = 2.0 * weight_;
      int slot = 0;
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j, ++slot) {
          const double c = s * mb_(slot);
          g1(i) += c * x(j, 2 * p + 1);
          g1(j) -= c * x(i, 2 * p + 1);
          g2(i) -= c * x(j, 2 * p);
          g2(j) += c * x(i, 2 * p);
        }
    }
    return f;
  }

private:
  template <typename Col> void wedge_into(const Col& u, const Col& v) {
    int slot = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) b_(slot++) = u(i) * v(j) - u(j) * v(i);
  }

  const Matrix& m_;
  int n_;
  int planes_;
  double weight_;
  Vector b_;
  Vector mb_;
};

struct RestartOutcome {
  DescentRun best;
  int best_index;
  bool any_converged;
};

RestartOutcome run_restarts(const CurvatureOperator& r, int columns,
                            const MinimizeOptions& options) {
  if (options.restarts < 1) throw PreconditionError("restarts must be >= 1");
  const int count = options.restarts;
  std::vector<std::optional<DescentRun>> runs(static_cast<std::size_t>(count));

  auto work = [&](int index) {
    Engine rng(derive_seed(options.seed, static_cast<std::uint64_t>(index)));
    const Matrix start = gaussian_matrix(r.dim(), columns, rng);
    runs[static_cast<std::size_t>(index)] = descend(r, start, options);
  };

  unsigned threads = options.threads != 0 ? options.threads
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(count));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          try {
            for (int i = next++; i < count; i = next++) work(i);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  int best = 0;
  bool any_converged = false;
  for (int i = 0; i < count; ++i) {
    const auto& run = *runs[static_cast<std::size_t>(i)];
    any_converged = any_converged || run.converged;
    if (run.value < runs[static_cast<std::size_t>(best)]->value) best = i;
  }
  return {std::move(*runs[static_cast<std::size_t>(best)]), best, any_converged};
}

} // namespace

double gram_defect(const Matrix& frame) {
  if (frame.cols() == 0) return 0.0;
  return (frame.transpose() * frame - Matrix::Identity(frame.cols(), frame.cols()))
      .cwiseAbs()
      .maxCoeff();
}

FramePair FramePair::from_vectors(Vector x1, Vector x2, Vector y1, Vector y2) {
  const auto n = x1.size();
  if (x2.size() != n || y1.size() != n || y2.size() != n)
    throw DimensionError("frame pair vectors differ in dimension");
  Matrix f(n, 4);
  f << x1, x2, y1, y2;
  return from_matrix(f);
}

FramePair FramePair::from_matrix(const Matrix& frame) {
  if (frame.cols() != 4) throw DimensionError("frame pair needs 4 columns");
  if (frame.rows() < 4) throw DimensionError("orthogonal plane pairs need n >= 4");
  const double defect = gram_defect(frame);
  if (!(defect < kFramePairTolerance))
    throw FrameError("frame pair is not orthonormal (defect " + std::to_string(defect) + ")",
                     defect);
  return FramePair(frame);
}

double biorth_general(const CurvatureOperator& r, const FramePair& fp) {
  if (fp.dim() != r.dim()) throw DimensionError("frame pair and operator dimensions differ");
  return 0.5 * (r.quadratic_form(wedge(fp.x1(), fp.x2())) +
                r.quadratic_form(wedge(fp.y1(), fp.y2())));
}

double frame_objective(const CurvatureOperator& r, const Matrix& frame) {
  require_frame_columns(frame);
  if (frame.rows() != r.dim()) throw DimensionError("frame and operator dimensions differ");
  FrameEvaluator ev(r, static_cast<int>(frame.cols()));
  return ev.value(frame);
}

Matrix frame_gradient(const CurvatureOperator& r, const Matrix& frame) {
  require_frame_columns(frame);
  if (frame.rows() != r.dim()) throw DimensionError("frame and operator dimensions differ");
  FrameEvaluator ev(r, static_cast<int>(frame.cols()));
  Matrix g;
  ev.value_and_gradient(frame, g);
  return g;
}

Matrix project_tangent(const Matrix& frame, const Matrix& g) {
  const Matrix xtg = frame.transpose() * g;
  return g - frame * (0.5 * (xtg + xtg.transpose()));
}

Matrix retract(const Matrix& frame) {
  Matrix q = frame;
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    const double norm = q.col(j).norm();
    if (!(norm > 1e-300)) throw NumericalFailure("retraction of a rank-deficient frame");
    q.col(j) /= norm;
  }
  return q;
}

DescentRun descend(const CurvatureOperator& r, const Matrix& start,
                   const MinimizeOptions& options, bool record_trace) {
  require_frame_columns(start);
  if (start.rows() != r.dim()) throw DimensionError("frame and operator dimensions differ");
  if (start.rows() < start.cols())
    throw DimensionError("frame has more columns than the ambient dimension");

  FrameEvaluator ev(r, static_cast<int>(start.cols()));
  const double scale = r.matrix().size() ? r.matrix().cwiseAbs().maxCoeff() : 0.0;
  const double floor2 =
      kPrecisionFloor * std::numeric_limits<double>::epsilon() * scale * scale;

  DescentRun run;
  run.frame = retract(start);
  Matrix g;
  run.value = ev.value_and_gradient(run.frame, g);
  Matrix xi = project_tangent(run.frame, g);
  double g2 = xi.squaredNorm();
  run.iterations = 0;
  run.converged = false;
  if (record_trace) run.trace.push_back(run.value);

  Matrix candidate;
  while (true) {
    if (std::sqrt(g2) < options.gtol || g2 <= floor2) {
      run.converged = true;
      break;
    }
    if (run.iterations >= options.max_iterations) break;

    double step = options.initial_step;
    bool accepted = false;
    double f_new = 0.0;
    while (step >= kMinStep) {
      candidate = retract(run.frame - step * xi);
      f_new = ev.value(candidate);
      if (f_new <= run.value - options.armijo_c * step * g2) {
        accepted = true;
        break;
      }
      step *= options.backtrack;
    }
    if (!accepted) break;

    run.frame.swap(candidate);
    run.value = ev.value_and_gradient(run.frame, g);
    xi = project_tangent(run.frame, g);
    g2 = xi.squaredNorm();
    ++run.iterations;
    if (record_trace) run.trace.push_back(run.value);
  }
  run.gradient_norm = std::sqrt(g2);
  return run;
}

MinimizeResult minimize(const CurvatureOperator& r, const MinimizeOptions& options) {
  if (r.dim() < 4) throw DimensionError("orthogonal plane pairs need n >= 4");
  auto outcome = run_restarts(r, 4, options);
  return {outcome.best.value, FramePair::from_matrix(outcome.best.frame), options.restarts,
          outcome.best_index, outcome.any_converged};
}

MinSecResult min_sec(const CurvatureOperator& r, const MinimizeOptions& options) {
  auto outcome = run_restarts(r, 2, options);
  const Matrix& f = outcome.best.frame;
  MinSecResult result{outcome.best.value, Plane::from_frame(f.col(0), f.col(1)),
                      outcome.any_converged};
  if (r.dim() == 4) {
    const double bound = min_biorth_exact4(r).value;
    const double slack = 1e-9 * std::max(1.0, r.matrix().cwiseAbs().maxCoeff());
    if (result.value > bound + slack)
      throw NumericalFailure("minimum sectional curvature " + std::to_string(result.value) +
                             " exceeds the exact biorthogonal minimum " +
                             std::to_string(bound));
  }
  return result;
}

double grid_oracle(const CurvatureOperator& r, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw PreconditionError("grid_oracle needs samples >= 1");
  Engine rng(seed);
  std::normal_distribution<double> normal;
  double best = std::numeric_limits<double>::infinity();

  if (r.dim() == 4) {
    using Vec4 = Eigen::Vector4d;
    using Vec6 = Eigen::Matrix<double, 6, 1>;
    const Eigen::Matrix<double, 6, 6> m = r.matrix();
    for (std::size_t s = 0; s < samples; ++s) {
      Vec4 u, v;
      for (int i = 0; i < 4; ++i) u(i) = normal(rng);
      for (int i = 0; i < 4; ++i) v(i) = normal(rng);
      u.normalize();
      v -= v.dot(u) * u;
      v -= v.dot(u) * u;
      v.normalize();
      const Vec6 b{u(0) * v(1) - u(1) * v(0), u(0) * v(2) - u(2) * v(0),
                   u(0) * v(3) - u(3) * v(0), u(1) * v(2) - u(2) * v(1),
                   u(1) * v(3) - u(3) * v(1), u(2) * v(3) - u(3) * v(2)};
      const Vec6 star{b(5), -b(4), b(3), b(2), -b(1), b(0)};
      best = std::min(best, 0.5 * (b.dot(m * b) + star.dot(m * star)));
    }
    return best;
  }

  if (r.dim() < 4) throw DimensionError("orthogonal plane pairs need n >= 4");
  FrameEvaluator ev(r, 4);
  for (std::size_t s = 0; s < samples; ++s)
    best = std::min(best, ev.value(retract(gaussian_matrix(r.dim(), 4, rng))));
  return best;
}

} // namespace biorth
