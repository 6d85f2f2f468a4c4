#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace biorth {

using Engine = std::mt19937_64;

/// Mixes a base seed with a stream index (splitmix64 finalizer applied twice).
/// Used to give every restart or every fuzz case its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

Eigen::VectorXd gaussian_vector(int n, Engine& rng);
Eigen::MatrixXd gaussian_matrix(int rows, int cols, Engine& rng);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
Eigen::MatrixXd random_orthogonal(int n, Engine& rng);

/// Symmetric matrix with independent N(0,1) entries on and above the diagonal.
Eigen::MatrixXd random_symmetric(int n, Engine& rng);

} // namespace biorth
