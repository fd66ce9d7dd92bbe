#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "qbell/states.hpp"

namespace qbell {

/// Four unit measurement directions plus the mixing angle between Bob's
/// pair: b + b' = 2 cos(mix_angle) c, b - b' = 2 sin(mix_angle) c'.
struct ChshSetting {
  Eigen::Vector3d a;
  Eigen::Vector3d a_prime;
  Eigen::Vector3d b;
  Eigen::Vector3d b_prime;
  double mix_angle = 0.0;  // in [0, pi/2]
};

/// CHSH operator in Pauli coefficients: S = sum_jk w(j,k) sigma_j x sigma_k.
struct ChshOperator {
  Eigen::Matrix3d w;
  std::optional<ChshSetting> setting;
};

struct NonlocalityReport {
  double value = 0.0;    // 2 sqrt(lambda1 + lambda2), in [0, 2 sqrt 2]
  double lambda1 = 0.0;  // largest eigenvalue of T^T T
  double lambda2 = 0.0;
  ChshOperator op;
  ChshSetting setting;
  bool degenerate = false;       // lambda2 ~ lambda3: optimal operator non-unique
  bool rank_deficient = false;   // lambda2 ~ 0
  bool zero_correlation = false; // T ~ 0: any setting attains N = 0
};

/// W = a (b + b')^T + a' (b - b')^T.
ChshOperator operator_from_setting(const ChshSetting& setting);

/// The induced 4x4 Hermitian operator sum_jk w(j,k) sigma_j x sigma_k.
Eigen::Matrix4cd chsh_matrix(const ChshOperator& op);

/// Maximal CHSH value of rho together with the canonical optimal operator
/// and measurement setting that attain it.
NonlocalityReport nonlocality(const DensityMatrix& rho, const Tolerances& tol = {});

/// The optimal operator/setting pair from `nonlocality`.
std::pair<ChshOperator, ChshSetting> optimal_chsh(const DensityMatrix& rho,
                                                  const Tolerances& tol = {});

/// tr(rho S) = sum_jk w(j,k) t(j,k) for the operator's Pauli coefficients.
double chsh_value(const DensityMatrix& rho, const ChshOperator& op);
double chsh_value(const BlochDecomposition& bloch, const ChshOperator& op);

/// Independent maximizer: searches Bob's direction pair (b, b') over a
/// Fibonacci sphere grid with local refinement; Alice's directions are
/// maximized analytically, value(b, b') = ||T(b+b')|| + ||T(b-b')||.
/// Deterministic for fixed (grid_steps, refine_iters, seed).
/// Throws BadResolution when grid_steps < 8.
double brute_force_nonlocality(const DensityMatrix& rho, int grid_steps,
                               int refine_iters, std::uint64_t seed);

}  // namespace qbell
