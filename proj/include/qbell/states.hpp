#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

#include "qbell/qmat.hpp"

namespace qbell {

using Complex = std::complex<double>;

/// Two-qubit pure state, amplitudes in computational basis order
/// |00>, |01>, |10>, |11>. Normalized to 1 within 1e-10.
struct PureState {
  Eigen::Vector4cd amplitudes;
};

/// Validated two-qubit density matrix: Hermitian, unit trace, PSD.
struct DensityMatrix {
  Eigen::Matrix4cd m;
};

/// Local Bloch vectors and the 3x3 correlation matrix of a two-qubit state:
/// r_j = tr((sigma_j x I) rho), s_k = tr((I x sigma_k) rho),
/// t_jk = tr((sigma_j x sigma_k) rho).
struct BlochDecomposition {
  Eigen::Vector3d r;
  Eigen::Vector3d s;
  Eigen::Matrix3d t;
};

/// Proper rotation: orthogonal with det = +1.
struct Rotation3 {
  Eigen::Matrix3d m;
};

/// 2x2 unitary.
struct Unitary2 {
  Eigen::Matrix2cd m;
};

/// Pauli matrix sigma_k for k in {1,2,3} (x, y, z).
const Eigen::Matrix2cd& pauli(int k);

/// Kronecker product of two single-qubit operators, row-major basis order.
Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

/// Checks Hermiticity (eig_tol), unit trace (1e-10) and positivity
/// (psd_tol) and returns the validated state. Throws NotHermitian,
/// TraceNotOne or NotPSD naming the violated invariant and its magnitude.
DensityMatrix validate_density(const Eigen::Matrix4cd& m, const Tolerances& tol = {});

/// Validates normalization; throws NotNormalized.
PureState make_pure(const Eigen::Vector4cd& amplitudes, const Tolerances& tol = {});

/// Projector |psi><psi|.
DensityMatrix to_density(const PureState& psi);

Unitary2 make_unitary(const Eigen::Matrix2cd& m, const Tolerances& tol = {});
Rotation3 make_rotation(const Eigen::Matrix3d& m, const Tolerances& tol = {});

BlochDecomposition bloch_decompose(const DensityMatrix& rho);

/// Rebuilds the 4x4 matrix from a Bloch decomposition:
/// (I + r.sigma x I + I x s.sigma + sum_jk t_jk sigma_j x sigma_k) / 4.
Eigen::Matrix4cd bloch_reconstruct(const BlochDecomposition& b);

// Pure-state families with diagonal correlation matrices.
// theta in [0, pi); delta must be +1 or -1 (BadSign otherwise).
PureState gamma_state(double theta);                 // cos t |00> + sin t |11>
PureState omega_state(double theta);                 // cos t |01> + sin t |10>
PureState lambda_state(double theta, int delta);
PureState phi_state(double theta, int delta);

/// Rank-2 mixture p |phi1><phi1| + (1-p) |phi2><phi2| with
/// phi1 = cos t |00> + sin t |11>, phi2 = sin t |00> + cos t |11>.
/// Supported on the {|00>,|11>} block; the off-diagonal entry equals
/// sin(2 theta)/2 for every p. Throws BadProbability for p outside [0,1].
DensityMatrix vw_state(double p, double theta);

/// splitmix64 step; derives independent per-item seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Haar-random pure state (normalized complex Gaussian amplitudes).
/// Deterministic for a fixed seed.
PureState random_pure(std::uint64_t seed);

/// Hilbert-Schmidt (Ginibre) random density matrix of the given rank:
/// G G^dagger / tr(G G^dagger) with G a 4 x rank complex Gaussian matrix.
/// Throws BadRank unless rank is 1..4.
DensityMatrix random_density(std::uint64_t seed, int rank);

/// Haar-random SU(2) element (uniform unit quaternion).
Unitary2 random_unitary(std::uint64_t seed);

/// (U_A x U_B) rho (U_A x U_B)^dagger.
DensityMatrix apply_local_unitary(const DensityMatrix& rho, const Unitary2& u_a,
                                  const Unitary2& u_b);
PureState apply_local_unitary(const PureState& psi, const Unitary2& u_a,
                              const Unitary2& u_b);

/// Bloch rotation of a qubit unitary, R_kk' = tr(sigma_k U sigma_k' U^dagger)/2.
/// Insensitive to the global phase of U.
Rotation3 rotation_from_unitary(const Unitary2& u);

/// Section of the SU(2) -> SO(3) double cover: returns a unitary whose
/// Bloch rotation is R, choosing the representative with nonnegative real
/// trace. Throws NotARotation when R is not a proper rotation.
Unitary2 unitary_from_rotation(const Rotation3& r, const Tolerances& tol = {});

}  // namespace qbell
