#include "qbell/states.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qbell {

namespace {

const Complex kI{0.0, 1.0};

Eigen::Matrix2cd make_pauli(int k) {
  Eigen::Matrix2cd s;
  switch (k) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw OutOfRange("pauli index must be 1, 2 or 3");
  }
  return s;
}

std::mt19937_64 engine_for(std::uint64_t seed) { return std::mt19937_64(seed); }

Complex gaussian(std::mt19937_64& rng, std::normal_distribution<double>& n) {
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

}  // namespace

const Eigen::Matrix2cd& pauli(int k) {
  static const Eigen::Matrix2cd s1 = make_pauli(1);
  static const Eigen::Matrix2cd s2 = make_pauli(2);
  static const Eigen::Matrix2cd s3 = make_pauli(3);
  switch (k) {
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw OutOfRange("pauli index must be 1, 2 or 3");
  }
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

DensityMatrix validate_density(const Eigen::Matrix4cd& m, const Tolerances& tol) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol.eig_tol) {
    std::ostringstream os;
    os << "max |rho - rho^dagger| entry = " << herm;
    throw NotHermitian(os.str());
  }
  const double tr_defect = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_defect > 1e-10) {
    std::ostringstream os;
    os << "|tr(rho) - 1| = " << tr_defect;
    throw TraceNotOne(os.str());
  }
  const auto eig = hermitian_eigensystem<4>(m, tol);
  const double min_eig = eig.values(3);
  if (min_eig < -tol.psd_tol) {
    std::ostringstream os;
    os << "min eigenvalue = " << min_eig << " < " << -tol.psd_tol;
    throw NotPSD(os.str());
  }
  return DensityMatrix{m};
}

PureState make_pure(const Eigen::Vector4cd& amplitudes, const Tolerances&) {
  const double norm_defect = std::abs(amplitudes.squaredNorm() - 1.0);
  if (norm_defect > 1e-10) {
    std::ostringstream os;
    os << "|sum |a|^2 - 1| = " << norm_defect;
    throw NotNormalized(os.str());
  }
  return PureState{amplitudes};
}

DensityMatrix to_density(const PureState& psi) {
  return DensityMatrix{psi.amplitudes * psi.amplitudes.adjoint()};
}

Unitary2 make_unitary(const Eigen::Matrix2cd& m, const Tolerances& tol) {
  const double defect =
      (m * m.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > tol.eig_tol) {
    std::ostringstream os;
    os << "max |U U^dagger - I| entry = " << defect;
    throw NotUnitary(os.str());
  }
  return Unitary2{m};
}

Rotation3 make_rotation(const Eigen::Matrix3d& m, const Tolerances& tol) {
  const double orth =
      (m * m.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  const double det = m.determinant();
  if (orth > tol.eig_tol || std::abs(det - 1.0) > tol.eig_tol) {
    std::ostringstream os;
    os << "orthogonality defect = " << orth << ", det = " << det;
    throw NotARotation(os.str());
  }
  return Rotation3{m};
}

namespace {

// tr(sigma_j x I . rho) etc. come up in every decomposition; cache the
// fifteen kron products once.
struct PauliKrons {
  Eigen::Matrix4cd a[3];
  Eigen::Matrix4cd b[3];
  Eigen::Matrix4cd ab[3][3];
  PauliKrons() {
    const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
    for (int j = 0; j < 3; ++j) {
      a[j] = kron2(pauli(j + 1), id2);
      b[j] = kron2(id2, pauli(j + 1));
      for (int k = 0; k < 3; ++k) ab[j][k] = kron2(pauli(j + 1), pauli(k + 1));
    }
  }
};

const PauliKrons& pauli_krons() {
  static const PauliKrons pk;
  return pk;
}

double trace_with(const Eigen::Matrix4cd& op, const Eigen::Matrix4cd& rho) {
  return op.cwiseProduct(rho.transpose()).sum().real();
}

}  // namespace

BlochDecomposition bloch_decompose(const DensityMatrix& rho) {
  const PauliKrons& pk = pauli_krons();
  BlochDecomposition b;
  for (int j = 0; j < 3; ++j) {
    b.r(j) = trace_with(pk.a[j], rho.m);
    b.s(j) = trace_with(pk.b[j], rho.m);
    for (int k = 0; k < 3; ++k) b.t(j, k) = trace_with(pk.ab[j][k], rho.m);
  }
  return b;
}

Eigen::Matrix4cd bloch_reconstruct(const BlochDecomposition& b) {
  const PauliKrons& pk = pauli_krons();
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  for (int j = 0; j < 3; ++j) {
    m += b.r(j) * pk.a[j];
    m += b.s(j) * pk.b[j];
    for (int k = 0; k < 3; ++k) m += b.t(j, k) * pk.ab[j][k];
  }
  return 0.25 * m;
}

PureState gamma_state(double theta) {
  Eigen::Vector4cd a = Eigen::Vector4cd::Zero();
  a(0) = std::cos(theta);
  a(3) = std::sin(theta);
  return PureState{a};
}

PureState omega_state(double theta) {
  Eigen::Vector4cd a = Eigen::Vector4cd::Zero();
  a(1) = std::cos(theta);
  a(2) = std::sin(theta);
  return PureState{a};
}

namespace {
void check_sign(int delta) {
  if (delta != 1 && delta != -1) {
    std::ostringstream os;
    os << "delta = " << delta << ", expected +1 or -1";
    throw BadSign(os.str());
  }
}
}  // namespace

PureState lambda_state(double theta, int delta) {
  check_sign(delta);
  const double c = std::cos(theta) / std::sqrt(2.0);
  const double s = std::sin(theta) / std::sqrt(2.0);
  Eigen::Vector4cd a;
  a << Complex(c, 0), kI * s, -kI * (delta * s), Complex(delta * c, 0);
  return PureState{a};
}

PureState phi_state(double theta, int delta) {
  check_sign(delta);
  const double c = std::cos(theta) / std::sqrt(2.0);
  const double s = std::sin(theta) / std::sqrt(2.0);
  Eigen::Vector4cd a;
  a << Complex(c, 0), Complex(s, 0), Complex(delta * s, 0), Complex(delta * c, 0);
  return PureState{a};
}

DensityMatrix vw_state(double p, double theta) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "p = " << p << " outside [0, 1]";
    throw BadProbability(os.str());
  }
  const PureState phi1 = gamma_state(theta);
  Eigen::Vector4cd a2 = Eigen::Vector4cd::Zero();
  a2(0) = std::sin(theta);
  a2(3) = std::cos(theta);
  const PureState phi2{a2};
  const Eigen::Matrix4cd m = p * to_density(phi1).m + (1.0 - p) * to_density(phi2).m;
  return DensityMatrix{m};
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer on the combined word
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PureState random_pure(std::uint64_t seed) {
  auto rng = engine_for(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector4cd a;
  for (int i = 0; i < 4; ++i) a(i) = gaussian(rng, n);
  a /= a.norm();
  return PureState{a};
}

DensityMatrix random_density(std::uint64_t seed, int rank) {
  if (rank < 1 || rank > 4) {
    std::ostringstream os;
    os << "rank = " << rank << ", expected 1..4";
    throw BadRank(os.str());
  }
  auto rng = engine_for(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXcd g(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = gaussian(rng, n);
  Eigen::Matrix4cd m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix{m};
}

Unitary2 random_unitary(std::uint64_t seed) {
  auto rng = engine_for(seed ^ 0xa5a5a5a5a5a5a5a5ULL);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector4d q;
  for (int i = 0; i < 4; ++i) q(i) = n(rng);
  q.normalize();
  Eigen::Matrix2cd u;
  u << Complex(q(0), -q(3)), Complex(-q(2), -q(1)),
       Complex(q(2), -q(1)), Complex(q(0), q(3));
  return Unitary2{u};
}

DensityMatrix apply_local_unitary(const DensityMatrix& rho, const Unitary2& u_a,
                                  const Unitary2& u_b) {
  const Eigen::Matrix4cd u = kron2(u_a.m, u_b.m);
  return DensityMatrix{u * rho.m * u.adjoint()};
}

PureState apply_local_unitary(const PureState& psi, const Unitary2& u_a,
                              const Unitary2& u_b) {
  return PureState{kron2(u_a.m, u_b.m) * psi.amplitudes};
}

Rotation3 rotation_from_unitary(const Unitary2& u) {
  Eigen::Matrix3d r;
  for (int k = 0; k < 3; ++k)
    for (int kp = 0; kp < 3; ++kp)
      r(k, kp) =
          0.5 * (pauli(k + 1) * u.m * pauli(kp + 1) * u.m.adjoint()).trace().real();
  return Rotation3{r};
}

Unitary2 unitary_from_rotation(const Rotation3& r, const Tolerances& tol) {
  const double orth =
      (r.m * r.m.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  const double det = r.m.determinant();
  if (orth > tol.compare_tol || det < 0.0 || std::abs(det - 1.0) > tol.compare_tol) {
    std::ostringstream os;
    os << "orthogonality defect = " << orth << ", det = " << det;
    throw NotARotation(os.str());
  }
  Eigen::Quaterniond q(r.m);
  q.normalize();
  // Deterministic section: nonnegative real part of the trace (q.w >= 0).
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  Eigen::Matrix2cd u = q.w() * Eigen::Matrix2cd::Identity();
  u -= kI * (q.x() * pauli(1) + q.y() * pauli(2) + q.z() * pauli(3));
  return Unitary2{u};
}

}  // namespace qbell
