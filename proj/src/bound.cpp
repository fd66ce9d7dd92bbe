#include "qbell/bound.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbell {

double bound_value(double c) {
  if (c < -1e-9 || c > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "concurrence = " << c << " outside [0, 1]";
    throw OutOfRange(os.str());
  }
  c = std::clamp(c, 0.0, 1.0);
  return 2.0 * std::sqrt(1.0 + c * c);
}

double check_pure_relation(const PureState& psi, const Tolerances& tol) {
  const double c = concurrence_pure(psi);
  const double n = nonlocality(to_density(psi), tol).value;
  return std::abs(n - 2.0 * std::sqrt(1.0 + c * c));
}

namespace {

// Even sign-flip patterns realizable as det +1 diagonal rotations.
const Eigen::Vector3d kSignPatterns[4] = {
    {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};

constexpr double kStructTol = 1e-7;

struct Canonicalization {
  Unitary2 w_a, w_b;   // rho_f = (w_a x w_b) rho (w_a x w_b)^dagger
  bool ok = false;
};

// Rotates the correlation frame so T becomes diag(s, -s, 1).
Canonicalization canonical_frame(const Eigen::Matrix3d& t, const Tolerances& tol) {
  Canonicalization out;
  const SignedSvd3 svd = svd3(t, tol);

  // Cyclic permutation sending sorted values (d0, d1, d2) to (d1, d2, d0):
  // the unit-magnitude direction moves to the third axis.
  Eigen::Matrix3d perm;
  perm << 0, 1, 0,
          0, 0, 1,
          1, 0, 0;
  const Eigen::Vector3d after_perm(svd.values(1), svd.values(2), svd.values(0));

  // Pick the even sign flip producing the (+, -, +) pattern.
  int chosen = -1;
  for (int i = 0; i < 4 && chosen < 0; ++i) {
    const Eigen::Vector3d d = kSignPatterns[i].cwiseProduct(after_perm);
    if (d(0) >= -kStructTol && d(1) <= kStructTol && d(2) > 0.0) chosen = i;
  }
  if (chosen < 0) return out;  // det(T) > 0: not reachable, not a member

  const Eigen::Matrix3d sign_fix = kSignPatterns[chosen].asDiagonal();
  const Eigen::Matrix3d r_a = sign_fix * perm * svd.u.transpose();
  const Eigen::Matrix3d r_b = perm * svd.v.transpose();
  out.w_a = unitary_from_rotation(Rotation3{r_a}, tol);
  out.w_b = unitary_from_rotation(Rotation3{r_b}, tol);
  out.ok = true;
  return out;
}

}  // namespace

QMembership certify(const DensityMatrix& rho, const Tolerances& tol) {
  QMembership q;
  const Concurrence conc = concurrence(rho, tol);
  q.concurrence = conc.value;
  q.nonlocality = nonlocality(rho, tol).value;
  q.bound = bound_value(conc.value);
  q.slack = q.bound - q.nonlocality;
  q.operational_member = q.slack <= tol.compare_tol;

  // Structural test: rank <= 2 and, in the canonical correlation frame,
  // an X pattern on the {|00>,|11>} block.
  const auto eig = hermitian_eigensystem<4>(rho.m, tol);
  if (eig.values(2) > tol.psd_tol) {
    q.structural_member = StructuralVerdict::NotMember;
    return q;
  }

  const BlochDecomposition bloch = bloch_decompose(rho);
  const SignedSvd3 svd = svd3(bloch.t, tol);
  const double frame_gap = std::abs(svd.values(0)) - std::abs(svd.values(1));
  if (frame_gap < 1e-6) {
    q.structural_member = StructuralVerdict::Indeterminate;
    return q;
  }

  const Canonicalization frame = canonical_frame(bloch.t, tol);
  if (!frame.ok) {
    q.structural_member = StructuralVerdict::NotMember;
    return q;
  }
  const DensityMatrix rho_f = apply_local_unitary(rho, frame.w_a, frame.w_b);

  double off_pattern = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const bool corner = (i == 0 || i == 3) && (j == 0 || j == 3);
      if (!corner) off_pattern = std::max(off_pattern, std::abs(rho_f.m(i, j)));
    }
  const double imag_defect =
      std::max({std::abs(rho_f.m(0, 0).imag()), std::abs(rho_f.m(3, 3).imag()),
                std::abs(rho_f.m(0, 3).imag())});
  if (off_pattern > kStructTol || imag_defect > kStructTol) {
    q.structural_member = StructuralVerdict::NotMember;
    return q;
  }

  const double d1 = rho_f.m(0, 0).real();
  const double d2 = rho_f.m(3, 3).real();
  const double off = rho_f.m(0, 3).real();
  double theta = 0.5 * std::asin(std::clamp(2.0 * off, -1.0, 1.0));
  const double c2 = std::cos(2.0 * theta);
  if (c2 < 1e-6) {
    q.structural_member = StructuralVerdict::Indeterminate;
    return q;
  }
  double p = std::clamp(0.5 * (1.0 + (d1 - d2) / c2), 0.0, 1.0);
  if (theta < 0.0) theta += M_PI;
  if (p < 0.5) {  // report the p >= 1/2 representative
    p = 1.0 - p;
    theta = M_PI / 2.0 - theta;
    if (theta < 0.0) theta += M_PI;
  }

  const Unitary2 u_a{frame.w_a.m.adjoint()};
  const Unitary2 u_b{frame.w_b.m.adjoint()};
  const DensityMatrix rebuilt = apply_local_unitary(vw_state(p, theta), u_a, u_b);
  const double resid = (rebuilt.m - rho.m).cwiseAbs().maxCoeff();
  if (resid <= kStructTol) {
    q.structural_member = StructuralVerdict::Member;
    q.recovered = RecoveredParams{p, theta, u_a, u_b};
  } else {
    q.structural_member = StructuralVerdict::NotMember;
  }
  return q;
}

DensityMatrix vw_matrix(double c, double alpha) {
  if (c * c > 1.0 - alpha * alpha + 1e-12) {
    std::ostringstream os;
    os << "C^2 = " << c * c << " exceeds 1 - alpha^2 = " << 1.0 - alpha * alpha;
    throw NotPSD(os.str());
  }
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(1, 1) = 0.5 * (1.0 - alpha);
  m(2, 2) = 0.5 * (1.0 + alpha);
  m(1, 2) = 0.5 * c;
  m(2, 1) = 0.5 * c;
  return DensityMatrix{m};
}

}  // namespace qbell
