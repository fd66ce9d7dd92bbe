#pragma once

#include <Eigen/Dense>
#include <complex>
#include <sstream>

#include "qbell/errors.hpp"

namespace qbell {

/// Shared tolerance policy. Passed explicitly; there are no global knobs.
struct Tolerances {
  double eig_tol = 1e-10;     ///< hermiticity / orthogonality defects
  double compare_tol = 1e-8;  ///< value comparisons and degeneracy ties
  double psd_tol = 1e-10;     ///< allowed negative slack on eigenvalues

  void validate() const {
    if (!(eig_tol > 0.0) || !(compare_tol > 0.0) || !(psd_tol > 0.0))
      throw OutOfRange("tolerances must be strictly positive");
  }
};

template <int N>
struct HermitianEigen {
  Eigen::Matrix<double, N, 1> values;  // descending
  Eigen::Matrix<std::complex<double>, N, N> vectors;  // orthonormal columns, col(i) <-> values(i)
};

/// Eigensystem of a small complex Hermitian matrix, eigenvalues sorted
/// descending. Throws NotHermitian when the defect exceeds tol.eig_tol.
template <int N>
HermitianEigen<N> hermitian_eigensystem(
    const Eigen::Matrix<std::complex<double>, N, N>& m,
    const Tolerances& tol = {}) {
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tol.eig_tol) {
    std::ostringstream os;
    os << "max |m - m^dagger| entry = " << defect << " > " << tol.eig_tol;
    throw NotHermitian(os.str());
  }
  // Symmetrize so the solver sees an exactly Hermitian input.
  const Eigen::Matrix<std::complex<double>, N, N> h =
      0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<std::complex<double>, N, N>> es(h);
  HermitianEigen<N> out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

/// Signed singular value decomposition of a real 3x3 matrix:
/// m = u * values.asDiagonal() * v^T with det(u) = det(v) = +1 and
/// |values(0)| >= |values(1)| >= |values(2)|. Any reflection in the raw
/// orthogonal factors is absorbed by negating its third column together
/// with the third signed value.
struct SignedSvd3 {
  Eigen::Matrix3d u;
  Eigen::Matrix3d v;
  Eigen::Vector3d values;
  bool degenerate = false;  // adjacent |values| closer than compare_tol

  Eigen::Matrix3d reconstruct() const {
    return u * values.asDiagonal() * v.transpose();
  }
};

SignedSvd3 svd3(const Eigen::Matrix3d& m, const Tolerances& tol = {});

}  // namespace qbell
