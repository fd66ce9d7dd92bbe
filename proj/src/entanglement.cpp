#include "qbell/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qbell {

namespace {

const Eigen::Matrix4cd& spin_flip_op() {
  static const Eigen::Matrix4cd yy = kron2(pauli(2), pauli(2));
  return yy;
}

}  // namespace

DensityMatrix spin_flip(const DensityMatrix& rho) {
  const Eigen::Matrix4cd& yy = spin_flip_op();
  return DensityMatrix{yy * rho.m.conjugate() * yy};
}

double concurrence_pure(const PureState& psi) {
  const Eigen::Vector4cd flipped = spin_flip_op() * psi.amplitudes.conjugate();
  return std::abs(psi.amplitudes.dot(flipped));
}

Concurrence concurrence(const DensityMatrix& rho, const Tolerances& tol) {
  // The Wootters eigenvalues are the square roots of the spectrum of
  // rho * rho~. Taking them straight off the non-Hermitian product loses
  // half the working precision near zero, so factor rho = X X^dagger and
  // read them as the singular values of the complex symmetric matrix
  // X^T (Y x Y) X, whose squares are exactly that spectrum.
  const auto eig = hermitian_eigensystem<4>(rho.m, tol);
  Eigen::Matrix4cd x = eig.vectors;
  for (int i = 0; i < 4; ++i) {
    double v = eig.values(i);
    if (v < 0.0) {
      if (v < -1e-9) {
        std::ostringstream os;
        os << "state eigenvalue is negative: " << v;
        throw NumericalFailure(os.str());
      }
      v = 0.0;
    }
    x.col(i) *= std::sqrt(v);
  }
  const Eigen::Matrix4cd a = x.transpose() * spin_flip_op() * x;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(a);

  Concurrence out;
  out.wootters_eigs = svd.singularValues();  // descending, nonnegative
  out.value = std::max(0.0, out.wootters_eigs(0) - out.wootters_eigs(1) -
                                out.wootters_eigs(2) - out.wootters_eigs(3));
  return out;
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw OutOfRange("entropy argument outside [0, 1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

double eof(double c) {
  if (c < -1e-9 || c > 1.0 + 1e-9) {
    std::ostringstream os;
    os << "concurrence = " << c << " outside [0, 1]";
    throw OutOfRange(os.str());
  }
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

EntanglementReport entanglement_report(const DensityMatrix& rho,
                                       const Tolerances& tol) {
  const Concurrence c = concurrence(rho, tol);
  return EntanglementReport{c.value, eof(c.value), c.wootters_eigs};
}

}  // namespace qbell
