#pragma once

#include <Eigen/Dense>

#include "qbell/states.hpp"

namespace qbell {

struct Concurrence {
  double value = 0.0;              // max(0, l1 - l2 - l3 - l4)
  Eigen::Vector4d wootters_eigs;   // l1 >= l2 >= l3 >= l4 >= 0
};

struct EntanglementReport {
  double concurrence = 0.0;
  double eof = 0.0;
  Eigen::Vector4d wootters_eigs;
};

/// Spin flip (sigma_y x sigma_y) rho^* (sigma_y x sigma_y). An involution.
DensityMatrix spin_flip(const DensityMatrix& rho);

/// |<psi|psi~>| with |psi~> = (sigma_y x sigma_y)|psi^*>.
double concurrence_pure(const PureState& psi);

/// Wootters concurrence of a mixed state. The eigenvalues are the square
/// roots of the spectrum of rho * spin_flip(rho), sorted descending; tiny
/// negative real parts are clipped at zero. Throws NumericalFailure when
/// the product's spectrum is materially complex or negative.
Concurrence concurrence(const DensityMatrix& rho, const Tolerances& tol = {});

/// Binary Shannon entropy, -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0.
double binary_entropy(double x);

/// Entanglement of formation as a function of concurrence,
/// h((1 + sqrt(1 - C^2)) / 2). Throws OutOfRange for C outside [0, 1].
double eof(double c);

EntanglementReport entanglement_report(const DensityMatrix& rho,
                                       const Tolerances& tol = {});

}  // namespace qbell
