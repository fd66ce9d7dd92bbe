#pragma once

#include <optional>

#include "qbell/entanglement.hpp"
#include "qbell/nonlocality.hpp"

namespace qbell {

enum class StructuralVerdict { Member, NotMember, Indeterminate };

struct RecoveredParams {
  double p = 0.0;      // mixing weight, reported with p >= 1/2
  double theta = 0.0;  // in [0, pi)
  Unitary2 u_a;
  Unitary2 u_b;
};

/// Certificate that N(rho) <= 2 sqrt(1 + C^2) and whether rho saturates it.
/// operational_member compares nonlocality against the bound; the
/// structural test additionally recovers the rank-2 {|00>,|11>}-block
/// normal form behind a pair of local unitaries when the correlation
/// frame is unambiguous.
struct QMembership {
  double concurrence = 0.0;
  double nonlocality = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // bound - nonlocality, >= 0 up to tolerance
  bool operational_member = false;
  StructuralVerdict structural_member = StructuralVerdict::Indeterminate;
  std::optional<RecoveredParams> recovered;
};

/// 2 sqrt(1 + C^2). Throws OutOfRange for C outside [0, 1].
double bound_value(double c);

/// |N(psi) - 2 sqrt(1 + C(psi)^2)|; vanishes for every pure state.
double check_pure_relation(const PureState& psi, const Tolerances& tol = {});

QMembership certify(const DensityMatrix& rho, const Tolerances& tol = {});

/// The rank-2 density matrix with middle block [[1-alpha, c], [c, 1+alpha]]/2
/// on {|01>,|10>}. Requires c^2 <= 1 - alpha^2 (NotPSD otherwise); always
/// saturates the bound.
DensityMatrix vw_matrix(double c, double alpha);

}  // namespace qbell
