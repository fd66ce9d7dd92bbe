#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qbell/nonlocality.hpp"

namespace qbell {

struct SharedDetails {
  double left_frame_residual = 0.0;   // worst 1 - |<u_k | p_j>| over the pairing
  double right_frame_residual = 0.0;  // same for the right singular directions
  bool swapped = false;               // top-2 pairing crossed over
  double ratio_residual = 0.0;        // normalized |t1 f2 - t2 f1|
  double cert_gap_first = 0.0;        // N(rho)   - tr(rho   S*) for the best S*
  double cert_gap_second = 0.0;       // N(varrho) - tr(varrho S*)
};

/// Outcome of the shared-optimal-operator test for a state pair.
/// certificate = true means a concrete operator was exhibited that attains
/// both states' nonlocality within 1e-7. The three conditions are the
/// analytic criteria; they are reliable only when degenerate_path is false.
struct SharedOperatorVerdict {
  bool cond_same_frames = false;
  bool cond_same_order = false;
  bool cond_ratio = false;
  bool certificate = false;
  bool degenerate_path = false;
  SharedDetails details;

  bool conditions_verdict() const {
    return cond_same_frames && cond_same_order && cond_ratio;
  }
};

/// Tests whether rho and varrho admit a common optimal CHSH operator.
/// Throws ZeroCorrelation when either correlation matrix vanishes.
SharedOperatorVerdict shared_conditions(const DensityMatrix& rho,
                                        const DensityMatrix& varrho,
                                        double tol = 1e-8,
                                        const Tolerances& tols = {});

struct Theorem2Pair {
  PureState psi;        // (U_A x U_B)(cos t |00> + sin t |11>)
  PureState psi_prime;  // (U_A x U_B)(sin t |00> + cos t |11>)
  ChshOperator s_plus;  // conjugated sin2t XX + ZZ operator (normalized)
  ChshOperator s_minus; // conjugated -sin2t YY + ZZ operator (normalized)
};

/// The unique pure-state pair sharing an optimal CHSH operator, together
/// with the two canonical shared operators, conjugated by (U_A, U_B).
Theorem2Pair theorem2_pair(double theta, const Unitary2& u_a, const Unitary2& u_b);

struct NoTripleReport {
  int trials = 0;
  int violations = 0;      // random pure states whose N is attained by S_plus
  int skipped = 0;         // draws that coincided with a pair member
  double min_residual = 0; // smallest N(chi) - tr(chi S_plus) seen
};

/// Randomized falsification run for the at-most-two claim: draws Haar
/// random pure states and checks that none attains its nonlocality on the
/// pair's shared operator S_plus. Throws DegenerateTheta near theta = pi/4
/// where the pair collapses to a single state.
NoTripleReport probe_no_triple(double theta, int trials, std::uint64_t seed,
                               const Tolerances& tols = {});

}  // namespace qbell
