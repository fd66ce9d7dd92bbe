#include "qbell/shared.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace qbell {

namespace {

double lambda_of(const SignedSvd3& s, int k) {
  return s.values(k) * s.values(k);
}

// All Pauli coefficient matrices of operators attaining the state's
// nonlocality. Unique when lambda2 > lambda3; otherwise a sampled family
// over the degenerate eigenspace of T^T T.
std::vector<Eigen::Matrix3d> optimal_family(const Eigen::Matrix3d& t,
                                            const SignedSvd3& s,
                                            const Tolerances& tols) {
  const double l1 = lambda_of(s, 0), l2 = lambda_of(s, 1), l3 = lambda_of(s, 2);
  const double scale = 2.0 / std::sqrt(l1 + l2);
  const Eigen::Vector3d v1 = s.v.col(0), v2 = s.v.col(1), v3 = s.v.col(2);

  std::vector<Eigen::Matrix3d> fam;
  fam.push_back(scale * t * (v1 * v1.transpose() + v2 * v2.transpose()));
  if (l2 - l3 >= tols.compare_tol) return fam;

  if (l1 - l3 < tols.compare_tol) {
    // Fully degenerate: any orthonormal pair works. Sample a fixed set.
    std::mt19937_64 rng(0x51ab5eedULL);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int k = 0; k < 256; ++k) {
      Eigen::Vector3d c(n(rng), n(rng), n(rng));
      c.normalize();
      Eigen::Vector3d cp(n(rng), n(rng), n(rng));
      cp -= cp.dot(c) * c;
      if (cp.norm() < 1e-6) continue;
      cp.normalize();
      fam.push_back(scale * t * (c * c.transpose() + cp * cp.transpose()));
    }
  } else {
    // lambda2 ~ lambda3: rotate mu2 through the tied plane.
    for (int k = 1; k < 64; ++k) {
      const double phi = M_PI * k / 64.0;
      const Eigen::Vector3d mu2 = std::cos(phi) * v2 + std::sin(phi) * v3;
      fam.push_back(scale * t * (v1 * v1.transpose() + mu2 * mu2.transpose()));
    }
  }
  return fam;
}

}  // namespace

SharedOperatorVerdict shared_conditions(const DensityMatrix& rho,
                                        const DensityMatrix& varrho,
                                        double tol, const Tolerances& tols) {
  const Eigen::Matrix3d t_mat = bloch_decompose(rho).t;
  const Eigen::Matrix3d f_mat = bloch_decompose(varrho).t;
  const SignedSvd3 st = svd3(t_mat, tols);
  const SignedSvd3 sf = svd3(f_mat, tols);
  if (lambda_of(st, 0) <= 1e-12 || lambda_of(sf, 0) <= 1e-12)
    throw ZeroCorrelation("a correlation matrix vanishes; any setting is optimal");

  SharedOperatorVerdict out;
  out.degenerate_path =
      (lambda_of(st, 1) - lambda_of(st, 2) < tols.compare_tol) ||
      (lambda_of(sf, 1) - lambda_of(sf, 2) < tols.compare_tol);

  // Pair the top-2 singular directions of T with directions of F by best
  // simultaneous left/right overlap.
  int match[2] = {-1, -1};
  {
    double best = -1.0;
    for (int j1 = 0; j1 < 3; ++j1) {
      for (int j2 = 0; j2 < 3; ++j2) {
        if (j1 == j2) continue;
        auto score = [&](int k, int j) {
          const double ql = std::abs(st.u.col(k).dot(sf.u.col(j)));
          const double qr = std::abs(st.v.col(k).dot(sf.v.col(j)));
          return std::min(ql, qr);
        };
        const double m = std::min(score(0, j1), score(1, j2));
        if (m > best) {
          best = m;
          match[0] = j1;
          match[1] = j2;
        }
      }
    }
  }
  out.details.swapped = (match[0] == 1 && match[1] == 0);

  double left_res = 0.0, right_res = 0.0;
  double sign_lr[2];
  for (int k = 0; k < 2; ++k) {
    const double dl = st.u.col(k).dot(sf.u.col(match[k]));
    const double dr = st.v.col(k).dot(sf.v.col(match[k]));
    left_res = std::max(left_res, 1.0 - std::abs(dl));
    right_res = std::max(right_res, 1.0 - std::abs(dr));
    sign_lr[k] = (dl < 0.0 ? -1.0 : 1.0) * (dr < 0.0 ? -1.0 : 1.0);
  }
  out.details.left_frame_residual = left_res;
  out.details.right_frame_residual = right_res;
  out.cond_same_frames = left_res <= tol && right_res <= tol;

  const bool tie_t = std::abs(st.values(0)) - std::abs(st.values(1)) < tol;
  const bool tie_f = std::abs(sf.values(0)) - std::abs(sf.values(1)) < tol;
  const bool pairs_top2 = (match[0] < 2 && match[1] < 2);
  out.cond_same_order =
      pairs_top2 && (!out.details.swapped || tie_t || tie_f);

  if (pairs_top2) {
    const double t1 = st.values(0), t2 = st.values(1);
    const double f1 = sf.values(match[0]) * sign_lr[0];
    const double f2 = sf.values(match[1]) * sign_lr[1];
    const double scale = std::hypot(t1, t2) * std::hypot(f1, f2);
    out.details.ratio_residual = std::abs(t1 * f2 - t2 * f1) / scale;
    out.cond_ratio = out.details.ratio_residual <= tol && t1 * f1 > 0.0;
  } else {
    out.details.ratio_residual = 1.0;
    out.cond_ratio = false;
  }

  // Direct certificate: exhibit one operator attaining both states'
  // nonlocality. Candidates come from both states' optimal families.
  const double n_t = 2.0 * std::sqrt(lambda_of(st, 0) + lambda_of(st, 1));
  const double n_f = 2.0 * std::sqrt(lambda_of(sf, 0) + lambda_of(sf, 1));
  std::vector<Eigen::Matrix3d> candidates = optimal_family(t_mat, st, tols);
  {
    std::vector<Eigen::Matrix3d> more = optimal_family(f_mat, sf, tols);
    candidates.insert(candidates.end(), more.begin(), more.end());
  }
  double best_min_gap = -std::numeric_limits<double>::infinity();
  for (const Eigen::Matrix3d& w : candidates) {
    const double val_t = w.cwiseProduct(t_mat).sum();
    const double val_f = w.cwiseProduct(f_mat).sum();
    const double gap_t = n_t - val_t;
    const double gap_f = n_f - val_f;
    if (-std::max(gap_t, gap_f) > best_min_gap) {
      best_min_gap = -std::max(gap_t, gap_f);
      out.details.cert_gap_first = gap_t;
      out.details.cert_gap_second = gap_f;
    }
  }
  out.certificate = out.details.cert_gap_first <= 1e-7 &&
                    out.details.cert_gap_second <= 1e-7;
  return out;
}

Theorem2Pair theorem2_pair(double theta, const Unitary2& u_a, const Unitary2& u_b) {
  Theorem2Pair pair;
  pair.psi = apply_local_unitary(gamma_state(theta), u_a, u_b);
  pair.psi_prime =
      apply_local_unitary(gamma_state(M_PI / 2.0 - theta), u_a, u_b);

  const double s2 = std::sin(2.0 * theta);
  const double scale = 2.0 / std::sqrt(1.0 + s2 * s2);
  Eigen::Matrix3d w_plus = Eigen::Matrix3d::Zero();
  w_plus(0, 0) = scale * s2;
  w_plus(2, 2) = scale;
  Eigen::Matrix3d w_minus = Eigen::Matrix3d::Zero();
  w_minus(1, 1) = -scale * s2;
  w_minus(2, 2) = scale;

  const Eigen::Matrix3d r_a = rotation_from_unitary(u_a).m;
  const Eigen::Matrix3d r_b = rotation_from_unitary(u_b).m;
  pair.s_plus.w = r_a * w_plus * r_b.transpose();
  pair.s_minus.w = r_a * w_minus * r_b.transpose();
  return pair;
}

NoTripleReport probe_no_triple(double theta, int trials, std::uint64_t seed,
                               const Tolerances& tols) {
  if (std::abs(theta - M_PI / 4.0) < 1e-6)
    throw DegenerateTheta("pair collapses at theta = pi/4");

  const Theorem2Pair pair = theorem2_pair(theta, Unitary2{Eigen::Matrix2cd::Identity()},
                                          Unitary2{Eigen::Matrix2cd::Identity()});
  NoTripleReport rep;
  rep.trials = trials;
  rep.min_residual = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    const PureState chi = random_pure(mix_seed(seed, static_cast<std::uint64_t>(i)));
    const double overlap1 = std::abs(chi.amplitudes.dot(pair.psi.amplitudes));
    const double overlap2 = std::abs(chi.amplitudes.dot(pair.psi_prime.amplitudes));
    if (overlap1 * overlap1 > 1.0 - 1e-6 || overlap2 * overlap2 > 1.0 - 1e-6) {
      ++rep.skipped;
      continue;
    }
    const DensityMatrix rho = to_density(chi);
    const BlochDecomposition bloch = bloch_decompose(rho);
    const SignedSvd3 svd = svd3(bloch.t, tols);
    const double n = 2.0 * std::sqrt(lambda_of(svd, 0) + lambda_of(svd, 1));
    const double residual = n - chsh_value(bloch, pair.s_plus);
    rep.min_residual = std::min(rep.min_residual, residual);
    if (residual <= 1e-9) ++rep.violations;
  }
  return rep;
}

}  // namespace qbell
