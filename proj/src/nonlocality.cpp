#include "qbell/nonlocality.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace qbell {

namespace {

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

ChshOperator operator_from_setting(const ChshSetting& s) {
  ChshOperator op;
  op.w = s.a * (s.b + s.b_prime).transpose() +
         s.a_prime * (s.b - s.b_prime).transpose();
  op.setting = s;
  return op;
}

Eigen::Matrix4cd chsh_matrix(const ChshOperator& op) {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      s += op.w(j, k) * kron2(pauli(j + 1), pauli(k + 1));
  return s;
}

NonlocalityReport nonlocality(const DensityMatrix& rho, const Tolerances& tol) {
  const BlochDecomposition bloch = bloch_decompose(rho);
  const SignedSvd3 svd = svd3(bloch.t, tol);
  const Eigen::Vector3d t = svd.values;
  const Eigen::Vector3d lam = t.cwiseAbs2();  // eigenvalues of T^T T, descending

  NonlocalityReport rep;
  rep.lambda1 = lam(0);
  rep.lambda2 = lam(1);
  rep.value = 2.0 * std::sqrt(lam(0) + lam(1));
  rep.degenerate = (lam(1) - lam(2)) < tol.compare_tol;
  rep.rank_deficient = lam(1) < tol.compare_tol;
  rep.zero_correlation = lam(0) <= 1e-12;

  ChshSetting setting;
  if (rep.zero_correlation) {
    // T ~ 0: every setting evaluates to ~0; return the canonical z-axis one.
    setting.a = Eigen::Vector3d::UnitZ();
    setting.a_prime = Eigen::Vector3d::UnitX();
    setting.b = Eigen::Vector3d::UnitZ();
    setting.b_prime = Eigen::Vector3d::UnitZ();
    setting.mix_angle = 0.0;
    rep.setting = setting;
    rep.op = operator_from_setting(setting);
    rep.op.setting = setting;
    return rep;
  }

  // Equality frame: c = mu1, c' = mu2 (top right-singular directions);
  // a, a' point along T c, T c' up to the signs of the singular values.
  const Eigen::Vector3d c = svd.v.col(0);
  const Eigen::Vector3d c_prime = svd.v.col(1);
  const Eigen::Vector3d a = sign_of(t(0)) * svd.u.col(0);
  const Eigen::Vector3d a_prime = sign_of(t(1)) * svd.u.col(1);
  const double cos_m = std::sqrt(lam(0) / (lam(0) + lam(1)));
  const double sin_m = std::sqrt(lam(1) / (lam(0) + lam(1)));

  setting.a = a;
  setting.a_prime = a_prime;
  setting.b = cos_m * c + sin_m * c_prime;
  setting.b_prime = cos_m * c - sin_m * c_prime;
  setting.mix_angle = std::atan2(sin_m, cos_m);

  rep.setting = setting;
  rep.op.w = (2.0 / std::sqrt(lam(0) + lam(1))) * bloch.t *
             (c * c.transpose() + c_prime * c_prime.transpose());
  rep.op.setting = setting;
  return rep;
}

std::pair<ChshOperator, ChshSetting> optimal_chsh(const DensityMatrix& rho,
                                                  const Tolerances& tol) {
  NonlocalityReport rep = nonlocality(rho, tol);
  return {rep.op, rep.setting};
}

double chsh_value(const BlochDecomposition& bloch, const ChshOperator& op) {
  return op.w.cwiseProduct(bloch.t).sum();
}

double chsh_value(const DensityMatrix& rho, const ChshOperator& op) {
  return chsh_value(bloch_decompose(rho), op);
}

namespace {

// ||T(b+b')|| + ||T(b-b')||: the CHSH value after the analytic inner
// maximization over Alice's directions.
double pair_value(const Eigen::Matrix3d& t, const Eigen::Vector3d& b,
                  const Eigen::Vector3d& b_prime) {
  return (t * (b + b_prime)).norm() + (t * (b - b_prime)).norm();
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int n) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(n);
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

struct Candidate {
  double value;
  Eigen::Vector3d b, b_prime;
};

// Tangent-direction hill climb with shrinking step.
double refine(const Eigen::Matrix3d& t, Eigen::Vector3d b, Eigen::Vector3d bp,
              int iters, double step) {
  double best = pair_value(t, b, bp);
  for (int it = 0; it < iters; ++it) {
    bool improved = false;
    for (int which = 0; which < 2; ++which) {
      Eigen::Vector3d& v = which == 0 ? b : bp;
      // orthonormal tangent basis at v
      const Eigen::Vector3d any =
          std::abs(v.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
      const Eigen::Vector3d t1 = v.cross(any).normalized();
      const Eigen::Vector3d t2 = v.cross(t1);
      for (const Eigen::Vector3d& dir : {t1, t2, (-t1).eval(), (-t2).eval()}) {
        const Eigen::Vector3d cand = (v + step * dir).normalized();
        const double val = which == 0 ? pair_value(t, cand, bp) : pair_value(t, b, cand);
        if (val > best) {
          best = val;
          v = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
    if (step < 1e-10) break;
  }
  return best;
}

}  // namespace

double brute_force_nonlocality(const DensityMatrix& rho, int grid_steps,
                               int refine_iters, std::uint64_t seed) {
  if (grid_steps < 8) {
    std::ostringstream os;
    os << "grid_steps = " << grid_steps << ", need >= 8";
    throw BadResolution(os.str());
  }
  const Eigen::Matrix3d t = bloch_decompose(rho).t;
  const std::vector<Eigen::Vector3d> pts = fibonacci_sphere(grid_steps);

  // pair_value is symmetric under swapping b and b', so scan i <= j only.
  std::vector<Candidate> top;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i; j < pts.size(); ++j) {
      const double val = pair_value(t, pts[i], pts[j]);
      top.push_back({val, pts[i], pts[j]});
    }
  }
  std::sort(top.begin(), top.end(),
            [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  const std::size_t keep = std::min<std::size_t>(top.size(), 12);

  // A few random restarts guard against a poor grid basin.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Candidate> starts(top.begin(), top.begin() + keep);
  for (int k = 0; k < 8; ++k) {
    Eigen::Vector3d b(n(rng), n(rng), n(rng));
    Eigen::Vector3d bp(n(rng), n(rng), n(rng));
    b.normalize();
    bp.normalize();
    starts.push_back({pair_value(t, b, bp), b, bp});
  }

  const double step0 = 2.0 * M_PI / std::sqrt(static_cast<double>(grid_steps));
  double best = 0.0;
  for (const Candidate& s : starts)
    best = std::max(best, refine(t, s.b, s.b_prime, refine_iters, step0));
  return best;
}

}  // namespace qbell
