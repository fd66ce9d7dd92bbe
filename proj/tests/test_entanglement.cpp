#include "doctest.h"

#include <cmath>
#include <random>

#include "qbell/entanglement.hpp"
#include "test_helpers.hpp"

using namespace qbell;

namespace {

DensityMatrix bell() { return to_density(gamma_state(M_PI / 4)); }

DensityMatrix werner(double w) {
  return validate_density(w * bell().m + (1.0 - w) * Eigen::Matrix4cd::Identity() / 4.0);
}

PureState basis_state(int idx) {
  Eigen::Vector4cd a = Eigen::Vector4cd::Zero();
  a(idx) = 1.0;
  return PureState{a};
}

}  // namespace

TEST_CASE("spin flip on fixed states") {
  SUBCASE("bell projector is invariant") {
    const DensityMatrix rho = bell();
    CHECK((spin_flip(rho).m - rho.m).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("|00><00| maps to |11><11|") {
    const DensityMatrix flipped = spin_flip(to_density(basis_state(0)));
    CHECK((flipped.m - to_density(basis_state(3)).m).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("maximally mixed is invariant") {
    const DensityMatrix mixed = validate_density(Eigen::Matrix4cd::Identity() / 4.0);
    CHECK((spin_flip(mixed).m - mixed.m).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("involution on random states") {
    for (int i = 0; i < 100; ++i) {
      const DensityMatrix rho = random_density(mix_seed(41, i), 4);
      CHECK((spin_flip(spin_flip(rho)).m - rho.m).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}

TEST_CASE("pure-state concurrence") {
  CHECK(concurrence_pure(gamma_state(M_PI / 4)) == doctest::Approx(1.0));
  CHECK(concurrence_pure(basis_state(1)) == doctest::Approx(0.0));
  // |sin 2 theta| at theta = pi/8
  CHECK(concurrence_pure(gamma_state(M_PI / 8)) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("mixed-state concurrence on fixed states") {
  SUBCASE("bell projector") {
    const Concurrence c = concurrence(bell());
    CHECK(c.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.wootters_eigs(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.wootters_eigs.tail<3>().cwiseAbs().maxCoeff() <= 1e-8);
  }
  SUBCASE("werner state against the analytic value and an eigenvalue oracle") {
    const DensityMatrix rho = werner(0.8);
    const Concurrence c = concurrence(rho);
    CHECK(std::abs(c.value - 0.7) <= 1e-12);  // (3w - 1)/2

    // independent route: eigenvalues of rho * rho~ via the complex solver
    const Eigen::Matrix4cd yy = oracle::kron(oracle::sigma(2), oracle::sigma(2));
    const Eigen::Matrix4cd product = rho.m * yy * rho.m.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(product, false);
    Eigen::Vector4d lams;
    for (int i = 0; i < 4; ++i)
      lams(i) = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    std::sort(lams.data(), lams.data() + 4, std::greater<double>());
    const double c_oracle = std::max(0.0, lams(0) - lams(1) - lams(2) - lams(3));
    CHECK(std::abs(c.value - c_oracle) <= 1e-7);
    CHECK((c.wootters_eigs - lams).cwiseAbs().maxCoeff() <= 1e-7);
  }
  SUBCASE("vw states have concurrence |sin 2 theta| for every p") {
    const double th = 0.6;
    for (const double p : {0.0, 0.25, 0.5, 1.0}) {
      const DensityMatrix rho = vw_state(p, th);
      // X-state oracle: twice the outer off-diagonal
      const double expected = 2.0 * std::abs(rho.m(0, 3));
      CHECK(std::abs(expected - std::abs(std::sin(2 * th))) <= 1e-12);
      CHECK(std::abs(concurrence(rho).value - expected) <= 1e-10);
    }
  }
  SUBCASE("separable diagonal states have zero concurrence") {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      Eigen::Vector4d p;
      for (int k = 0; k < 4; ++k) p(k) = u(gen);
      p /= p.sum();
      const DensityMatrix rho =
          validate_density(p.cast<Complex>().asDiagonal().toDenseMatrix());
      CHECK(concurrence(rho).value <= 1e-12);
    }
  }
}

TEST_CASE("concurrence invariants") {
  SUBCASE("pure/mixed consistency") {
    double max_diff = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const PureState psi = random_pure(mix_seed(51, i));
      max_diff = std::max(
          max_diff, std::abs(concurrence(to_density(psi)).value - concurrence_pure(psi)));
    }
    CHECK(max_diff <= 1e-8);
  }
  SUBCASE("local-unitary invariance") {
    double max_diff = 0.0;
    for (int i = 0; i < 500; ++i) {
      const DensityMatrix rho = random_density(mix_seed(61, i), 1 + i % 4);
      const Unitary2 ua = random_unitary(mix_seed(62, i));
      const Unitary2 ub = random_unitary(mix_seed(63, i));
      const double before = concurrence(rho).value;
      const double after = concurrence(apply_local_unitary(rho, ua, ub)).value;
      max_diff = std::max(max_diff, std::abs(before - after));
    }
    CHECK(max_diff <= 1e-8);
  }
  SUBCASE("range and eigenvalue ordering") {
    for (int i = 0; i < 200; ++i) {
      const Concurrence c = concurrence(random_density(mix_seed(71, i), 4));
      CHECK(c.value >= 0.0);
      CHECK(c.value <= 1.0 + 1e-9);
      for (int k = 1; k < 4; ++k) {
        CHECK(c.wootters_eigs(k) <= c.wootters_eigs(k - 1));
        CHECK(c.wootters_eigs(k) >= 0.0);
      }
    }
  }
}

TEST_CASE("entanglement of formation") {
  CHECK(eof(0.0) == doctest::Approx(0.0));
  CHECK(eof(1.0) == doctest::Approx(1.0));
  // frozen high-precision value of h((1 + sqrt(0.51))/2)
  CHECK(eof(0.7) == doctest::Approx(0.5918574071706771).epsilon(1e-12));

  CHECK_THROWS_AS(eof(-0.1), OutOfRange);
  CHECK_THROWS_AS(eof(1.1), OutOfRange);

  SUBCASE("strictly increasing on a grid") {
    double prev = eof(0.1);
    for (int k = 2; k <= 9; ++k) {
      const double cur = eof(0.1 * k);
      CHECK(cur > prev);
      prev = cur;
    }
  }
  SUBCASE("binary entropy conventions") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(binary_entropy(-0.01), OutOfRange);
  }
}

TEST_CASE("entanglement report ties the pieces together") {
  for (int i = 0; i < 100; ++i) {
    const EntanglementReport rep =
        entanglement_report(random_density(mix_seed(81, i), 2 + i % 3));
    const double x = 0.5 * (1.0 + std::sqrt(1.0 - rep.concurrence * rep.concurrence));
    CHECK(std::abs(rep.eof - binary_entropy(x)) <= 1e-12);
    CHECK(rep.concurrence >= 0.0);
    CHECK(rep.concurrence <= 1.0 + 1e-9);
  }
}
