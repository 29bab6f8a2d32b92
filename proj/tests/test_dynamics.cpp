#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "zeno/dynamics.hpp"
#include "zeno/errors.hpp"

using namespace zeno;
using std::numbers::pi;

namespace {

const double kSqrt15 = std::sqrt(15.0);

RabiModel random_model(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> w(0.0, 5.0);
  std::uniform_real_distribution<double> phase(-pi, pi);
  return RabiModel(w(rng), w(rng), phase(rng), phase(rng));
}

}  // namespace

TEST_CASE("RabiModel derived quantities") {
  const RabiModel m = reference_model();
  CHECK(m.omega() == doctest::Approx(4.0).epsilon(1e-15));
  REQUIRE(m.t_poincare());
  CHECK(std::abs(*m.t_poincare() * m.omega() - 2 * pi) <= 1e-12);
  CHECK_FALSE(RabiModel(0.0, 0.0).t_poincare().has_value());
  CHECK_THROWS_AS(RabiModel(-1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(RabiModel(1.0, NAN), ValidationError);
}

TEST_CASE("rwa_hamiltonian examples") {
  const ComplexMatrix a = rwa_hamiltonian(RabiModel(1.0, 0.0));
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 1) = expected(1, 0) = 1.0;
  CHECK(max_abs_diff(a, expected) == 0.0);

  CHECK(max_abs(rwa_hamiltonian(RabiModel(0.0, 0.0))) == 0.0);

  const ComplexMatrix c = rwa_hamiltonian(RabiModel(1.0, kSqrt15, pi / 2, 0.0));
  CHECK(std::abs(c(0, 1) - Complex(0.0, 1.0)) <= 1e-15);
  CHECK(std::abs(c(1, 2) - Complex(kSqrt15, 0.0)) <= 1e-15);
  CHECK(c(0, 2) == Complex(0.0));
  CHECK(c(2, 0) == Complex(0.0));
  CHECK(hermiticity_defect(c) == 0.0);
}

TEST_CASE("closed_form_propagator examples") {
  const RabiModel m = reference_model();
  CHECK(max_abs_diff(closed_form_propagator(m, 0.0), ComplexMatrix::Identity(3, 3)) == 0.0);
  CHECK(max_abs_diff(closed_form_propagator(m, pi / 2), ComplexMatrix::Identity(3, 3)) <= 1e-10);

  // alpha = pi: U00 = (15 - 1)/16, U11 = -1, U02 = -(sqrt15/16) * 2.
  const ComplexMatrix u = closed_form_propagator(m, pi / 4);
  CHECK(std::abs(u(0, 0) - Complex(7.0 / 8.0)) <= 1e-12);
  CHECK(std::abs(u(1, 1) - Complex(-1.0)) <= 1e-12);
  CHECK(std::abs(u(0, 2) - Complex(-kSqrt15 / 8.0)) <= 1e-12);
  CHECK(max_abs_diff(u, hermitian_propagator(rwa_hamiltonian(m), pi / 4)) <= 1e-10);

  CHECK(max_abs_diff(closed_form_propagator(RabiModel(0.0, 0.0), 3.0),
                     ComplexMatrix::Identity(3, 3)) == 0.0);
  CHECK_THROWS_AS((void)closed_form_propagator(m, INFINITY), ValidationError);
}

TEST_CASE("closed form agrees with both oracles over random models") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dt(-10.0, 10.0);
  double worst_eig = 0.0, worst_taylor = 0.0, worst_unitary = 0.0, worst_period = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const RabiModel m = random_model(rng);
    const double t = dt(rng);
    const ComplexMatrix u = closed_form_propagator(m, t);
    worst_eig = std::max(worst_eig, max_abs_diff(u, hermitian_propagator(rwa_hamiltonian(m), t)));
    worst_taylor = std::max(
        worst_taylor,
        max_abs_diff(u, oracle::taylor_propagator(
                            oracle::ladder_generator(m.omega01(), m.omega12(), m.phi01(), m.phi12()),
                            t)));
    worst_unitary = std::max(worst_unitary, unitarity_defect(u));
    if (m.t_poincare()) {
      worst_period = std::max(worst_period, max_abs_diff(closed_form_propagator(m, *m.t_poincare()),
                                                         ComplexMatrix::Identity(3, 3)));
    }
  }
  CHECK(worst_eig <= 1e-10);
  CHECK(worst_taylor <= 1e-10);
  CHECK(worst_unitary <= 1e-12);
  CHECK(worst_period <= 1e-10);
}

TEST_CASE("pure_state_evolve: plain Rabi flopping when omega12 = 0") {
  const RabiModel m(1.3, 0.0);
  const StateVector psi0 = StateVector::basis(3, 0);
  for (double t : {0.0, 0.4, 1.1, 2.9, 7.5}) {
    const StateVector psi = pure_state_evolve(m, psi0, t);
    CHECK(std::abs(psi[0] - Complex(std::cos(1.3 * t))) <= 1e-12);
    CHECK(std::abs(psi[1] - Complex(0.0, -std::sin(1.3 * t))) <= 1e-12);
    CHECK(std::abs(psi[2]) <= 1e-15);
  }
}

TEST_CASE("pure_state_evolve: t = 0, norm preservation and dimension check") {
  const RabiModel m = reference_model();
  Eigen::VectorXcd v(3);
  v << Complex(0.6, 0.0), Complex(0.0, 0.48), Complex(0.64, 0.0);
  const StateVector psi0(v);
  CHECK((pure_state_evolve(m, psi0, 0.0).amplitudes() - v).norm() <= 1e-15);
  CHECK(std::abs(pure_state_evolve(m, psi0, 12.3).amplitudes().norm() - 1.0) <= 1e-12);
  CHECK_THROWS_AS((void)pure_state_evolve(m, StateVector::basis(2, 0), 1.0), ValidationError);
}

TEST_CASE("pure_state_evolve: strong 1-2 drive freezes |0>") {
  const RabiModel m(1.0, 1000.0);
  const double bound = 1.0 - 4.0 * std::pow(m.omega01() / m.omega(), 2);
  const double tp = *m.t_poincare();
  for (int i = 0; i <= 200; ++i) {
    const double t = tp * i / 200.0;
    CHECK(std::norm(pure_state_evolve(m, StateVector::basis(3, 0), t)[0]) >= bound);
  }
}

TEST_CASE("populations from |0> do not depend on the coupling phases") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> phase(-pi, pi), t(0.0, 4.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const RabiModel base(1.0, kSqrt15);
    const RabiModel shifted(1.0, kSqrt15, phase(rng), phase(rng));
    const double time = t(rng);
    const auto a = pure_state_evolve(base, StateVector::basis(3, 0), time);
    const auto b = pure_state_evolve(shifted, StateVector::basis(3, 0), time);
    for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(std::norm(a[j]) - std::norm(b[j])));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("interaction_transform examples") {
  const AtomLevels levels{0.0, 2.5, 7.0};
  ComplexMatrix diag = ComplexMatrix::Zero(3, 3);
  diag.diagonal() << 0.2, Complex(0.3, 0.1), 0.5;
  for (auto dir : {PictureDirection::to_interaction, PictureDirection::from_interaction}) {
    CHECK(max_abs_diff(interaction_transform(diag, levels, 3.3, dir), diag) == 0.0);
  }

  std::mt19937_64 rng(3);
  const ComplexMatrix x = oracle::random_hermitian(rng, 3) + kI * oracle::random_hermitian(rng, 3);
  CHECK(max_abs_diff(interaction_transform(x, levels, 0.0, PictureDirection::to_interaction), x) ==
        0.0);

  // |0><1| picks up exp(i (w0 - w1) t).
  ComplexMatrix e01 = ComplexMatrix::Zero(3, 3);
  e01(0, 1) = 1.0;
  const double t = 0.77;
  const ComplexMatrix out = interaction_transform(e01, levels, t, PictureDirection::to_interaction);
  CHECK(std::abs(out(0, 1) - std::polar(1.0, -2.5 * t)) <= 1e-15);
  CHECK(max_abs(out) == doctest::Approx(1.0));

  // Round trip, diagonal preservation and conjugation by exp(i H0 t).
  const ComplexMatrix to = interaction_transform(x, levels, t, PictureDirection::to_interaction);
  CHECK(max_abs_diff(interaction_transform(to, levels, t, PictureDirection::from_interaction), x) <=
        1e-14);
  CHECK((to.diagonal() - x.diagonal()).norm() == 0.0);
  ComplexMatrix h0 = ComplexMatrix::Zero(3, 3);
  h0.diagonal() << levels.omega0, levels.omega1, levels.omega2;
  const ComplexMatrix v = oracle::taylor_propagator(h0, -t);  // exp(+i H0 t)
  CHECK(max_abs_diff(to, v * x * v.adjoint()) <= 1e-12);
}

TEST_CASE("validate_rwa examples") {
  const RabiModel m(1.0, 0.5);
  const RwaReport ok = validate_rwa({0.0, 1e6, 2.5e6}, m, 100.0);
  CHECK(ok.passed);
  double smallest = INFINITY;
  for (const auto& r : ok.ratios) smallest = std::min(smallest, r.value);
  CHECK(smallest == doctest::Approx(5e5));
  CHECK(ok.ratios.size() == 3 + 12);

  const RwaReport close = validate_rwa({0.0, 1.0, 2.0}, m, 100.0);
  CHECK_FALSE(close.passed);
  CHECK_FALSE(close.ratios[0].passed);  // |w10| / 1 = 1

  const RwaReport degenerate = validate_rwa({0.0, 1e6, 2e6}, m, 100.0);
  CHECK_FALSE(degenerate.passed);
  for (const auto& r : degenerate.ratios) {
    if (r.label == "|w10 - w21|") {
      CHECK(r.value == 0.0);
      CHECK_FALSE(r.passed);
    }
  }
  for (int i = 0; i < 3; ++i) CHECK(degenerate.ratios[i].passed);

  CHECK_THROWS_AS((void)validate_rwa({0.0, 1.0, 2.0}, m, 1.0), ValidationError);
}
