#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qfl/channels.hpp"
#include "qfl/qstate.hpp"
#include "qfl/synthetic.hpp"

using namespace qfl;

namespace {

DensityMatrix random_state(std::mt19937_64& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> p(d);
  double sum = 0.0;
  for (auto& x : p) sum += (x = u(rng));
  for (auto& x : p) x /= sum;
  const auto v = random_jacobi_unitary(rng, d);
  return DensityMatrix(v * CMatrix::diagonal(p) * v.adjoint());
}

}  // namespace

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix(CMatrix{{0.5, 0.0}, {0.0, 0.5}}));
  auto code_of = [](const CMatrix& m) {
    try {
      DensityMatrix rho(m);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code_of(CMatrix{{0.9, 0.0}, {0.0, 0.0}}) == ErrorCode::InvalidState);
  CHECK(code_of(CMatrix{{1.5, 0.0}, {0.0, -0.5}}) == ErrorCode::InvalidState);
  CHECK(code_of(CMatrix{{0.5, 0.1}, {0.0, 0.5}}) == ErrorCode::NotHermitian);
  const Complex psi[] = {1.0, Complex(0.0, 1.0)};
  CHECK(DensityMatrix::pure(psi).purity() == doctest::Approx(1.0));
}

TEST_CASE("ThermalParams rejects non-positive temperatures") {
  CHECK_THROWS_AS(ThermalParams(0.0), Error);
  CHECK_THROWS_AS(ThermalParams(-1.0), Error);
  CHECK(ThermalParams::from_beta(4.0).temperature() == doctest::Approx(0.25));
}

TEST_CASE("Gibbs state and partition function") {
  const auto h = Hamiltonian::two_level(0.0, 1.0);
  SUBCASE("high temperature is maximally mixed") {
    const auto rho = gibbs_state(h, ThermalParams(1e12));
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(0.5));
    CHECK(von_neumann_entropy(rho) == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("beta * dE = ln 2") {
    const ThermalParams th = ThermalParams::from_beta(std::log(2.0));
    const auto rho = gibbs_state(h, th);
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(2.0 / 3.0));
    CHECK(rho.matrix()(1, 1).real() == doctest::Approx(1.0 / 3.0));
    CHECK(partition_function(h, th) == doctest::Approx(1.5));
    CHECK(free_energy(h, th) == doctest::Approx(-std::log(1.5) / std::log(2.0)));
  }
  SUBCASE("low temperature is the ground state without overflow") {
    const auto rho = gibbs_state(Hamiltonian::two_level(-500.0, 500.0), ThermalParams(1e-3));
    CHECK(rho.matrix()(0, 0).real() == doctest::Approx(1.0));
    CHECK(von_neumann_entropy(rho) == doctest::Approx(0.0));
    CHECK(free_energy(Hamiltonian::two_level(-500.0, 500.0), ThermalParams(1e-3)) == doctest::Approx(-500.0));
  }
}

TEST_CASE("F = U - T S for random Hamiltonians") {
  std::mt19937_64 rng(17);
  for (std::size_t d = 2; d <= 5; ++d) {
    for (double temp : {0.1, 1.0, 7.0}) {
      const Hamiltonian h(random_hermitian(rng, d));
      const ThermalParams th(temp);
      const auto rho = gibbs_state(h, th);
      const double f = free_energy(h, th);
      CHECK(f == doctest::Approx(internal_energy(rho, h) - temp * von_neumann_entropy(rho)).epsilon(1e-10));
      CHECK(f == doctest::Approx(-temp * std::log(partition_function(h, th))).epsilon(1e-10));
    }
  }
}

TEST_CASE("von Neumann entropy") {
  const Complex psi[] = {1.0, 0.0};
  CHECK(von_neumann_entropy(DensityMatrix::pure(psi)) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(DensityMatrix(CMatrix{{0.5, 0.0}, {0.0, 0.5}})) == doctest::Approx(std::log(2.0)));
  CHECK(von_neumann_entropy(ad_closed_form(plus_state(), DecayParams(1.0), 1.0)) ==
        doctest::Approx(0.2323736).epsilon(1e-6));
  const double p[] = {0.25, 0.25, 0.5, 0.0};
  CHECK(entropy_of_spectrum(p) == doctest::Approx(1.5 * std::log(2.0)));
}

TEST_CASE("entropy is unitarily invariant and bounded") {
  std::mt19937_64 rng(23);
  for (std::size_t d = 2; d <= 5; ++d) {
    const auto rho = random_state(rng, d);
    const auto u = random_jacobi_unitary(rng, d);
    const double s = von_neumann_entropy(rho);
    CHECK(s >= 0.0);
    CHECK(s <= std::log(static_cast<double>(d)) + 1e-12);
    CHECK(von_neumann_entropy(DensityMatrix(u * rho.matrix() * u.adjoint())) == doctest::Approx(s).epsilon(1e-11));
  }
}

TEST_CASE("clamped_spectrum") {
  SpectralDecomposition s;
  s.values = {-1e-13, 1.0 + 1e-13};
  const auto p = clamped_spectrum(s);
  CHECK(p[0] == 0.0);
  CHECK(p[1] == 1.0);
  s.values = {-1e-6, 1.0};
  CHECK_THROWS_AS(clamped_spectrum(s), Error);
}

TEST_CASE("internal energy") {
  const auto h = Hamiltonian::two_level(0.0, 1.0);
  CHECK(internal_energy(plus_state(), h) == doctest::Approx(0.5));
  CHECK(internal_energy(rabi_state(std::numbers::pi, 1.0), h) == doctest::Approx(1.0));
}

TEST_CASE("overlap matrix") {
  const auto energy = hermitian_eig(Hamiltonian::two_level(0.0, 1.0).matrix());
  SUBCASE("diagonal state gives a permutation") {
    const auto w = overlap_matrix(energy, hermitian_eig(CMatrix{{0.25, 0.0}, {0.0, 0.75}}));
    CHECK(w(0, 0) + w(0, 1) == doctest::Approx(1.0));
    CHECK(std::max(w(0, 0), w(0, 1)) == doctest::Approx(1.0));
  }
  SUBCASE("plus state gives one half") {
    const auto w = overlap_matrix(energy, hermitian_eig(plus_state().matrix()));
    for (std::size_t n = 0; n < 2; ++n)
      for (std::size_t k = 0; k < 2; ++k) CHECK(w(n, k) == doctest::Approx(0.5));
  }
  SUBCASE("Rabi state at angle theta") {
    const double t = 0.3;
    const auto rho = rabi_state(std::numbers::pi, t);
    const auto w = overlap_matrix(energy, hermitian_eig(rho.matrix()));
    const double c2 = std::pow(std::cos(std::numbers::pi * t / 2), 2);
    // The populated eigenvector of rho is cos|g> - i sin|e>.
    const bool k1_populated = hermitian_eig(rho.matrix()).values[1] > 0.5;
    const std::size_t k = k1_populated ? 1 : 0;
    CHECK(w(0, k) == doctest::Approx(c2));
    CHECK(w(1, k) == doctest::Approx(1.0 - c2));
  }
}

TEST_CASE("overlap matrices are doubly stochastic") {
  std::mt19937_64 rng(29);
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto e = hermitian_eig(random_hermitian(rng, d));
    const auto s = hermitian_eig(random_state(rng, d).matrix());
    CHECK(overlap_matrix(e, s).stochasticity_defect() < 1e-12);
  }
}

TEST_CASE("l1 coherence") {
  const auto energy = hermitian_eig(Hamiltonian::two_level(0.0, 1.0).matrix());
  CHECK(l1_coherence(DensityMatrix(CMatrix{{0.3, 0.0}, {0.0, 0.7}}), energy) == doctest::Approx(0.0));
  CHECK(l1_coherence(plus_state(), energy) == doctest::Approx(1.0));
  for (double t : {0.5, 2.0, 5.0}) {
    CHECK(l1_coherence(ad_closed_form(plus_state(), DecayParams(1.0), t), energy) ==
          doctest::Approx(std::exp(-t / 2)));
  }
}
