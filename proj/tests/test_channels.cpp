#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qfl/channels.hpp"

using namespace qfl;

namespace {

double entry(const DensityMatrix& rho, std::size_t i, std::size_t j) { return rho.matrix()(i, j).real(); }

}  // namespace

TEST_CASE("amplitude damping Kraus operators") {
  for (double p : {0.0, 0.1, 0.5, 1.0}) CHECK(amplitude_damping_kraus(p).completeness_defect() < 1e-15);
  const auto excited = DensityMatrix(CMatrix{{0.0, 0.0}, {0.0, 1.0}});
  CHECK(apply_channel(amplitude_damping_kraus(0.0), excited).matrix() == excited.matrix());
  CHECK(entry(apply_channel(amplitude_damping_kraus(1.0), excited), 0, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(amplitude_damping_kraus(-0.1), Error);
  CHECK_THROWS_AS(amplitude_damping_kraus(1.1), Error);
}

TEST_CASE("one channel step on reference states") {
  const auto k = amplitude_damping_kraus(0.75);
  const auto out = apply_channel(k, plus_state());
  CHECK(entry(out, 0, 0) == doctest::Approx(0.875));
  CHECK(entry(out, 0, 1) == doctest::Approx(0.25));
  CHECK(entry(out, 1, 0) == doctest::Approx(0.25));
  CHECK(entry(out, 1, 1) == doctest::Approx(0.125));

  const auto mixed = apply_channel(amplitude_damping_kraus(0.5), DensityMatrix(CMatrix{{0.0, 0.0}, {0.0, 1.0}}));
  CHECK(entry(mixed, 0, 0) == doctest::Approx(0.5));
  const auto half = apply_channel(amplitude_damping_kraus(0.5), DensityMatrix(CMatrix{{0.5, 0.0}, {0.0, 0.5}}));
  CHECK(entry(half, 0, 0) == doctest::Approx(0.75));
  CHECK(entry(half, 1, 1) == doctest::Approx(0.25));
}

TEST_CASE("KrausChannel rejects incomplete sets") {
  CHECK_THROWS_AS(KrausChannel({CMatrix{{1.0, 0.0}, {0.0, 0.5}}}), Error);
  CHECK_THROWS_AS(KrausChannel({}), Error);
}

TEST_CASE("DecayParams") {
  CHECK(DecayParams(2.0).step_probability(0.25) == doctest::Approx(0.5));
  CHECK_THROWS_AS(DecayParams(2.0).step_probability(0.6), Error);
  CHECK_THROWS_AS(DecayParams(-1.0), Error);
  CHECK_THROWS_AS(DecayParams(1.0).step_probability(-0.1), Error);
}

TEST_CASE("closed-form decay") {
  const DecayParams dp(1.0);
  const auto rho0 = plus_state();
  CHECK(ad_closed_form(rho0, dp, 0.0).matrix() == rho0.matrix());
  const auto r1 = ad_closed_form(rho0, dp, 1.0);
  CHECK(entry(r1, 1, 1) == doctest::Approx(0.5 * std::exp(-1.0)));
  CHECK(entry(r1, 0, 1) == doctest::Approx(0.5 * std::exp(-0.5)));
  CHECK(r1.matrix().trace().real() == doctest::Approx(1.0));
  const auto late = ad_closed_form(rho0, dp, 60.0);
  CHECK(entry(late, 0, 0) == doctest::Approx(1.0));
  CHECK(std::abs(late.matrix()(0, 1)) < 1e-12);
  CHECK_THROWS_AS(ad_closed_form(rho0, dp, -1.0), Error);
}

TEST_CASE("closed-form decay is a semigroup and matches a single Kraus step") {
  const DecayParams dp(0.7);
  const auto rho0 = plus_state();
  const auto direct = ad_closed_form(rho0, dp, 1.7);
  const auto composed = ad_closed_form(ad_closed_form(rho0, dp, 0.6), dp, 1.1);
  CHECK(frobenius_distance(direct.matrix(), composed.matrix()) < 1e-14);
  const auto kraus = apply_channel(amplitude_damping_kraus(1.0 - std::exp(-0.7 * 1.7)), rho0);
  CHECK(frobenius_distance(direct.matrix(), kraus.matrix()) < 1e-14);
  const auto one_step = apply_channel(amplitude_damping_kraus(dp.step_probability(0.9)), rho0);
  CHECK(frobenius_distance(iterate_channel(rho0, dp, 0.9, 1).matrix(), one_step.matrix()) < 1e-15);
}

TEST_CASE("iterated channel approaches the continuum at first order") {
  const DecayParams dp(1.0);
  const auto exact = ad_closed_form(plus_state(), dp, 1.0);
  const double g250 = frobenius_distance(iterate_channel(plus_state(), dp, 1.0, 250).matrix(), exact.matrix());
  const double g500 = frobenius_distance(iterate_channel(plus_state(), dp, 1.0, 500).matrix(), exact.matrix());
  CHECK(g250 > 0.0);
  CHECK(g250 / g500 == doctest::Approx(2.0).epsilon(0.1));
  CHECK_THROWS_AS(iterate_channel(plus_state(), dp, 1.0, 0), Error);
}

TEST_CASE("Rabi state") {
  const double pi = std::numbers::pi;
  CHECK(entry(rabi_state(pi, 0.0), 0, 0) == doctest::Approx(1.0));
  CHECK(entry(rabi_state(pi, 1.0), 1, 1) == doctest::Approx(1.0));
  const auto quarter = rabi_state(pi, 0.5);
  CHECK(entry(quarter, 0, 0) == doctest::Approx(0.5));
  CHECK(std::abs(quarter.matrix()(0, 1)) == doctest::Approx(0.5));
  CHECK(frobenius_distance(rabi_state(pi, 0.3).matrix(), rabi_state(pi, 2.3).matrix()) < 1e-14);
  CHECK(rabi_state(2.0, 0.77).purity() == doctest::Approx(1.0));
}
