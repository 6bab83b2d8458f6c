#include "qfl/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "parallel.hpp"

namespace qfl {

std::string_view to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::Zeeman: return "zeeman";
    case ScenarioKind::Rabi: return "rabi";
    case ScenarioKind::SpontaneousEmission: return "spontaneous_emission";
    case ScenarioKind::Isothermal: return "isothermal";
  }
  return "unknown";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) noexcept {
  if (name == "zeeman") return ScenarioKind::Zeeman;
  if (name == "rabi") return ScenarioKind::Rabi;
  if (name == "se" || name == "spontaneous_emission") return ScenarioKind::SpontaneousEmission;
  if (name == "isothermal") return ScenarioKind::Isothermal;
  return std::nullopt;
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidSpec, what); }

double require(const std::optional<double>& v, const char* name, ScenarioKind kind) {
  if (!v) invalid(std::string(name) + " is required for scenario " + std::string(to_string(kind)));
  if (!std::isfinite(*v)) invalid(std::string(name) + " must be finite");
  return *v;
}

}  // namespace

void ScenarioSpec::validate() const {
  if (!std::isfinite(e_ground) || !std::isfinite(e_excited)) invalid("energies must be finite");
  if (!(e_excited > e_ground)) invalid("e_excited must exceed e_ground");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) invalid("t_max must be > 0");
  if (steps < 2) invalid("steps must be >= 2");

  switch (kind) {
    case ScenarioKind::Rabi:
      if (!(require(omega, "omega", kind) > 0.0)) invalid("omega must be > 0");
      break;
    case ScenarioKind::SpontaneousEmission:
      if (!(require(gamma, "gamma", kind) >= 0.0)) invalid("gamma must be >= 0");
      break;
    case ScenarioKind::Zeeman:
      if (!shift && !b_field) invalid("shift or b_field is required for scenario zeeman");
      if (!std::isfinite(zeeman_shift())) invalid("shift must be finite");
      if (!(e_excited + zeeman_shift() > e_ground)) invalid("shift would move e_excited below e_ground");
      break;
    case ScenarioKind::Isothermal:
      if (!(require(temperature, "temperature", kind) > 0.0)) invalid("temperature must be > 0");
      if (!(require(e_excited_end, "e_excited_end", kind) > e_ground)) invalid("e_excited_end must exceed e_ground");
      break;
  }
}

double ScenarioSpec::zeeman_shift() const {
  if (shift) return *shift;
  if (b_field) return shift_coefficient * *b_field;
  return 0.0;
}

Trajectory build_trajectory(const ScenarioSpec& spec) {
  spec.validate();
  const std::size_t n = spec.steps + 1;
  std::vector<std::optional<Sample>> built(n);

  const Hamiltonian h_fixed = Hamiltonian::two_level(spec.e_ground, spec.e_excited);
  const CVector excited{0.0, 1.0};

  detail::parallel_for(n, [&](std::size_t i) {
    const double t = (i == spec.steps) ? spec.t_max : spec.t_max * static_cast<double>(i) / static_cast<double>(spec.steps);
    const double frac = static_cast<double>(i) / static_cast<double>(spec.steps);
    switch (spec.kind) {
      case ScenarioKind::Rabi:
        built[i].emplace(Sample{t, h_fixed, rabi_state(*spec.omega, t)});
        break;
      case ScenarioKind::SpontaneousEmission:
        built[i].emplace(Sample{t, h_fixed, ad_closed_form(plus_state(), DecayParams(*spec.gamma), t)});
        break;
      case ScenarioKind::Zeeman:
        built[i].emplace(Sample{t, Hamiltonian::two_level(spec.e_ground, spec.e_excited + frac * spec.zeeman_shift()),
                                DensityMatrix::pure(excited)});
        break;
      case ScenarioKind::Isothermal: {
        const double ee = spec.e_excited + frac * (*spec.e_excited_end - spec.e_excited);
        Hamiltonian h = Hamiltonian::two_level(spec.e_ground, ee);
        DensityMatrix rho = gibbs_state(h, ThermalParams(*spec.temperature));
        built[i].emplace(Sample{t, std::move(h), std::move(rho)});
        break;
      }
    }
  });

  std::vector<Sample> samples;
  samples.reserve(n);
  for (auto& s : built) samples.push_back(std::move(*s));
  return Trajectory(std::move(samples));
}

double rabi_coherence_analytic(double e_ground, double e_excited, double omega, double t) {
  const double c = std::cos(0.5 * omega * t);
  const double s = std::sin(0.5 * omega * t);
  return e_ground * (c * c - 1.0) + e_excited * s * s;
}

// Written in y = exp(-gamma t) so that large t neither overflows nor cancels.
DecayEigensystem se_eigensystem_analytic(double t, double gamma) {
  const double y = std::exp(-gamma * t);
  const double root = std::sqrt(1.0 - y + y * y);
  const double b = std::sqrt(y) / (1.0 - y + root);
  const double norm = std::sqrt(1.0 + b * b);
  return {0.5 * (1.0 + root), 0.5 * (y - y * y) / (1.0 + root), CVector{1.0 / norm, b / norm},
          CVector{-b / norm, 1.0 / norm}};
}

double se_heat_analytic(double e_ground, double e_excited, double t) {
  constexpr double sqrt3 = std::numbers::sqrt3;
  const double y = std::exp(-t);
  return 0.25 * (e_excited - e_ground) *
         (2.0 * y - 0.5 * std::log(y * y - y + 1.0) - sqrt3 * std::atan((2.0 * y - 1.0) / sqrt3) +
          std::numbers::pi / (2.0 * sqrt3) - 2.0);
}

// log(e^{2t} - e^t + 1)/2 - t = log(1 - y + y^2)/2 and
// atan((2e^t - 1)/sqrt3) = pi/2 - atan(sqrt3 y / (2 - y)), y = e^{-t}.
double se_coherence_analytic(double e_ground, double e_excited, double t) {
  constexpr double sqrt3 = std::numbers::sqrt3;
  const double y = std::exp(-t);
  const double arctan = 0.5 * std::numbers::pi - std::atan(sqrt3 * y / (2.0 - y));
  return 0.25 * (e_excited - e_ground) *
         (0.5 * std::log(1.0 - y + y * y) - sqrt3 * arctan + std::numbers::pi / (2.0 * sqrt3));
}

double se_heat_limit() { return 0.25 * (std::numbers::pi / std::numbers::sqrt3 - 2.0); }
double se_coherence_limit() { return -0.25 * std::numbers::pi / std::numbers::sqrt3; }

IsothermalReference isothermal_reference(const ScenarioSpec& spec) {
  if (spec.kind != ScenarioKind::Isothermal) invalid("isothermal_reference needs an isothermal spec");
  spec.validate();
  const ThermalParams th(*spec.temperature);
  const auto h0 = Hamiltonian::two_level(spec.e_ground, spec.e_excited);
  const auto h1 = Hamiltonian::two_level(spec.e_ground, *spec.e_excited_end);
  const auto rho0 = gibbs_state(h0, th);
  const auto rho1 = gibbs_state(h1, th);
  return {free_energy(h1, th) - free_energy(h0, th),
          th.temperature() * (von_neumann_entropy(rho1) - von_neumann_entropy(rho0)),
          internal_energy(rho1, h1) - internal_energy(rho0, h0)};
}

std::optional<AnalyticPoint> analytic_reference(const ScenarioSpec& spec, double t) {
  switch (spec.kind) {
    case ScenarioKind::Rabi: {
      if (!spec.omega) return std::nullopt;
      const double c = rabi_coherence_analytic(spec.e_ground, spec.e_excited, *spec.omega, t);
      return AnalyticPoint{0.0, 0.0, c, c};
    }
    case ScenarioKind::SpontaneousEmission: {
      if (!spec.gamma || *spec.gamma != 1.0) return std::nullopt;
      const double gap = spec.e_excited - spec.e_ground;
      return AnalyticPoint{0.0, se_heat_analytic(spec.e_ground, spec.e_excited, t),
                           se_coherence_analytic(spec.e_ground, spec.e_excited, t), -0.5 * gap * (1.0 - std::exp(-t))};
    }
    case ScenarioKind::Zeeman: {
      const double w = spec.zeeman_shift() * t / spec.t_max;
      return AnalyticPoint{w, 0.0, 0.0, w};
    }
    case ScenarioKind::Isothermal:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace qfl
