#pragma once

#include <optional>
#include <string_view>

#include "qfl/accounting.hpp"
#include "qfl/channels.hpp"

namespace qfl {

enum class ScenarioKind { Zeeman, Rabi, SpontaneousEmission, Isothermal };

std::string_view to_string(ScenarioKind kind) noexcept;
/// Accepts "zeeman", "rabi", "se"/"spontaneous_emission", "isothermal".
std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) noexcept;

/// Bohr magneton e*hbar/(2 m_e) in eV/T, for configuring a physical Zeeman shift.
inline constexpr double kBohrMagnetonEvPerTesla = 5.7883818060e-5;

/// Parameters of one built-in process. Optional fields are required only by
/// the kinds that use them; validate() names whatever is missing.
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::Rabi;
  double e_ground = 0.0;
  double e_excited = 1.0;
  std::optional<double> omega;          // rabi
  std::optional<double> gamma;          // spontaneous emission
  std::optional<double> shift;          // zeeman, total shift of E_e
  std::optional<double> b_field;        // zeeman, shift = shift_coefficient * B
  double shift_coefficient = 1.0;
  std::optional<double> temperature;    // isothermal
  std::optional<double> e_excited_end;  // isothermal ramp end
  double t_max = 1.0;
  std::size_t steps = 2000;

  /// Throws InvalidSpec naming the offending parameter.
  void validate() const;
  /// Zeeman total shift (explicit, or coefficient * B).
  double zeeman_shift() const;
};

/// Uniform grid of steps+1 samples on [0, t_max].
Trajectory build_trajectory(const ScenarioSpec& spec);

/// C(t) for resonant Rabi cycling from |g>.
double rabi_coherence_analytic(double e_ground, double e_excited, double omega, double t);

/// Eigen-system of the spontaneous-emission state from (|g>+|e>)/sqrt(2).
/// rho0 >= rho1; vectors in basis (g, e).
struct DecayEigensystem {
  double rho0;
  double rho1;
  CVector k0;
  CVector k1;
};
DecayEigensystem se_eigensystem_analytic(double t, double gamma = 1.0);

/// Closed forms for gamma = 1.
double se_heat_analytic(double e_ground, double e_excited, double t);
double se_coherence_analytic(double e_ground, double e_excited, double t);
/// t -> infinity limits of the two closed forms, per unit level spacing.
double se_heat_limit();
double se_coherence_limit();

/// Quasi-static reference for the isothermal ramp.
struct IsothermalReference {
  double delta_free_energy;        // F(H_end) - F(H_start)
  double temperature_delta_entropy;  // T [S(rho_end) - S(rho_start)]
  double delta_energy;             // U_end - U_start
};
IsothermalReference isothermal_reference(const ScenarioSpec& spec);

/// Exact reference curves, defined for a scenario where closed forms exist.
struct AnalyticPoint {
  double work;
  double heat;
  double coherence;
  double delta_energy;
};
/// Rabi (any parameters), spontaneous emission (gamma = 1 only), Zeeman
/// (linear ramp). Isothermal and other gamma return nullopt.
std::optional<AnalyticPoint> analytic_reference(const ScenarioSpec& spec, double t);

}  // namespace qfl
