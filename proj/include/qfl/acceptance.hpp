#pragma once

#include <string>
#include <vector>

#include "qfl/scenarios.hpp"

namespace qfl {

struct CheckResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
  double seconds;
};

struct AcceptanceOptions {
  /// Added to the analytic Rabi coherence before comparison; nonzero values
  /// exercise the failure path of the Rabi oracle check.
  double rabi_reference_offset = 0.0;
};

/// Built-in scenario configurations the checks run on.
ScenarioSpec rabi_reference_spec(std::size_t steps = 2000);
ScenarioSpec emission_reference_spec(std::size_t steps = 5000);
ScenarioSpec zeeman_reference_spec(std::size_t steps = 2000);
ScenarioSpec isothermal_reference_spec(std::size_t steps = 4000);

/// Closure tolerance for the work/heat identities: ten times the largest
/// closure defect, floored at roundoff scale.
double identity_tolerance(const EnergyLedger& ledger);
inline constexpr double kIdentityRoundoffFloor = 1e-12;

/// Located turning point of the heat curve.
struct HeatTurningPoint {
  std::size_t sign_changes;
  double t_star;
};
HeatTurningPoint heat_increment_sign_changes(const EnergyLedger& ledger);

CheckResult check_rabi(const AcceptanceOptions& options = {});
CheckResult check_spontaneous_emission();
CheckResult check_closure_convergence();
CheckResult check_consistency_identities();
CheckResult check_isothermal_limit();
CheckResult check_kraus_limit();
CheckResult check_eigensolver();
CheckResult check_emission_shape();

std::vector<CheckResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace qfl
