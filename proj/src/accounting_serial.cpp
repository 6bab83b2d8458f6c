#include "accounting_detail.hpp"

namespace qfl {

EnergyLedger analyze_serial(const Trajectory& traj, const AnalyzeOptions& options) {
  const auto& samples = traj.samples();

  SampleSpectra spectra = decompose(samples[0]);
  BranchQuantities quantities = branch_quantities(samples[0], spectra);

  EnergyLedger ledger;
  ledger.rows.push_back(detail::first_row(samples[0], spectra, quantities));
  const double u0 = ledger.rows.front().energy;

  for (std::size_t i = 1; i < samples.size(); ++i) {
    SampleSpectra next;
    try {
      next = track(spectra, decompose(samples[i]), options.tracking);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TrackingFailure) throw;
      throw TrackingError(i - 1, e.what());
    }
    BranchQuantities next_quantities = branch_quantities(samples[i], next);
    const StepIncrement inc = step_increment(quantities, next_quantities);
    ledger.rows.push_back(
        detail::accumulate(detail::first_row(samples[i], next, next_quantities), ledger.rows.back(), u0, inc));
    spectra = std::move(next);
    quantities = std::move(next_quantities);
  }
  return ledger;
}

}  // namespace qfl
