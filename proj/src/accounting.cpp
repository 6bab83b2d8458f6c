#include "qfl/accounting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "accounting_detail.hpp"
#include "parallel.hpp"

namespace qfl {

Trajectory::Trajectory(std::vector<Sample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw Error(ErrorCode::InvalidTrajectory, "trajectory needs at least 2 samples");
  const std::size_t d = samples_.front().rho.dim();
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.t)) throw Error(ErrorCode::InvalidTrajectory, "sample " + std::to_string(i) + ": t not finite");
    if (s.rho.dim() != d || s.h.dim() != d) {
      throw Error(ErrorCode::DimMismatch, "sample " + std::to_string(i) + ": dimension differs from sample 0");
    }
    if (i > 0 && !(s.t > samples_[i - 1].t)) {
      throw Error(ErrorCode::InvalidTrajectory, "sample " + std::to_string(i) + ": times not strictly increasing");
    }
  }
}

SampleSpectra decompose(const Sample& s) { return {hermitian_eig(s.h.matrix()), hermitian_eig(s.rho.matrix())}; }

SampleSpectra track(const SampleSpectra& prev, const SampleSpectra& next, const TrackingOptions& options) {
  return {track_eigenpairs(prev.energy, next.energy, options), track_eigenpairs(prev.state, next.state, options)};
}

BranchQuantities branch_quantities(const Sample& s, const SampleSpectra& spectra) {
  const std::size_t d = spectra.energy.dim();
  BranchQuantities q;
  q.t = s.t;
  q.energy = internal_energy(s.rho, s.h);
  q.levels.resize(d);
  q.weights.resize(d);
  q.populations.resize(d);
  q.state_energies.resize(d);
  for (std::size_t b = 0; b < d; ++b) {
    const CVector& n = spectra.energy.vector_of(b);
    const CVector& k = spectra.state.vector_of(b);
    q.levels[b] = spectra.energy.value_of(b);
    q.weights[b] = spectra.state.value_of(b);
    q.populations[b] = matrix_element(n, s.rho.matrix(), n).real();
    q.state_energies[b] = matrix_element(k, s.h.matrix(), k).real();
  }
  q.overlap = overlap_matrix(spectra.energy, spectra.state);
  return q;
}

std::vector<double> populations_energy_basis(const DensityMatrix& rho, const Hamiltonian& h) {
  if (rho.dim() != h.dim()) throw Error(ErrorCode::DimMismatch, "populations_energy_basis");
  const auto basis = hermitian_eig(h.matrix());
  std::vector<double> p;
  p.reserve(basis.dim());
  for (const auto& n : basis.vectors) p.push_back(matrix_element(n, rho.matrix(), n).real());
  return p;
}

StepIncrement step_increment(const BranchQuantities& a, const BranchQuantities& b) {
  const std::size_t d = a.levels.size();
  if (b.levels.size() != d) throw Error(ErrorCode::DimMismatch, "step_increment");

  StepIncrement inc;
  for (std::size_t n = 0; n < d; ++n) {
    const double dE = b.levels[n] - a.levels[n];
    for (std::size_t k = 0; k < d; ++k) {
      const double wa = a.overlap(n, k);
      const double wb = b.overlap(n, k);
      inc.work += 0.5 * (a.weights[k] * wa + b.weights[k] * wb) * dE;
      inc.heat += 0.5 * (a.levels[n] * wa + b.levels[n] * wb) * (b.weights[k] - a.weights[k]);
      inc.coherence += 0.5 * (a.levels[n] * a.weights[k] + b.levels[n] * b.weights[k]) * (wb - wa);
    }
  }
  inc.energy = b.energy - a.energy;
  inc.residual = inc.energy - inc.work - inc.heat - inc.coherence;

  for (std::size_t i = 0; i < d; ++i) {
    inc.work_classical += 0.5 * (a.populations[i] + b.populations[i]) * (b.levels[i] - a.levels[i]);
    inc.heat_classical += 0.5 * (a.levels[i] + b.levels[i]) * (b.populations[i] - a.populations[i]);
    inc.work_alt += 0.5 * (a.weights[i] + b.weights[i]) * (b.state_energies[i] - a.state_energies[i]);
    inc.heat_alt += 0.5 * (a.state_energies[i] + b.state_energies[i]) * (b.weights[i] - a.weights[i]);
  }
  return inc;
}

double LedgerRow::work_identity_defect() const { return std::abs(work_alt - (work + coherence)); }
double LedgerRow::heat_identity_defect() const { return std::abs(heat_classical - (heat + coherence)); }

namespace detail {

LedgerRow first_row(const Sample& s, const SampleSpectra& spectra, const BranchQuantities& q) {
  LedgerRow row;
  row.t = s.t;
  row.energy = q.energy;
  row.entropy = entropy_of_spectrum(clamped_spectrum(spectra.state));
  row.l1_coherence = l1_coherence(s.rho, spectra.energy);
  return row;
}

LedgerRow accumulate(LedgerRow row, const LedgerRow& prev, double u0, const StepIncrement& inc) {
  row.work = prev.work + inc.work;
  row.heat = prev.heat + inc.heat;
  row.coherence = prev.coherence + inc.coherence;
  row.work_alt = prev.work_alt + inc.work_alt;
  row.heat_alt = prev.heat_alt + inc.heat_alt;
  row.work_classical = prev.work_classical + inc.work_classical;
  row.heat_classical = prev.heat_classical + inc.heat_classical;
  row.residual_sum = prev.residual_sum + inc.residual;
  row.closure_defect = std::abs((row.energy - u0) - (row.work + row.heat + row.coherence));
  return row;
}

}  // namespace detail

EnergyLedger analyze(const Trajectory& traj, const AnalyzeOptions& options) {
  const std::size_t n = traj.size();
  const auto& samples = traj.samples();

  std::vector<SampleSpectra> spectra(n);
  detail::parallel_for(n, [&](std::size_t i) { spectra[i] = decompose(samples[i]); });

  for (std::size_t i = 1; i < n; ++i) {
    try {
      spectra[i] = track(spectra[i - 1], spectra[i], options.tracking);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TrackingFailure) throw;
      throw TrackingError(i - 1, e.what());
    }
  }

  std::vector<BranchQuantities> quantities(n);
  detail::parallel_for(n, [&](std::size_t i) { quantities[i] = branch_quantities(samples[i], spectra[i]); });

  std::vector<StepIncrement> increments(n - 1);
  detail::parallel_for(n - 1, [&](std::size_t i) { increments[i] = step_increment(quantities[i], quantities[i + 1]); });

  // Entropy and l1 coherence per row are independent; the running sums are not.
  std::vector<LedgerRow> base(n);
  detail::parallel_for(n, [&](std::size_t i) { base[i] = detail::first_row(samples[i], spectra[i], quantities[i]); });

  EnergyLedger ledger;
  ledger.rows.reserve(n);
  ledger.rows.push_back(base[0]);
  const double u0 = base[0].energy;
  for (std::size_t i = 1; i < n; ++i) {
    ledger.rows.push_back(detail::accumulate(base[i], ledger.rows.back(), u0, increments[i - 1]));
  }
  return ledger;
}

std::vector<ClassicalRow> classical_decompositions(const Trajectory& traj, const AnalyzeOptions& options) {
  const auto ledger = analyze(traj, options);
  std::vector<ClassicalRow> out;
  out.reserve(ledger.rows.size());
  for (const auto& r : ledger.rows) out.push_back({r.t, r.work_classical, r.heat_classical, r.work_alt, r.heat_alt});
  return out;
}

double first_law_residual(const EnergyLedger& ledger) {
  double worst = 0.0;
  for (const auto& r : ledger.rows) worst = std::max(worst, r.closure_defect);
  return worst;
}

double max_identity_defect(const EnergyLedger& ledger) {
  double worst = 0.0;
  for (const auto& r : ledger.rows) worst = std::max({worst, r.work_identity_defect(), r.heat_identity_defect()});
  return worst;
}

}  // namespace qfl
