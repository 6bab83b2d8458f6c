#pragma once

#include <vector>

#include "qfl/qstate.hpp"

namespace qfl {

struct Sample {
  double t;
  Hamiltonian h;
  DensityMatrix rho;
};

/// Time-ordered (t, H, rho) samples: at least two, strictly increasing t,
/// one common dimension.
class Trajectory {
 public:
  explicit Trajectory(std::vector<Sample> samples);

  const std::vector<Sample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::size_t dim() const noexcept { return samples_.front().rho.dim(); }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }

 private:
  std::vector<Sample> samples_;
};

/// Spectral data of one sample, with tracked branch labels on both bases.
struct SampleSpectra {
  SpectralDecomposition energy;  // eigensystem of H: {E_n, |n>}
  SpectralDecomposition state;   // eigensystem of rho: {rho_k, |k>}
};

SampleSpectra decompose(const Sample& s);
SampleSpectra track(const SampleSpectra& prev, const SampleSpectra& next,
                    const TrackingOptions& options = {});

/// Per-sample quantities indexed by branch label.
struct BranchQuantities {
  double t = 0.0;
  double energy = 0.0;                    // tr(rho H)
  std::vector<double> levels;             // E_n
  std::vector<double> weights;            // rho_k (unclamped)
  OverlapMatrix overlap;                  // |c_{n,k}|^2
  std::vector<double> populations;        // P_n = <n|rho|n>
  std::vector<double> state_energies;     // eps_k = <k|H|k>
};

BranchQuantities branch_quantities(const Sample& s, const SampleSpectra& spectra);

/// Diagonal of rho in the eigenbasis of H, ordered by ascending energy.
std::vector<double> populations_energy_basis(const DensityMatrix& rho, const Hamiltonian& h);

/// Energy increments over one interval. The first-law split uses averaged
/// products times differences; `residual` is whatever of dU the split does
/// not assign (third order in the step).
struct StepIncrement {
  double work = 0.0;               // sum (rho_k w_nk)~ dE_n
  double heat = 0.0;               // sum (E_n w_nk)~ d rho_k
  double coherence = 0.0;          // sum (E_n rho_k)~ d w_nk
  double energy = 0.0;             // tr(rho_b H_b) - tr(rho_a H_a)
  double residual = 0.0;           // energy - work - heat - coherence

  double work_classical = 0.0;     // sum P~_n dE_n
  double heat_classical = 0.0;     // sum E~_n dP_n
  double work_alt = 0.0;           // sum rho~_k d eps_k
  double heat_alt = 0.0;           // sum eps~_k d rho_k
};

StepIncrement step_increment(const BranchQuantities& a, const BranchQuantities& b);

struct LedgerRow {
  double t = 0.0;
  double energy = 0.0;           // U
  double work = 0.0;             // W
  double heat = 0.0;             // Q_cal
  double coherence = 0.0;        // C
  double work_alt = 0.0;         // W_cal, direct route
  double heat_alt = 0.0;         // Q_cal, direct route
  double work_classical = 0.0;   // W_cl
  double heat_classical = 0.0;   // Q_cl
  double entropy = 0.0;
  double l1_coherence = 0.0;     // in the energy eigenbasis
  double closure_defect = 0.0;   // |U - U0 - (W + Q + C)|
  double residual_sum = 0.0;     // running sum of StepIncrement::residual

  /// |W_cal - (W + C)|
  double work_identity_defect() const;
  /// |Q_cl - (Q_cal + C)|
  double heat_identity_defect() const;
};

struct EnergyLedger {
  std::vector<LedgerRow> rows;

  const LedgerRow& back() const { return rows.back(); }
  double delta_energy() const { return rows.back().energy - rows.front().energy; }
};

struct AnalyzeOptions {
  TrackingOptions tracking;
};

/// OpenMP pipeline: per-sample decomposition and per-interval increments run
/// in parallel; branch tracking is a serial fold. Throws TrackingError with
/// the offending interval.
EnergyLedger analyze(const Trajectory& traj, const AnalyzeOptions& options = {});

/// Sequential reference with the same arithmetic; results are bit-identical
/// to analyze().
EnergyLedger analyze_serial(const Trajectory& traj, const AnalyzeOptions& options = {});

struct ClassicalRow {
  double t;
  double work_classical;   // W_cl
  double heat_classical;   // Q_cl
  double work_alt;         // W_cal
  double heat_alt;         // Q_cal
};

std::vector<ClassicalRow> classical_decompositions(const Trajectory& traj, const AnalyzeOptions& options = {});

/// max_t |U(t) - U(0) - (W + Q + C)(t)|
double first_law_residual(const EnergyLedger& ledger);

/// Largest identity defect over the ledger, for both identities.
double max_identity_defect(const EnergyLedger& ledger);

}  // namespace qfl
