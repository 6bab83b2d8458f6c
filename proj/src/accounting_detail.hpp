#pragma once

#include "qfl/accounting.hpp"

namespace qfl::detail {

// Row with the per-sample columns (t, U, S, l1) filled and cumulative columns zero.
LedgerRow first_row(const Sample& s, const SampleSpectra& spectra, const BranchQuantities& q);

// Adds one interval's increments to the previous row's running sums.
LedgerRow accumulate(LedgerRow row, const LedgerRow& prev, double u0, const StepIncrement& inc);

}  // namespace qfl::detail
