#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qvl/preprocess.hpp"
#include "qvl/statevec.hpp"

namespace qvl {

// Per qubit: H then P(x_i). One qubit per feature.
Circuit reference_phase_circuit(const std::vector<double>& x);

struct TraceVariant {
  std::string label;
  std::function<std::vector<double>(const std::vector<double>&)> apply;
  // For selection-style reducers: the original feature indices the variant
  // keeps. The reference sample is restricted to these; otherwise to the
  // first out_dims features.
  std::optional<std::vector<int>> kept_indices;
  int out_dims = 0;
};

struct TraceReport {
  std::string variant;
  double mean_trace_diff = 0.0;
  std::vector<double> per_sample;
};

// Mean over samples of |Tr(U(variant(x))) - Tr(U(reference(x)))| for the
// phase-circuit family above.
TraceReport mean_trace_difference(const Matrix& X, const TraceVariant& variant);

TraceVariant identity_variant(const RawDataset& ds);
TraceVariant scaler_variant(const RawDataset& ds, Scaler s);
TraceVariant reducer_variant(const RawDataset& ds, Reducer r, int k,
                             bool classification);

// Identity plus the {mm,std} x {pca,f} variants, fitted on the full dataset.
std::vector<TraceReport> tracediff_study(const RawDataset& ds, int k,
                                         bool classification);

void write_tracediff_csv(const std::string& path,
                         const std::vector<TraceReport>& reports);

}  // namespace qvl
