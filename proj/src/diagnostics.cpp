#include "qvl/diagnostics.hpp"

#include <cmath>
#include <fstream>
#include <memory>

namespace qvl {

Circuit reference_phase_circuit(const std::vector<double>& x) {
  if (x.empty()) throw InvalidCircuitError("empty feature vector");
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidCircuitError("non-finite feature");
  }
  Circuit c(static_cast<int>(x.size()));
  for (int q = 0; q < c.n_qubits; ++q) {
    c.add(GateOp::h(q));
    c.add(GateOp::p(x[q], q));
  }
  return c;
}

TraceReport mean_trace_difference(const Matrix& X, const TraceVariant& variant) {
  if (X.empty()) throw PreprocessError("empty dataset");
  if (variant.out_dims < 1 || variant.out_dims > 10) {
    throw CapacityError("trace study limited to 1..10 output dims");
  }
  TraceReport report;
  report.variant = variant.label;
  report.per_sample.reserve(X.size());
  double sum = 0.0;
  for (const auto& row : X) {
    const auto out = variant.apply(row);
    std::vector<double> ref;
    if (variant.kept_indices) {
      for (int j : *variant.kept_indices) ref.push_back(row[j]);
    } else {
      ref.assign(row.begin(), row.begin() + variant.out_dims);
    }
    const cdouble tv = unitary_of(reference_phase_circuit(out)).trace();
    const cdouble tr = unitary_of(reference_phase_circuit(ref)).trace();
    const double diff = std::abs(tv - tr);
    report.per_sample.push_back(diff);
    sum += diff;
  }
  report.mean_trace_diff = sum / static_cast<double>(X.size());
  return report;
}

TraceVariant identity_variant(const RawDataset& ds) {
  return {"identity", [](const std::vector<double>& x) { return x; },
          std::nullopt, static_cast<int>(ds.n_features())};
}

TraceVariant scaler_variant(const RawDataset& ds, Scaler s) {
  TraceVariant v;
  v.label = scaler_name(s);
  v.out_dims = static_cast<int>(ds.n_features());
  if (s == Scaler::MinMax) {
    auto mm = std::make_shared<MinMaxScaler>();
    mm->fit(ds.X);
    v.apply = [mm](const std::vector<double>& x) {
      return mm->apply({x}, false)[0];
    };
  } else {
    auto st = std::make_shared<StandardScaler>();
    st->fit(ds.X);
    v.apply = [st](const std::vector<double>& x) { return st->apply({x})[0]; };
  }
  return v;
}

TraceVariant reducer_variant(const RawDataset& ds, Reducer r, int k,
                             bool classification) {
  TraceVariant v;
  v.label = reducer_name(r);
  v.out_dims = k;
  if (r == Reducer::FSelect) {
    auto sel = std::make_shared<FeatureSelector>();
    sel->fit(ds.X, ds.y, k, classification);
    v.kept_indices = sel->kept;
    v.apply = [sel](const std::vector<double>& x) {
      return sel->apply({x})[0];
    };
  } else {
    auto pca = std::make_shared<PcaReducer>();
    pca->fit(ds.X, k);
    v.apply = [pca](const std::vector<double>& x) {
      return pca->apply({x})[0];
    };
  }
  return v;
}

std::vector<TraceReport> tracediff_study(const RawDataset& ds, int k,
                                         bool classification) {
  std::vector<TraceReport> reports;
  reports.push_back(mean_trace_difference(ds.X, identity_variant(ds)));
  for (Scaler s : {Scaler::MinMax, Scaler::Std}) {
    for (Reducer r : {Reducer::Pca, Reducer::FSelect}) {
      const auto sv = scaler_variant(ds, s);
      TraceVariant v;
      v.label = std::string(scaler_name(s)) + "-" + reducer_name(r);
      v.out_dims = k;
      if (r == Reducer::FSelect) {
        auto sel = std::make_shared<FeatureSelector>();
        Matrix scaled(ds.n_samples());
        for (std::size_t i = 0; i < ds.n_samples(); ++i) {
          scaled[i] = sv.apply(ds.X[i]);
        }
        sel->fit(scaled, ds.y, k, classification);
        v.kept_indices = sel->kept;
        auto apply_scaler = sv.apply;
        v.apply = [apply_scaler, sel](const std::vector<double>& x) {
          return sel->apply({apply_scaler(x)})[0];
        };
      } else {
        auto pca = std::make_shared<PcaReducer>();
        Matrix scaled(ds.n_samples());
        for (std::size_t i = 0; i < ds.n_samples(); ++i) {
          scaled[i] = sv.apply(ds.X[i]);
        }
        pca->fit(scaled, k);
        auto apply_scaler = sv.apply;
        v.apply = [apply_scaler, pca](const std::vector<double>& x) {
          return pca->apply({apply_scaler(x)})[0];
        };
      }
      reports.push_back(mean_trace_difference(ds.X, v));
    }
  }
  return reports;
}

void write_tracediff_csv(const std::string& path,
                         const std::vector<TraceReport>& reports) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "variant,mean_trace_diff\n";
  out.precision(17);
  for (const auto& r : reports) {
    out << r.variant << "," << r.mean_trace_diff << "\n";
  }
}

}  // namespace qvl
