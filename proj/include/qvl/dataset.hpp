#pragma once

#include <string>

#include "qvl/preprocess.hpp"

namespace qvl {

struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Header row required; every column but the last is a numeric feature, the
// last column is the target. For classification the target may be textual;
// labels map to 0..k-1 in first-appearance order.
RawDataset load_csv(const std::string& path, bool classification);

}  // namespace qvl
