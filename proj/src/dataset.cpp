#include "qvl/dataset.hpp"

#include <fstream>
#include <sstream>

namespace qvl {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    // trim surrounding whitespace / CR
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return fields;
}

double parse_number(const std::string& s, int line_no,
                    const std::string& column) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw CsvError("line " + std::to_string(line_no) +
                   ": non-numeric value '" + s + "' in column '" + column +
                   "'");
  }
}

}  // namespace

RawDataset load_csv(const std::string& path, bool classification) {
  std::ifstream in(path);
  if (!in) throw CsvError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line) || line.empty()) {
    throw CsvError(path + ": missing header row");
  }
  auto header = split_line(line);
  if (header.size() < 2) throw CsvError(path + ": need features and a target");

  RawDataset ds;
  ds.feature_names.assign(header.begin(), header.end() - 1);
  const std::size_t n_cols = header.size();

  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_line(line);
    if (fields.size() != n_cols) {
      throw CsvError("line " + std::to_string(line_no) + ": expected " +
                     std::to_string(n_cols) + " fields, got " +
                     std::to_string(fields.size()));
    }
    std::vector<double> row(n_cols - 1);
    for (std::size_t j = 0; j + 1 < n_cols; ++j) {
      row[j] = parse_number(fields[j], line_no, header[j]);
    }
    ds.X.push_back(std::move(row));
    const std::string& target = fields.back();
    if (classification) {
      int label = -1;
      for (std::size_t k = 0; k < ds.class_names.size(); ++k) {
        if (ds.class_names[k] == target) {
          label = static_cast<int>(k);
          break;
        }
      }
      if (label < 0) {
        label = static_cast<int>(ds.class_names.size());
        ds.class_names.push_back(target);
      }
      ds.y.push_back(label);
    } else {
      ds.y.push_back(parse_number(target, line_no, header.back()));
    }
  }
  if (ds.X.empty()) throw CsvError(path + ": no data rows");
  return ds;
}

}  // namespace qvl
