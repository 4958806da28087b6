#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "covlrt/linalg.hpp"

namespace covlrt {

/// Malformed or unusable dataset; message carries the line number or the
/// offending group.
class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Observations grouped by label, labels in order of first appearance.
struct Dataset {
  std::vector<std::string> feature_names;
  std::vector<std::string> labels;
  std::vector<Matrix> groups;  ///< groups[i] is n_i x p

  int p() const { return static_cast<int>(feature_names.size()); }
};

/// Delimited text with a header row; column 1 is the group label and the
/// remaining p columns are numeric. Numbers always use '.' as the decimal
/// separator regardless of locale. Requires >= 2 groups, finite values and
/// n_i > p for every group.
Dataset read_dataset(std::istream& in, char delimiter = ',');
Dataset read_dataset(const std::filesystem::path& path, char delimiter = ',');

/// Writes a dataset readable by read_dataset; values use 17 significant
/// digits so they parse back to the same doubles.
void write_dataset(std::ostream& out, const Dataset& data, char delimiter = ',');

}  // namespace covlrt
