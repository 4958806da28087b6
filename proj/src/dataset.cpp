#include "covlrt/dataset.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

namespace covlrt {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(delimiter, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::string at_line(std::size_t line) { return "line " + std::to_string(line) + ": "; }

double parse_number(std::string_view field, std::size_t line, std::size_t column) {
  if (field.empty()) {
    throw DatasetError(at_line(line) + "missing value in column " + std::to_string(column));
  }
  if (field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw DatasetError(at_line(line) + "cannot parse '" + std::string(field) + "' in column " +
                       std::to_string(column) + " as a number");
  }
  if (!std::isfinite(value)) {
    throw DatasetError(at_line(line) + "non-finite value in column " + std::to_string(column));
  }
  return value;
}

}  // namespace

Dataset read_dataset(std::istream& in, char delimiter) {
  Dataset data;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<std::vector<double>> rows_by_group;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, delimiter);
    if (!have_header) {
      if (fields.size() < 2) {
        throw DatasetError(at_line(line_no) + "header needs a group column and at least one feature");
      }
      for (std::size_t c = 1; c < fields.size(); ++c) data.feature_names.emplace_back(fields[c]);
      have_header = true;
      continue;
    }
    if (fields.size() != data.feature_names.size() + 1) {
      throw DatasetError(at_line(line_no) + "expected " +
                         std::to_string(data.feature_names.size() + 1) + " fields, got " +
                         std::to_string(fields.size()));
    }
    const std::string label(fields[0]);
    if (label.empty()) throw DatasetError(at_line(line_no) + "empty group label");
    auto [it, inserted] = index.try_emplace(label, data.labels.size());
    if (inserted) {
      data.labels.push_back(label);
      rows_by_group.emplace_back();
    }
    auto& flat = rows_by_group[it->second];
    for (std::size_t c = 1; c < fields.size(); ++c) flat.push_back(parse_number(fields[c], line_no, c + 1));
  }
  if (in.bad()) throw DatasetError("read error");
  if (!have_header) throw DatasetError("dataset is empty; a header row is required");

  const auto p = static_cast<Eigen::Index>(data.feature_names.size());
  if (data.labels.size() < 2) {
    throw DatasetError("dataset needs at least 2 distinct groups, found " +
                       std::to_string(data.labels.size()));
  }
  for (std::size_t g = 0; g < data.labels.size(); ++g) {
    const auto& flat = rows_by_group[g];
    const auto n = static_cast<Eigen::Index>(flat.size()) / p;
    if (n <= p) {
      throw DatasetError("group '" + data.labels[g] + "' has " + std::to_string(n) +
                         " rows but p < n_i is required (p = " + std::to_string(p) + ")");
    }
    data.groups.push_back(
        Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
            flat.data(), n, p));
  }
  return data;
}

Dataset read_dataset(const std::filesystem::path& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open '" + path.string() + "'");
  return read_dataset(in, delimiter);
}

void write_dataset(std::ostream& out, const Dataset& data, char delimiter) {
  out << "group";
  for (const auto& name : data.feature_names) out << delimiter << name;
  out << '\n';
  std::array<char, 32> buf{};
  for (std::size_t g = 0; g < data.groups.size(); ++g) {
    const Matrix& x = data.groups[g];
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      out << data.labels[g];
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x(r, c),
                                       std::chars_format::general, 17);
        out << delimiter << std::string_view(buf.data(), static_cast<std::size_t>(res.ptr - buf.data()));
      }
      out << '\n';
    }
  }
}

}  // namespace covlrt
