#pragma once

// Flat-file formats: datasets as plain CSV (one point per row, optional
// header auto-detected), utility samples as CSV with an optional trailing
// "prob" column, and reduction back-maps as JSON.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "rmskit/core.hpp"
#include "rmskit/evaluation.hpp"
#include "rmskit/reduction.hpp"

namespace rmskit {

struct ParseError : std::runtime_error {
  int row;
  ParseError(int row_number, const std::string& what)
      : std::runtime_error("row " + std::to_string(row_number) + ": " + what), row(row_number) {}
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  cells.push_back(cur);
  for (std::string& c : cells) {
    std::size_t a = c.find_first_not_of(" \t");
    std::size_t b = c.find_last_not_of(" \t");
    c = (a == std::string::npos) ? "" : c.substr(a, b - a + 1);
  }
  return cells;
}

inline bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

inline bool all_numeric(const std::vector<std::string>& cells) {
  double v;
  for (const std::string& c : cells)
    if (!parse_double(c, v)) return false;
  return true;
}

// Rows of a CSV file as numeric cells; a non-numeric first row is treated as
// a header and skipped. Reports 1-based file rows in errors.
inline std::vector<std::vector<double>> load_csv_rows(const std::string& path,
                                                      std::vector<std::string>* header_out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int file_row = 0;
  bool first_content = true;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++file_row;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (first_content) {
      first_content = false;
      if (!all_numeric(cells)) {
        if (header_out) *header_out = cells;
        continue;  // header row
      }
    }
    std::vector<double> vals(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j)
      if (!parse_double(cells[j], vals[j]))
        throw ParseError(file_row, "non-numeric cell '" + cells[j] + "'");
    if (width == 0) width = vals.size();
    if (vals.size() != width)
      throw ParseError(file_row, "expected " + std::to_string(width) + " fields, got " +
                                     std::to_string(vals.size()));
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw std::runtime_error("'" + path + "': no data rows");
  return rows;
}

inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

inline Dataset load_dataset(const std::string& path) {
  auto rows = detail::load_csv_rows(path, nullptr);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (double v : rows[i])
      if (v < 0.0 || v > 1.0)
        throw ParseError(static_cast<int>(i + 1), "coordinate " + detail::format_g17(v) +
                                                      " outside [0,1]");
  return Dataset::from_rows(rows);
}

inline void save_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (const Point& p : ds.points) {
    for (int j = 0; j < ds.dim; ++j) {
      if (j) out << ',';
      out << detail::format_g17(p[j]);
    }
    out << '\n';
  }
}

// Utility sample CSV: d weight columns, optionally one trailing probability
// column (header "prob", or inferred when the row width is expected_dim + 1).
// Without probabilities every function gets weight 1/N.
inline FunctionSample load_utility_sample(const std::string& path, int expected_dim = -1) {
  std::vector<std::string> header;
  auto rows = detail::load_csv_rows(path, &header);
  std::size_t width = rows[0].size();
  bool has_prob = false;
  if (!header.empty() && header.back() == "prob")
    has_prob = true;
  else if (expected_dim > 0 && width == static_cast<std::size_t>(expected_dim) + 1)
    has_prob = true;
  std::size_t d = width - (has_prob ? 1 : 0);
  if (expected_dim > 0 && d != static_cast<std::size_t>(expected_dim))
    throw std::runtime_error("utility sample has " + std::to_string(d) +
                             " weight columns, expected " + std::to_string(expected_dim));
  std::vector<UtilityVector> ws;
  std::vector<double> probs;
  for (auto& row : rows) {
    ws.push_back(UtilityVector::raw(std::vector<double>(row.begin(), row.begin() + static_cast<long>(d))));
    if (has_prob) probs.push_back(row.back());
  }
  return has_prob ? FunctionSample::weighted_linear(ws, probs)
                  : FunctionSample::uniform_linear(ws);
}

inline void save_utility_sample(const FunctionSample& fs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  for (const auto& e : fs.entries) {
    if (e.weights.empty())
      throw std::invalid_argument("save_utility_sample: only linear entries are serializable");
    for (std::size_t j = 0; j < e.weights.size(); ++j) {
      if (j) out << ',';
      out << detail::format_g17(e.weights[j]);
    }
    out << ',' << detail::format_g17(e.prob) << '\n';
  }
}

inline void save_backmap_json(const ReducedDataset& rd, const std::string& path) {
  nlohmann::json j;
  for (std::size_t rid = 0; rid < rd.back_map.size(); ++rid)
    j[std::to_string(rid)] = rd.back_map[rid];
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace rmskit
