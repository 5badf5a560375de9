#ifndef NEHARI_IO_HPP
#define NEHARI_IO_HPP

// CSV inputs and the JSON result envelope.
//
//   pick nodes     re z, im z, re w, im w, re lambda, im lambda   (D^2)
//                  re z, im z, re lambda, im lambda               (D)
//   measure atoms  re z, im z, re zeta, im zeta, mu
//   coefficients   m, n, re, im                                   (n omitted on T)
//
// Lines that are blank or start with '#' are skipped, as is a first line
// that does not parse as numbers.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "carleson.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "pick.hpp"

namespace nehari {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";

namespace detail {

inline bool parse_row(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    try {
      out.push_back(std::stod(cell, &used));
    } catch (const std::exception&) {
      return false;
    }
    while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
    if (used != cell.size()) return false;
  }
  return !out.empty();
}

}  // namespace detail

/// Numeric rows of a CSV stream; every row must have one of the allowed widths.
inline std::vector<std::vector<double>> read_csv(std::istream& in, const std::vector<std::size_t>& widths,
                                                 const std::string& what) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    std::vector<double> row;
    const bool ok = detail::parse_row(line, row);
    if (!ok && first) {
      first = false;
      continue;
    }
    first = false;
    if (!ok) throw ConfigError(what + ": line " + std::to_string(lineno) + " is not numeric");
    if (std::find(widths.begin(), widths.end(), row.size()) == widths.end())
      throw ConfigError(what + ": line " + std::to_string(lineno) + " has " + std::to_string(row.size()) + " columns");
    if (!rows.empty() && rows.front().size() != row.size())
      throw ConfigError(what + ": line " + std::to_string(lineno) + " changes the column count");
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<std::vector<double>> read_csv_file(const std::string& path, const std::vector<std::size_t>& widths,
                                                      const std::string& what) {
  std::ifstream f(path);
  if (!f) throw ConfigError(what + ": cannot open '" + path + "'");
  return read_csv(f, widths, what);
}

/// Nodes with values; four columns give a system on D with empty w.
inline PickSystem read_pick_csv(std::istream& in) {
  PickSystem s;
  for (const auto& r : read_csv(in, {4, 6}, "pick csv")) {
    s.z.emplace_back(r[0], r[1]);
    if (r.size() == 6) {
      s.w.emplace_back(r[2], r[3]);
      s.lambda.emplace_back(r[4], r[5]);
    } else {
      s.lambda.emplace_back(r[2], r[3]);
    }
  }
  return s;
}

inline PickSystem read_pick_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("pick csv: cannot open '" + path + "'");
  return read_pick_csv(f);
}

inline DiscreteMeasure read_atoms_csv(std::istream& in) {
  DiscreteMeasure m;
  for (const auto& r : read_csv(in, {5}, "atoms csv")) m.atoms.push_back({{r[0], r[1]}, {r[2], r[3]}, r[4]});
  m.validate();
  return m;
}

inline DiscreteMeasure read_atoms_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("atoms csv: cannot open '" + path + "'");
  return read_atoms_csv(f);
}

/// Coefficients m, n, re, im, or m, re, im for a symbol of x alone.
inline TrigPoly2 read_coefficients_csv(std::istream& in) {
  const auto rows = read_csv(in, {3, 4}, "coefficient csv");
  int N = 0;
  for (const auto& r : rows) {
    for (std::size_t k = 0; k + 2 < r.size(); ++k) {
      if (r[k] != std::round(r[k])) throw ConfigError("coefficient csv: frequencies must be integers");
      N = std::max(N, static_cast<int>(std::abs(r[k])));
    }
  }
  TrigPoly2 p(N);
  for (const auto& r : rows) {
    const int m = static_cast<int>(r[0]);
    const int n = r.size() == 4 ? static_cast<int>(r[1]) : 0;
    p(m, n) += cplx(r[r.size() - 2], r[r.size() - 1]);
  }
  return p;
}

inline TrigPoly2 read_coefficients_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("coefficient csv: cannot open '" + path + "'");
  return read_coefficients_csv(f);
}

inline json to_json(cplx c) { return json::array({c.real(), c.imag()}); }

inline json to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (cplx c : v) a.push_back(to_json(c));
  return a;
}

inline json to_json(const TrigPoly1& f) {
  json a = json::array();
  for (int m = -f.N(); m <= f.N(); ++m)
    if (f(m) != cplx{}) a.push_back({m, f(m).real(), f(m).imag()});
  return a;
}

/// {schema, subcommand, config, seed, values, diagnostics, version, wall_time}.
inline json envelope(const std::string& sub, const json& config, std::uint64_t seed, const json& values,
                     const json& diagnostics, double wall_time) {
  return json{{"schema", kSchemaVersion}, {"subcommand", sub},   {"config", config},
              {"seed", seed},             {"values", values},    {"diagnostics", diagnostics},
              {"version", kVersion},      {"wall_time", wall_time}};
}

}  // namespace nehari

#endif
