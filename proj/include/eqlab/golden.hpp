#pragma once

// Reader for the frozen oracle tables in tests/data.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eqlab/errors.hpp"

namespace eqlab::golden {

/// Environment variable naming the directory that holds the golden CSV files.
inline constexpr const char* kEnvVar = "EQLAB_GOLDEN_DIR";

struct BesselRow {
  double T = 0.0;
  double y = 0.0;
  double scaled_k = 0.0;
  double abs_err = 0.0;
};

struct MiscRow {
  std::string name;
  double re = 0.0;
  double im = 0.0;
};

class MissingDataError : public Error {
 public:
  using Error::Error;
};

class CorruptDataError : public Error {
 public:
  using Error::Error;
};

/// Directory precedence: explicit argument, then $EQLAB_GOLDEN_DIR, then the
/// compiled-in fallback.
inline std::string resolve_dir(const std::string& explicit_dir, const std::string& fallback) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv(kEnvVar); env && *env) return env;
  return fallback;
}

namespace detail {
inline std::vector<std::vector<std::string>> read_csv(const std::string& path, const std::string& header) {
  std::ifstream in(path);
  if (!in) throw MissingDataError("golden data file missing: " + path);
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw CorruptDataError(path + ": expected header '" + header + "'");
  std::vector<std::vector<std::string>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.empty()) throw CorruptDataError(path + ":" + std::to_string(lineno) + ": empty row");
    cells.push_back(std::to_string(lineno));
    rows.push_back(std::move(cells));
  }
  return rows;
}

inline double number(const std::vector<std::string>& row, std::size_t i, const std::string& path) {
  const std::string& line = row.back();
  if (i + 1 >= row.size()) throw CorruptDataError(path + ":" + line + ": missing column");
  const std::string& s = row[i];
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw CorruptDataError(path + ":" + line + ": not a number: '" + s + "'");
  return v;
}
}  // namespace detail

inline std::vector<BesselRow> load_bessel(const std::string& dir) {
  const std::string path = dir + "/golden_bessel.csv";
  std::vector<BesselRow> out;
  for (const auto& r : detail::read_csv(path, "T,y,scaled_k,abs_err")) {
    if (r.size() != 5) throw CorruptDataError(path + ":" + r.back() + ": expected 4 columns");
    out.push_back({detail::number(r, 0, path), detail::number(r, 1, path), detail::number(r, 2, path),
                   detail::number(r, 3, path)});
  }
  if (out.empty()) throw CorruptDataError(path + ": no rows");
  return out;
}

inline std::vector<MiscRow> load_misc(const std::string& dir) {
  const std::string path = dir + "/golden_misc.csv";
  std::vector<MiscRow> out;
  for (const auto& r : detail::read_csv(path, "name,re,im")) {
    if (r.size() != 4) throw CorruptDataError(path + ":" + r.back() + ": expected 3 columns");
    out.push_back({r[0], detail::number(r, 1, path), detail::number(r, 2, path)});
  }
  return out;
}

inline const MiscRow& find(const std::vector<MiscRow>& rows, const std::string& name) {
  for (const auto& r : rows)
    if (r.name == name) return r;
  throw MissingDataError("golden_misc.csv has no entry '" + name + "'");
}

}  // namespace eqlab::golden
