#pragma once

// JSON and CSV serialization of reports. JSON uses nlohmann::json, whose
// number output is the shortest string that round-trips the binary64 value;
// CSV cells are printed with 17 significant digits.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqlab/corr.hpp"
#include "eqlab/eisen.hpp"
#include "eqlab/experiment.hpp"
#include "eqlab/scs.hpp"

namespace eqlab::io {

using nlohmann::json;

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline json to_json(const eisen::SignChangeReport& r) {
  return json{{"T", r.T},
              {"interval", {r.a, r.b}},
              {"count", r.count},
              {"zeros", r.zeros},
              {"grid_points", r.grid_points},
              {"min_gap", r.min_gap},
              {"suspicious", r.suspicious},
              {"near_tangencies", r.near_tangencies}};
}

inline json to_json(const corr::CorrelationReport& r) {
  return json{{"T", r.T},
              {"alpha", r.alpha},
              {"psi", {{"center", r.psi.center}, {"width", r.psi.width}, {"A", r.psi.A}}},
              {"l1_sq", r.l1_sq},
              {"I_direct", r.I_direct},
              {"I_parseval", r.I_parseval},
              {"main_term", r.main_term},
              {"deviation", r.deviation},
              {"route_gap", r.route_gap},
              {"direct_error", r.direct_error},
              {"parseval_error", r.parseval_error}};
}

inline json to_json(const scs::ScsReport& r) {
  return json{{"T", r.T},       {"Y", r.Y},         {"P", r.P},         {"m", r.m},
              {"brute", r.brute}, {"main_term", r.main_term}, {"error", r.error},
              {"et_bound", r.et_bound}, {"ratio", r.ratio}, {"R", r.R}, {"condition_ok", r.condition_ok}};
}

inline json to_json(const experiment::WindowRow& r) {
  return json{{"j", r.j},
              {"center", r.center},
              {"width", r.width},
              {"I_value", r.I_value},
              {"main_term", r.main_term},
              {"negative", r.negative},
              {"signchange_found", r.signchange_found},
              {"zero_location", r.zero_location ? json(*r.zero_location) : json(nullptr)}};
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
  os << '\n';
}

inline const char* kCorrelationHeader = "T,alpha,I_direct,I_parseval,main_term,deviation,route_gap";
inline const char* kScsHeader = "T,Y,P,m,brute,main_term,error,et_bound,ratio";
inline const char* kWindowsHeader = "j,center,width,I_value,main_term,negative,signchange_found,zero_location";

inline void write_csv(std::ostream& os, const std::vector<corr::CorrelationReport>& rows) {
  os << kCorrelationHeader << '\n';
  for (const auto& r : rows)
    write_csv_row(os, {fmt17(r.T), fmt17(r.alpha), fmt17(r.I_direct), fmt17(r.I_parseval), fmt17(r.main_term),
                       fmt17(r.deviation), fmt17(r.route_gap)});
}

inline void write_csv(std::ostream& os, const std::vector<scs::ScsReport>& rows) {
  os << kScsHeader << '\n';
  for (const auto& r : rows)
    write_csv_row(os, {fmt17(r.T), fmt17(r.Y), fmt17(r.P), std::to_string(r.m), fmt17(r.brute),
                       fmt17(r.main_term), fmt17(r.error), fmt17(r.et_bound), fmt17(r.ratio)});
}

inline void write_csv(std::ostream& os, const std::vector<experiment::WindowRow>& rows) {
  os << kWindowsHeader << '\n';
  for (const auto& r : rows)
    write_csv_row(os, {std::to_string(r.j), fmt17(r.center), fmt17(r.width), fmt17(r.I_value),
                       fmt17(r.main_term), r.negative ? "true" : "false", r.signchange_found ? "true" : "false",
                       r.zero_location ? fmt17(*r.zero_location) : ""});
}

}  // namespace eqlab::io
