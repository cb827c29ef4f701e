#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "eqlab/golden.hpp"
#include "eqlab/io.hpp"

using namespace eqlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("eqlab_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Io, Fmt17RoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.42102443824070833}) {
    const auto s = io::fmt17(v);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), v) << s;
  }
}

TEST(Io, JsonShortestRoundTrip) {
  io::json j = 0.1;
  EXPECT_EQ(j.dump(), "0.1");
  const double v = 1.0 / 3.0;
  EXPECT_EQ(io::json::parse(io::json(v).dump()).get<double>(), v);
}

TEST(Io, CsvHeaders) {
  std::ostringstream c, s, w;
  io::write_csv(c, std::vector<corr::CorrelationReport>{});
  io::write_csv(s, std::vector<scs::ScsReport>{});
  io::write_csv(w, std::vector<experiment::WindowRow>{});
  EXPECT_EQ(c.str(), "T,alpha,I_direct,I_parseval,main_term,deviation,route_gap\n");
  EXPECT_EQ(s.str(), "T,Y,P,m,brute,main_term,error,et_bound,ratio\n");
  EXPECT_EQ(w.str(), "j,center,width,I_value,main_term,negative,signchange_found,zero_location\n");
}

TEST(Io, ScsRowAndJson) {
  scs::ScsReport r;
  r.T = 50;
  r.Y = 1e4;
  r.P = 4;
  r.m = -3;
  r.brute = 1.25;
  r.ratio = 0.1;
  std::ostringstream os;
  io::write_csv(os, std::vector<scs::ScsReport>{r});
  std::string header, row;
  std::istringstream in(os.str());
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(row.substr(0, 14), "50,10000,4,-3,");
  const auto j = io::to_json(r);
  EXPECT_EQ(j["m"].get<std::int64_t>(), -3);
  EXPECT_EQ(j["ratio"].get<double>(), 0.1);
  EXPECT_FALSE(j["condition_ok"].get<bool>());
}

TEST(Io, WindowRowEmptyZero) {
  experiment::WindowRow r;
  r.j = 2;
  std::ostringstream os;
  io::write_csv(os, std::vector<experiment::WindowRow>{r});
  EXPECT_NE(os.str().find("\n2,0,0,0,0,false,false,\n"), std::string::npos);
  EXPECT_TRUE(io::to_json(r)["zero_location"].is_null());
  r.zero_location = 1.5;
  EXPECT_EQ(io::to_json(r)["zero_location"].get<double>(), 1.5);
}

TEST(Golden, LoadsShippedTables) {
  const auto b = golden::load_bessel(EQLAB_GOLDEN_DIR);
  EXPECT_GE(b.size(), 10u);
  EXPECT_EQ(b.front().T, 0.0);
  EXPECT_EQ(b.front().y, 1.0);
  const auto m = golden::load_misc(EQLAB_GOLDEN_DIR);
  EXPECT_NEAR(golden::find(m, "zeta_3").re, 1.2020569031595943, 0.0);
  EXPECT_THROW(golden::find(m, "no_such_row"), golden::MissingDataError);
}

TEST(Golden, MissingDirectory) {
  EXPECT_THROW(golden::load_bessel("/nonexistent/eqlab"), golden::MissingDataError);
  EXPECT_THROW(golden::load_misc("/nonexistent/eqlab"), golden::MissingDataError);
}

TEST(Golden, CorruptFiles) {
  const auto d = scratch_dir("corrupt");
  write_file(d / "golden_bessel.csv", "T,y,value\n1,2,3\n");
  EXPECT_THROW(golden::load_bessel(d.string()), golden::CorruptDataError);
  write_file(d / "golden_bessel.csv", "T,y,scaled_k,abs_err\n1,2,abc,0\n");
  EXPECT_THROW(golden::load_bessel(d.string()), golden::CorruptDataError);
  write_file(d / "golden_bessel.csv", "T,y,scaled_k,abs_err\n1,2,3\n");
  EXPECT_THROW(golden::load_bessel(d.string()), golden::CorruptDataError);
  write_file(d / "golden_bessel.csv", "T,y,scaled_k,abs_err\n");
  EXPECT_THROW(golden::load_bessel(d.string()), golden::CorruptDataError);
  write_file(d / "golden_misc.csv", "name,re,im\nzeta_3,1.2\n");
  EXPECT_THROW(golden::load_misc(d.string()), golden::CorruptDataError);
  fs::remove_all(d);
}

TEST(Golden, DirectoryPrecedence) {
  const char* saved = std::getenv(golden::kEnvVar);
  const std::string keep = saved ? saved : "";
  ::setenv(golden::kEnvVar, "/from/env", 1);
  EXPECT_EQ(golden::resolve_dir("/from/flag", "/fallback"), "/from/flag");
  EXPECT_EQ(golden::resolve_dir("", "/fallback"), "/from/env");
  ::unsetenv(golden::kEnvVar);
  EXPECT_EQ(golden::resolve_dir("", "/fallback"), "/fallback");
  if (saved) ::setenv(golden::kEnvVar, keep.c_str(), 1);
}
