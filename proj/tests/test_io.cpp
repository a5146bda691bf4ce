#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bayesel/csv.hpp"
#include "bayesel/errors.hpp"
#include "bayesel/rng.hpp"
#include "bayesel/svg.hpp"
#include "bayesel/trace_io.hpp"

using namespace bayesel;
namespace fs = std::filesystem;

namespace {

fs::path work_dir() {
  const fs::path dir = fs::path("test_artifacts") / "io";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 0.0, -0.0, 1234567.0, 4.251,
                   6.190000000000001, 1e300, -7.25e-300}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
  // Integral values stay compact.
  CHECK(format_double(3.0) == "3");
  CHECK(format_double(-12.0) == "-12");
}

TEST_CASE("csv write/read round-trip with header") {
  const fs::path p = work_dir() / "round.csv";
  Matrix m(3, 2);
  m << 1.5, -2.0, 0.125, 1e-9, 42.0, 0.1;
  write_csv(p.string(), {"alpha", "beta"}, m);
  const CsvTable t = read_csv(p.string());
  CHECK(t.had_header);
  REQUIRE(t.column_names == std::vector<std::string>{"alpha", "beta"});
  REQUIRE(t.values.rows() == 3);
  CHECK((t.values - m).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("headerless csv is detected") {
  const fs::path p = work_dir() / "plain.csv";
  {
    std::ofstream out(p);
    out << "1,2\n3,4\n";
  }
  const CsvTable t = read_csv(p.string());
  CHECK_FALSE(t.had_header);
  REQUIRE(t.values.rows() == 2);
  CHECK(t.values(1, 1) == 4.0);
}

TEST_CASE("csv errors are typed") {
  CHECK_THROWS_AS(read_csv("does_not_exist_7731.csv"), ConfigError);
  const fs::path p = work_dir() / "ragged.csv";
  {
    std::ofstream out(p);
    out << "a,b\n1,2\n3\n";
  }
  CHECK_THROWS_AS(read_csv(p.string()), ConfigError);
}

TEST_CASE("trace csv round-trip preserves every cell") {
  RngStream rng(61);
  Trace tr;
  tr.p = 2;
  tr.q = 1;
  tr.names = {"theta1_1", "theta1_2", "theta2_1"};
  tr.states.resize(40, 3);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 3; ++j) tr.states(i, j) = rng.normal();
  tr.log_posts = Vector::NullaryExpr(40, [&](Eigen::Index) { return rng.normal(); });
  tr.accepted.assign(40, 0);
  for (int i = 0; i < 40; i += 3) tr.accepted[i] = 1;
  tr.mcele_values.resize(40, 0);
  tr.seed = 17;
  tr.burn_in = 10;

  const fs::path p = work_dir() / "trace.csv";
  write_trace_csv(p.string(), tr);

  // Layout contract: iter,accepted,log_post, then the named columns, iter from 1.
  {
    std::ifstream in(p);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    CHECK(header == "iter,accepted,log_post,theta1_1,theta1_2,theta2_1");
    CHECK(first.substr(0, 2) == "1,");
  }

  const Trace back = read_trace_csv(p.string());
  REQUIRE(back.states.rows() == 40);
  REQUIRE(back.names == tr.names);
  CHECK((back.states - tr.states).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((back.log_posts - tr.log_posts).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(back.accepted == tr.accepted);
}

TEST_CASE("svg artifacts are deterministic and well formed") {
  const fs::path a = work_dir() / "h1.svg";
  const fs::path b = work_dir() / "h2.svg";
  Matrix z(6, 5);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 5; ++j) z(i, j) = std::sin(i * 0.8) + 0.3 * j;
  write_heatmap_svg(a.string(), z, 0.0, 1.0, -2.0, 2.0, "field", "x", "y");
  write_heatmap_svg(b.string(), z, 0.0, 1.0, -2.0, 2.0, "field", "x", "y");
  const std::string sa = slurp(a);
  CHECK(sa == slurp(b));
  CHECK(sa.find("<svg") != std::string::npos);
  CHECK(sa.rfind("</svg>") != std::string::npos);
  CHECK(sa.find("field") != std::string::npos);

  const fs::path t = work_dir() / "t.svg";
  write_trace_svg(t.string(), {0.0, 1.0, 0.5, 2.0, 1.5}, "chain");
  CHECK(slurp(t).find("polyline") != std::string::npos);

  const fs::path o = work_dir() / "o.svg";
  write_overlay_svg(o.string(), {{0.0, 1.0, 2.0}, {2.0, 1.0, 0.0}}, {"u", "v"},
                    "two");
  CHECK(slurp(o).find("two") != std::string::npos);
}

TEST_CASE("svg rejects bad input") {
  CHECK_THROWS_AS(write_trace_svg("no_such_dir_9917/x.svg", {1.0, 2.0}, "t"),
                  ConfigError);
  CHECK_THROWS_AS(write_overlay_svg((work_dir() / "bad.svg").string(),
                                    {{1.0, 2.0}, {1.0}}, {"a", "b"}, "t"),
                  DimensionError);
  CHECK_THROWS_AS(
      write_heatmap_svg((work_dir() / "bad2.svg").string(), Matrix(), 0, 1, 0, 1,
                        "t", "x", "y"),
      DimensionError);
}

}  // TEST_SUITE
