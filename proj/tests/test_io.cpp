#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include "flowlab/field_ops.hpp"
#include "flowlab/io.hpp"
#include "flowlab/rng.hpp"

using namespace flowlab;

namespace {

bool bit_equal(const VectorField& a, const VectorField& b) {
  if (a.grid != b.grid || a.time != b.time) return false;
  for (int d = 0; d < a.grid.dim; ++d)
    if (!(a.comp[d] == b.comp[d]).all()) return false;
  return true;
}

std::string contains_line_number(const std::exception& e) {
  return std::string(e.what()).find("line") != std::string::npos ? "yes" : "no";
}

}  // namespace

TEST_CASE("seventeen digits round-trip every double") {
  for (Real v : {0.1, 1.0 / 3.0, kPi, 1e-300, 6.02214076e23,
                 -12345.678901234567, 4.9406564584124654e-324}) {
    const std::string s = io::real17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("field csv round trip is bit exact") {
  TorusGrid g(2, 8);
  Rng rng(42);
  VectorField f(g, 0.375);
  for (int d = 0; d < 2; ++d)
    for (Index i = 0; i < g.node_count(); ++i)
      f.comp[d][i] = rng.normal();

  std::stringstream ss;
  io::write_field_csv(ss, f);
  VectorField back = io::read_field_csv(ss);
  CHECK(bit_equal(f, back));
}

TEST_CASE("three-dimensional field csv round trip") {
  TorusGrid g(3, 4, 4.0);
  Rng rng(7);
  VectorField f(g, 1e-3);
  for (int d = 0; d < 3; ++d)
    for (Index i = 0; i < g.node_count(); ++i)
      f.comp[d][i] = rng.uniform(-2, 2);

  std::stringstream ss;
  io::write_field_csv(ss, f);
  VectorField back = io::read_field_csv(ss);
  CHECK(bit_equal(f, back));
  CHECK(back.grid.period == 4.0);
}

TEST_CASE("trajectory csv round trip preserves metadata and data") {
  TorusGrid g(2, 8);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.1, 0.05);
  std::stringstream ss;
  io::write_trajectory_csv(ss, traj);
  auto back = io::read_trajectory_csv(ss);
  CHECK(back.dt == traj.dt);
  CHECK(back.scheme == traj.scheme);
  REQUIRE(back.count() == traj.count());
  for (int j = 0; j < traj.count(); ++j)
    CHECK(bit_equal(traj.snaps[j], back.snaps[j]));
}

TEST_CASE("embedded config comments are skipped by every reader") {
  TorusGrid g(2, 8);
  auto traj = mild::heat_extend(mild::taylor_green(g), 0.1, 0.05);
  std::stringstream ss;
  ss << "# config: scenario=mild-solve\n# config: dt=auto\n";
  io::write_trajectory_csv(ss, traj);
  auto back = io::read_trajectory_csv(ss);
  CHECK(back.count() == traj.count());
}

TEST_CASE("csv parse errors carry a line number") {
  TorusGrid g(2, 8);
  VectorField f(g);
  std::stringstream ss;
  io::write_field_csv(ss, f);
  std::string text = ss.str();

  SUBCASE("truncated block") {
    std::istringstream in(text.substr(0, text.size() - 20));
    try {
      io::read_field_csv(in);
      FAIL("expected a parse error");
    } catch (const DataError& e) {
      CHECK(contains_line_number(e) == "yes");
    }
  }
  SUBCASE("garbage row") {
    std::string bad = text;
    bad.replace(bad.find("0,0,"), 4, "a,b,");
    std::istringstream in(bad);
    CHECK_THROWS_AS(io::read_field_csv(in), DataError);
  }
  SUBCASE("missing header key") {
    std::string bad = text;
    bad.replace(bad.find("N="), 2, "Q=");
    std::istringstream in(bad);
    CHECK_THROWS_AS(io::read_field_csv(in), DataError);
  }
  SUBCASE("node index out of range") {
    std::istringstream in(
        "# grid: dim=2, N=8, L=6.2831853071795862, t=0\n"
        "i0,i1,u0,u1\n"
        "9,0,1.0,1.0\n");
    CHECK_THROWS_AS(io::read_field_csv(in), DataError);
  }
  SUBCASE("missing trajectory header") {
    std::istringstream in(text);
    CHECK_THROWS_AS(io::read_trajectory_csv(in), DataError);
  }
}

TEST_CASE("trace csv round trip") {
  auto tr = blowup::trace_from_series({0.0, 0.1, 0.2}, {1.0, 2.0, 1.5});
  std::stringstream ss;
  ss << "# a stray comment\n";
  io::write_trace_csv(ss, tr);
  auto back = io::read_trace_csv(ss);
  REQUIRE(back.times.size() == 3);
  for (size_t j = 0; j < 3; ++j) {
    CHECK(back.times[j] == tr.times[j]);
    CHECK(back.h[j] == tr.h[j]);
    CHECK(back.H[j] == tr.H[j]);
  }

  std::istringstream empty("t,h\n# nothing else\n");
  CHECK_THROWS_AS(io::read_trace_csv(empty), DataError);
  std::istringstream narrow("t,h\n0.25\n");
  CHECK_THROWS_AS(io::read_trace_csv(narrow), DataError);
}

TEST_CASE("text file helpers") {
  const std::string path = "io_test_scratch.txt";
  const std::string body = "alpha\nbeta\n";
  io::save_text(path, body);
  CHECK(io::load_text(path) == body);
  std::remove(path.c_str());
  CHECK_THROWS_AS(io::load_text("no/such/dir/file.txt"), DataError);
  CHECK_THROWS_AS(io::save_text("no/such/dir/file.txt", body), DataError);
}
