#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "iwpp/pgm.hpp"
#include "support.hpp"

using namespace iwpp;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
  fs::path dir;
  Sandbox() : dir(fs::temp_directory_path() / ("iwpp_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }
  std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

int cli(const std::string& args) {
  const std::string cmd = std::string(IWPP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> rows_of(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

std::string field(const std::string& line, std::size_t index) {
  std::istringstream in(line);
  std::string f;
  for (std::size_t i = 0; i <= index; ++i) std::getline(in, f, ',');
  return f;
}

}  // namespace

TEST_CASE("cli: generate is deterministic") {
  Sandbox box;
  REQUIRE(cli("generate --width 40 --height 30 --coverage 60 --seed 7 --out " + box("a.pgm")) == 0);
  REQUIRE(cli("generate --width 40 --height 30 --coverage 60 --seed 7 --out " + box("b.pgm")) == 0);
  CHECK(read_file(box("a.pgm")) == read_file(box("b.pgm")));
  REQUIRE(cli("generate --width 40 --height 30 --coverage 0 --out " + box("empty.pgm")) == 0);
  CHECK(load_image(box("empty.pgm")).image.same_interior(Image2D(40, 30)));
}

TEST_CASE("cli: recon with marker = mask leaves it unchanged") {
  Sandbox box;
  REQUIRE(cli("generate --width 32 --height 32 --coverage 70 --out " + box("t.pgm")) == 0);
  REQUIRE(cli("run recon --marker " + box("t.pgm") + " --mask " + box("t.pgm") + " --out " + box("r.pgm") +
               " --csv " + box("r.csv")) == 0);
  CHECK(load_image(box("r.pgm")).image.same_interior(load_image(box("t.pgm")).image));
  const auto rows = rows_of(slurp(box("r.csv")));
  REQUIRE(rows.size() == 2);
  CHECK(field(rows[1], 12) == "0");
}

TEST_CASE("cli: recon rejects a marker above the mask") {
  Sandbox box;
  write_file(box("mask.pgm"), write_pgm(test::from_rows(2, 1, {5, 5}), 255));
  write_file(box("marker.pgm"), write_pgm(test::from_rows(2, 1, {5, 6}), 255));
  CHECK(cli("run recon --marker " + box("marker.pgm") + " --mask " + box("mask.pgm") + " --out " + box("o.pgm")) ==
        2);
  CHECK(cli("run recon --marker " + box("missing.pgm") + " --mask " + box("mask.pgm") + " --out " + box("o.pgm")) ==
        1);
}

TEST_CASE("cli: edt on an empty image is all zero") {
  Sandbox box;
  REQUIRE(cli("generate --width 16 --height 16 --coverage 0 --out " + box("bg.pgm")) == 0);
  REQUIRE(cli("run edt --in " + box("bg.pgm") + " --out " + box("d.raw") + " --csv " + box("d.csv")) == 0);
  CHECK(read_raw(read_file(box("d.raw"))).same_interior(Image2D(16, 16)));
}

TEST_CASE("cli: fill closes a ring") {
  Sandbox box;
  const Image2D ring = test::from_rows(5, 5, {0, 0,   0,   0,   0,  //
                                              0, 255, 255, 255, 0,  //
                                              0, 255, 0,   255, 0,  //
                                              0, 255, 255, 255, 0,  //
                                              0, 0,   0,   0,   0});
  write_file(box("ring.pgm"), write_pgm(ring, 255));
  REQUIRE(cli("run fill --in " + box("ring.pgm") + " --connectivity 4 --threads 2 --tiles 2 --out " +
               box("f.pgm") + " --csv " + box("f.csv")) == 0);
  CHECK(load_image(box("f.pgm")).image.same_interior(test::flood_fill_holes(ring, Connectivity::kFour, 255)));
}

TEST_CASE("cli: bench writes one row per repeat") {
  Sandbox box;
  REQUIRE(cli("bench --width 32 --height 32 --repeats 3 --csv " + box("b.csv")) == 0);
  const auto rows = rows_of(slurp(box("b.csv")));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "operator,engine,queue,threads,tiles,width,height,coverage,init_ms,prop_ms,total_ms,identified,"
                   "propagated,checksum");
  REQUIRE(cli("bench --width 48 --height 48 --queue fifo priority --threads 1 4 --engine classic batched --csv " +
               box("c.csv")) == 0);
  CHECK(rows_of(slurp(box("c.csv"))).size() == 9);
  CHECK(cli("bench --engine warp") != 0);
}
