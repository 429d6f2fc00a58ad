#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "hgcm/catalog.hpp"
#include "hgcm/goldens.hpp"

using namespace hgcm;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_blocks(const std::string& text) {
  std::size_t n = 0;
  for (std::size_t pos = 0; (pos = text.find("r = ", pos)) != std::string::npos; ++pos)
    if (pos == 0 || text[pos - 1] == '\n') ++n;
  return n;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("hgcm-cli-" + std::to_string(std::rand()))) { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

std::string data_file(const std::string& name) {
  std::ifstream in(std::string(HGCM_DATA_DIR) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("enumerate") {
  const Result all = run({"enumerate", "--lambda-max", "1"});
  CHECK(all.code == 0);
  CHECK(count_blocks(all.out) == 16);
  CHECK(all.out.rfind("r = -23/2\n", 0) == 0);

  const Result noncompact = run({"enumerate", "--lambda-max", "1", "--noncompact-only"});
  CHECK(noncompact.code == 0);
  CHECK(count_blocks(noncompact.out) == 12);

  const Result twisted = run({"enumerate", "--lambda-max", "2", "--untwisted-only", "--format", "records"});
  CHECK(twisted.code == 0);
  CHECK(lines(twisted.out).size() == 16);

  const Result pentagon = run({"enumerate", "--lambda-max", "6", "--r", "-7/18"});
  CHECK(pentagon.code == 0);
  const auto blocks = parse_golden_blocks(pentagon.out);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].r == Rational::parse("-7/18"));
  const PolygonDatum expected =
      datum_from_table(GeometricRealizationTable{{{1, 1, 1, 1, 1}, {0, 2, 0, 2, 2}, {6, 6, 6, 7, 6}}});
  CHECK(dihedral_equivalent(datum_from_table(blocks[0].table), expected));
  CHECK(run({"enumerate", "--lambda-max", "6", "--r=-7/18"}).out == pentagon.out);
  CHECK(run({"enumerate", "--lambda-max", "6", "--r", "-7/19"}).out.empty());
}

TEST_CASE("enumerate records round-trip and are stable across jobs") {
  const Result one = run({"enumerate", "--lambda-max", "2", "--format", "records", "--jobs", "1"});
  const Result four = run({"enumerate", "--lambda-max", "2", "--format", "records", "--jobs", "4"});
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  for (const auto& line : lines(one.out)) CHECK(to_record_line(from_record_line(line)) == line);
}

TEST_CASE("enumerate flag errors exit 2") {
  for (std::vector<std::string> args : std::vector<std::vector<std::string>>{
           {"enumerate", "--lambda-max", "0"},
           {"enumerate", "--lambda-max", "x"},
           {"enumerate", "--mode", "hyperbolic"},
           {"enumerate", "--format", "json"},
           {"enumerate", "--max-sides", "2"},
           {"enumerate", "--jobs", "0"},
           {"enumerate", "--r", "abc"},
           {"enumerate", "--r", "1/0"},
           {"enumerate", "--bogus"},
           {"enumerate", "--mode", "parabolic", "--r", "-1"},
           {},
           {"frobnicate"}}) {
    CAPTURE(args.size() > 0 ? args.back() : std::string("(none)"));
    const Result r = run(args);
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
  }
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("enumerate signals the max-sides cap with exit 3") {
  const Result r = run({"enumerate", "--lambda-max", "1", "--max-sides", "3"});
  CHECK(r.code == 3);
  CHECK(r.err.find("max-sides") != std::string::npos);
  const Result p = run({"enumerate", "--mode", "parabolic", "--lambda-max", "1", "--max-sides", "3"});
  CHECK(p.code == 3);
}

TEST_CASE("enumerate parabolic") {
  const Result r = run({"enumerate", "--mode", "parabolic", "--lambda-max", "1", "--max-sides", "16"});
  CHECK(r.code == 0);
  CHECK(r.out.find("periodic chain, period 1: 1 0 6") != std::string::npos);
  const Result rec = run({"enumerate", "--mode", "parabolic", "--lambda-max", "1", "--max-sides", "16", "--format", "records"});
  CHECK(rec.code == 0);
  CHECK(rec.out.find("\"periodic\":1") != std::string::npos);
}

TEST_CASE("check") {
  TempDir dir;
  const Result ok = run({"check", dir.write("r22.txt", "r = -22\n2 1 1\n0 1 2\n")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("valid") != std::string::npos);
  // A has a_13 = -1 and a_31 = -4.
  CHECK(ok.out.find("  A =\n     2  0 -1\n     0  2 -1\n    -4 -1  2\n") != std::string::npos);
  CHECK(ok.out.find("  B =\n     8  0 -4\n     0  2 -1\n    -4 -1  2\n") != std::string::npos);
  CHECK(ok.out.find("type=elliptic compact=no untwisted=no") != std::string::npos);

  const Result adj = run({"check", dir.write("adj.txt", "r = -22\n2 1 1\n0 1 2\n\nr = -1\n1 1 1\n0 3 2\n")});
  CHECK(adj.code == 1);
  CHECK(adj.out.find("block 2 (line 5), r = -1: invalid") != std::string::npos);
  CHECK(adj.out.find("[adjacency]") != std::string::npos);

  const Result wrong_r = run({"check", dir.write("r.txt", "r = -21\n2 1 1\n0 1 2\n")});
  CHECK(wrong_r.code == 1);
  CHECK(wrong_r.out.find("[weyl-square]") != std::string::npos);

  CHECK(run({"check", dir.write("empty.txt", "")}).code == 2);
  CHECK(run({"check", dir.write("comments.txt", "# nothing\n")}).code == 2);
  CHECK(run({"check", dir.write("junk.txt", "r = -1\n1 one 1\n")}).code == 2);
  CHECK(run({"check", (dir.path / "absent.txt").string()}).code == 2);
  CHECK(run({"check"}).code == 2);

  CHECK(run({"check", dir.write("table1.txt", data_file("table1.txt"))}).code == 0);
}

TEST_CASE("verify") {
  const Result r = run({"verify", "--skip-engine"});
  CHECK(r.code == 0);
  CHECK(r.out == "[ok]   table1 self-consistency (60 rows)\n[ok]   lattice fixtures (12/12 passed)\n[skip] engine cross-check\n");

  TempDir dir;
  dir.write("theorem_matrices.txt", data_file("theorem_matrices.txt"));
  dir.write("lattice_fixtures.txt", data_file("lattice_fixtures.txt"));
  dir.write("table1.txt", data_file("table1.txt"));
  CHECK(run({"verify", "--skip-engine", "--goldens-dir", dir.path.string()}).code == 0);

  // Corrupt one pairing of the r = -16 row.
  std::string table = data_file("table1.txt");
  const auto at = table.find("r = -16\n");
  REQUIRE(at != std::string::npos);
  const auto second = table.find('\n', table.find('\n', at) + 1) + 1;
  table[second] = table[second] == '0' ? '1' : '0';
  dir.write("table1.txt", table);
  const Result bad = run({"verify", "--skip-engine", "--goldens-dir", dir.path.string()});
  CHECK(bad.code == 1);
  const auto out = lines(bad.out);
  REQUIRE(out.size() == 4);
  CHECK(out[0] == "[FAIL] table1 self-consistency (60 rows)");
  CHECK(out[1].find("r = -16") != std::string::npos);
  CHECK(out[2] == "[ok]   lattice fixtures (12/12 passed)");

  fs::remove(dir.path / "lattice_fixtures.txt");
  CHECK(run({"verify", "--skip-engine", "--goldens-dir", dir.path.string()}).code == 1);
  CHECK(run({"verify", "--goldens-dir", (dir.path / "nope").string()}).code == 2);
}

TEST_CASE("verify with the engine") {
  const Result r = run({"verify", "--lambda-max", "6", "--jobs", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[ok]   engine cross-check (lambda_max 6, 60 records, 60 matched)") != std::string::npos);
  const Result low = run({"verify", "--lambda-max", "1"});
  CHECK(low.code == 1);
  CHECK(low.out.find("[FAIL] engine cross-check") != std::string::npos);
}
