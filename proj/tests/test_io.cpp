#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "murmur/io.hpp"

using namespace murmur;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("murmur_io_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("ingest_curves valid file and invariants") {
  TempDir tmp;
  const auto path = tmp.file("curves.csv");
  write_file(path,
             "label,a1,a2,a3,a4,a6,conductor,rank\n"
             "11a1,0,-1,1,-10,-20,11,0\n"
             "37a1,0,0,1,-1,0,37,1\n"
             "389a1,0,1,1,-2,0,389,2\n");
  auto corpus = io::ingest_curves(path);
  CHECK(corpus.curves.size() == 3);
  CHECK(corpus.warnings.empty());
  CHECK(corpus.curves[0].label == "11a1");
  CHECK(corpus.curves[1].rank == 1);
}

TEST_CASE("ingest_curves rejections and warnings") {
  TempDir tmp;

  const auto singular = tmp.file("singular.csv");
  write_file(singular,
             "label,a1,a2,a3,a4,a6,conductor,rank\n"
             "bad1,0,0,0,0,0,11,0\n");
  CHECK_THROWS_WITH_AS(io::ingest_curves(singular), doctest::Contains("bad1"), DataError);

  const auto dup = tmp.file("dup.csv");
  write_file(dup,
             "label,a1,a2,a3,a4,a6,conductor,rank\n"
             "11a1,0,-1,1,-10,-20,11,0\n"
             "11a1,0,-1,1,-10,-20,11,0\n");
  CHECK_THROWS_WITH_AS(io::ingest_curves(dup), doctest::Contains("duplicate"), DataError);

  const auto badheader = tmp.file("hdr.csv");
  write_file(badheader, "label,a1\n");
  CHECK_THROWS_AS(io::ingest_curves(badheader), DataError);

  const auto badint = tmp.file("badint.csv");
  write_file(badint,
             "label,a1,a2,a3,a4,a6,conductor,rank\n"
             "x1,0,zero,1,-10,-20,11,0\n");
  CHECK_THROWS_WITH_AS(io::ingest_curves(badint), doctest::Contains("line 2"), DataError);

  // conductor with a prime not dividing the discriminant draws a warning
  const auto mismatch = tmp.file("mismatch.csv");
  write_file(mismatch,
             "label,a1,a2,a3,a4,a6,conductor,rank\n"
             "odd1,0,-1,1,-10,-20,7,0\n");
  auto corpus = io::ingest_curves(mismatch);
  REQUIRE(corpus.warnings.size() == 1);
  CHECK(corpus.warnings[0].find("odd1") != std::string::npos);
  CHECK(corpus.warnings[0].find("7") != std::string::npos);
}

TEST_CASE("ingest_zeros and persist_zeros round trip") {
  TempDir tmp;
  const auto path = tmp.file("zeros.csv");
  write_file(path,
             "object_id,gamma\n"
             "11a1,6.362613895\n"
             "11a1,8.603539619\n"
             "37a1,5.003170000\n"
             "37a1,6.870390000\n"
             "37a1,8.014209000\n");
  auto zeros = io::ingest_zeros(path);
  REQUIRE(zeros.size() == 2);
  CHECK(zeros["11a1"].gammas.size() == 2);
  CHECK(zeros["37a1"].gammas.size() == 3);
  CHECK(zeros["11a1"].height_bound == doctest::Approx(8.603539619));
  CHECK(zeros["11a1"].source == lfunc::ZeroSource::Ingested);

  const auto out = tmp.file("roundtrip.csv");
  io::persist_zeros(zeros, out);
  auto again = io::ingest_zeros(out);
  REQUIRE(again.size() == zeros.size());
  for (const auto& [id, zl] : zeros) {
    REQUIRE(again[id].gammas.size() == zl.gammas.size());
    for (size_t i = 0; i < zl.gammas.size(); ++i)
      CHECK(std::abs(again[id].gammas[i] - zl.gammas[i]) < 1e-9);
  }

  // identical rerun is byte-identical
  const auto out2 = tmp.file("roundtrip2.csv");
  io::persist_zeros(zeros, out2);
  CHECK(read_file(out) == read_file(out2));

  // empty map gives a header-only file
  const auto empty = tmp.file("empty.csv");
  io::persist_zeros({}, empty);
  CHECK(read_file(empty) == "object_id,gamma\n");
}

TEST_CASE("ingest_zeros rejects non-monotone groups") {
  TempDir tmp;
  const auto path = tmp.file("bad.csv");
  write_file(path,
             "object_id,gamma\n"
             "a,2.0\n"
             "a,1.5\n");
  CHECK_THROWS_WITH_AS(io::ingest_zeros(path), doctest::Contains("line 3"), DataError);
}

TEST_CASE("emit_series and emit_hist formats") {
  TempDir tmp;
  family::MurmurationSeries s;
  s.x_grid = {2.0, 4.0, 8.0};
  s.avg_lhs = {0.5, -0.25, 1.0 / 3.0};
  s.avg_zero_term = {0.1, 0.2, 0.3};
  s.black = {0.6, -0.05, 1.0 / 3.0 + 0.3};
  const auto path = tmp.file("series.csv");
  io::emit_series(s, path);
  const std::string content = read_file(path);
  CHECK(content.substr(0, 31) == "x,avg_lhs,avg_zero_term,black\n2");
  // every row has exactly 4 columns
  std::istringstream lines(content);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
    ++rows;
  }
  CHECK(rows == 3);

  family::ZeroDensityHistogram h;
  h.bin_edges = {0.0, 1.0, 2.0};
  h.counts = {3.0, 1.5};
  const auto hpath = tmp.file("hist.csv");
  io::emit_hist(h, hpath);
  CHECK(read_file(hpath) == "bin_lo,bin_hi,count\n0,1,3\n1,2,1.5\n");

  // deterministic re-emission
  const auto path2 = tmp.file("series2.csv");
  io::emit_series(s, path2);
  CHECK(read_file(path) == read_file(path2));
}

TEST_CASE("float formatting is locale-independent and bounded") {
  CHECK(io::format_general(0.1, 9) == "0.1");
  CHECK(io::format_general(1234567.89, 9) == "1234567.89");
  CHECK(io::format_fixed(6.362613894713, 9) == "6.362613895");
  CHECK(io::format_fixed(2.0, 9) == "2.000000000");
}
