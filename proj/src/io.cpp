#include "murmur/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace murmur::io {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

int64_t parse_int(const std::string& s, const std::string& what, size_t line_no) {
  int64_t v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e)
    throw DataError("line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
  return v;
}

double parse_double(const std::string& s, const std::string& what, size_t line_no) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e)
    throw DataError("line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'");
  return v;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

} // namespace

std::string format_general(double v, int significant_digits) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                               significant_digits);
  if (ec != std::errc()) throw DataError("format_general: conversion failed");
  return std::string(buf, p);
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  if (ec != std::errc()) throw DataError("format_fixed: conversion failed");
  return std::string(buf, p);
}

CurveCorpus ingest_curves(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("ingest_curves: cannot open " + path);

  std::string line;
  size_t line_no = 1;
  if (!std::getline(in, line) || strip_cr(line) != "label,a1,a2,a3,a4,a6,conductor,rank")
    throw DataError("ingest_curves: bad header in " + path);

  CurveCorpus corpus;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 8)
      throw DataError("line " + std::to_string(line_no) + ": expected 8 fields, got " +
                      std::to_string(f.size()));
    ec::EllipticCurve E;
    E.label = f[0];
    E.a1 = parse_int(f[1], "a1", line_no);
    E.a2 = parse_int(f[2], "a2", line_no);
    E.a3 = parse_int(f[3], "a3", line_no);
    E.a4 = parse_int(f[4], "a4", line_no);
    E.a6 = parse_int(f[5], "a6", line_no);
    E.conductor = parse_int(f[6], "conductor", line_no);
    int64_t rank = parse_int(f[7], "rank", line_no);
    if (E.conductor <= 0)
      throw DataError("curve " + E.label + ": conductor must be positive");
    if (rank < 0) throw DataError("curve " + E.label + ": rank must be nonnegative");
    E.rank = static_cast<int>(rank);

    if (!seen.insert(E.label).second)
      throw DataError("duplicate curve label '" + E.label + "'");
    const int64_t disc = ec::discriminant(E);
    if (disc == 0)
      throw DataError("curve " + E.label + ": singular model (discriminant 0)");

    // every prime dividing the conductor must divide the discriminant
    int64_t n = E.conductor;
    for (int64_t p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      while (n % p == 0) n /= p;
      if (disc % p != 0)
        corpus.warnings.push_back("curve " + E.label + ": conductor prime " +
                                  std::to_string(p) + " does not divide discriminant");
    }
    if (n > 1 && disc % n != 0)
      corpus.warnings.push_back("curve " + E.label + ": conductor prime " +
                                std::to_string(n) + " does not divide discriminant");
    corpus.curves.push_back(std::move(E));
  }
  return corpus;
}

std::map<std::string, lfunc::ZeroList> ingest_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("ingest_zeros: cannot open " + path);

  std::string line;
  size_t line_no = 1;
  if (!std::getline(in, line) || strip_cr(line) != "object_id,gamma")
    throw DataError("ingest_zeros: bad header in " + path);

  std::map<std::string, lfunc::ZeroList> out;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto f = split_csv(line);
    if (f.size() != 2)
      throw DataError("line " + std::to_string(line_no) + ": expected 2 fields");
    const std::string& id = f[0];
    const double gamma = parse_double(f[1], "gamma", line_no);
    if (!(gamma > 0.0))
      throw DataError("line " + std::to_string(line_no) + ": gamma must be positive");
    auto& zl = out[id];
    if (zl.object_id.empty()) {
      zl.object_id = id;
      zl.source = lfunc::ZeroSource::Ingested;
    }
    if (!zl.gammas.empty() && gamma <= zl.gammas.back())
      throw DataError("line " + std::to_string(line_no) + ": ordinates for '" + id +
                      "' not strictly increasing");
    zl.gammas.push_back(gamma);
    zl.height_bound = gamma;
  }
  return out;
}

void persist_zeros(const std::map<std::string, lfunc::ZeroList>& zeros,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("persist_zeros: cannot write " + path);
  out << "object_id,gamma\n";
  for (const auto& [id, zl] : zeros)
    for (double g : zl.gammas) out << id << ',' << format_fixed(g, 9) << '\n';
  if (!out) throw DataError("persist_zeros: write failure on " + path);
}

void emit_series(const family::MurmurationSeries& series, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("emit_series: cannot write " + path);
  out << "x,avg_lhs,avg_zero_term,black\n";
  for (size_t i = 0; i < series.x_grid.size(); ++i) {
    out << format_general(series.x_grid[i], 9) << ','
        << format_general(series.avg_lhs[i].real(), 9) << ','
        << format_general(series.avg_zero_term[i].real(), 9) << ','
        << format_general(series.black[i].real(), 9) << '\n';
  }
  if (!out) throw DataError("emit_series: write failure on " + path);
}

void emit_hist(const family::ZeroDensityHistogram& hist, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("emit_hist: cannot write " + path);
  out << "bin_lo,bin_hi,count\n";
  for (size_t b = 0; b < hist.counts.size(); ++b) {
    out << format_general(hist.bin_edges[b], 9) << ','
        << format_general(hist.bin_edges[b + 1], 9) << ','
        << format_general(hist.counts[b], 9) << '\n';
  }
  if (!out) throw DataError("emit_hist: write failure on " + path);
}

} // namespace murmur::io
