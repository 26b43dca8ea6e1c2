// murmur: explicit-formula and murmuration toolkit CLI.
//
// Exit codes: 0 success, 1 usage error, 2 data/ingestion error,
// 3 numeric-diagnostic failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "murmur/arith.hpp"
#include "murmur/dirichlet.hpp"
#include "murmur/elliptic.hpp"
#include "murmur/family.hpp"
#include "murmur/formula.hpp"
#include "murmur/io.hpp"
#include "murmur/lfunc.hpp"
#include "murmur/parallel.hpp"
#include "murmur/verify.hpp"

namespace {

using namespace murmur;
using dirichlet::DirichletCharacter;

formula::Truncation parse_trunc(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    const std::string value = spec.substr(colon + 1);
    try {
      if (kind == "count") return formula::Truncation::by_count(std::stoull(value));
      if (kind == "height") return formula::Truncation::by_height(std::stod(value));
    } catch (...) {
    }
  }
  throw DomainError("--trunc expects count:N or height:T, got '" + spec + "'");
}

// stdout when path is empty
void write_lines(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << content;
}

std::vector<DirichletCharacter> kronecker_members(int64_t lo, int64_t hi) {
  return family::build_kronecker_family(lo, hi).members;
}

std::map<std::string, lfunc::ZeroList> compute_zeros(
    const std::vector<DirichletCharacter>& members, double height, double grid_step) {
  std::vector<lfunc::ZeroList> lists(members.size());
  parallel_for(members.size(), [&](size_t i) {
    lists[i] = lfunc::find_zeros(members[i], height, {}, grid_step);
  });
  std::map<std::string, lfunc::ZeroList> out;
  for (auto& zl : lists) out[zl.object_id] = std::move(zl);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"murmur: explicit-formula evaluation and murmuration series"};
  app.require_subcommand(1);

  // ---- sieve
  auto* sieve = app.add_subcommand("sieve", "list primes below a limit");
  int64_t sieve_limit = 0;
  std::string sieve_out;
  sieve->add_option("--limit", sieve_limit, "upper bound (exclusive)")->required();
  sieve->add_option("--out", sieve_out, "output CSV (default stdout)");

  // ---- ap
  auto* ap_cmd = app.add_subcommand("ap", "trace of Frobenius for a curve file");
  std::string ap_curves, ap_out;
  int64_t ap_limit = 0;
  ap_cmd->add_option("--curves", ap_curves, "curve CSV")->required();
  ap_cmd->add_option("--limit", ap_limit, "prime bound (exclusive)")->required();
  ap_cmd->add_option("--out", ap_out, "output CSV (default stdout)");

  // ---- zeros
  auto* zeros_cmd = app.add_subcommand("zeros", "critical-line zeros for a character family");
  std::string z_kind, z_out;
  int64_t z_lo = 0, z_hi = 0, z_modulus = 0, z_count = 0;
  uint64_t z_seed = 1;
  double z_height = 60.0, z_step = 0.0;
  zeros_cmd->add_option("--kind", z_kind, "kronecker | modprime")->required();
  zeros_cmd->add_option("--lo", z_lo, "lowest fundamental discriminant");
  zeros_cmd->add_option("--hi", z_hi, "highest fundamental discriminant");
  zeros_cmd->add_option("--modulus", z_modulus, "prime modulus for odd characters");
  zeros_cmd->add_option("--count", z_count, "family size (even)");
  zeros_cmd->add_option("--seed", z_seed, "sampling seed");
  zeros_cmd->add_option("--height", z_height, "zero search height T");
  zeros_cmd->add_option("--grid-step", z_step, "scan step (default 0.25/log(q+3))");
  zeros_cmd->add_option("--out", z_out, "zeros CSV")->required();

  // ---- hist
  auto* hist_cmd = app.add_subcommand("hist", "zero-density histogram from a zeros file");
  std::string h_zeros, h_out;
  double h_bin = 0.25, h_max = 15.0;
  bool h_norm = false;
  hist_cmd->add_option("--zeros", h_zeros, "zeros CSV")->required();
  hist_cmd->add_option("--bin-width", h_bin, "bin width");
  hist_cmd->add_option("--gamma-max", h_max, "histogram range (0, gamma-max)");
  hist_cmd->add_flag("--normalize", h_norm, "divide counts by family size");
  hist_cmd->add_option("--out", h_out, "histogram CSV")->required();

  // ---- murmurate
  auto* mur = app.add_subcommand("murmurate", "family-averaged murmuration series");
  std::string m_kind, m_curves, m_zeros, m_trunc = "count:500", m_out;
  int64_t m_lo = 0, m_hi = 0, m_modulus = 0, m_count = 0, m_rank = -1;
  uint64_t m_seed = 1;
  double m_height = 0.0, m_xmin = 2.0, m_xmax = 1000.0;
  size_t m_grid = 2000;
  bool m_include_r = false;
  mur->add_option("--kind", m_kind, "ec | kronecker | odd")->required();
  mur->add_option("--curves", m_curves, "curve CSV (ec)");
  mur->add_option("--zeros", m_zeros, "zeros CSV (ec, or precomputed characters)");
  mur->add_option("--rank", m_rank, "restrict elliptic family to one rank");
  mur->add_option("--lo", m_lo, "family lower bound (conductor or discriminant)");
  mur->add_option("--hi", m_hi, "family upper bound");
  mur->add_option("--modulus", m_modulus, "prime modulus (odd)");
  mur->add_option("--count", m_count, "family size (odd)");
  mur->add_option("--seed", m_seed, "sampling seed (odd)");
  mur->add_option("--height", m_height, "compute character zeros to this height");
  mur->add_option("--trunc", m_trunc, "zero-sum truncation: count:N or height:T");
  mur->add_option("--grid", m_grid, "number of geometric grid points");
  mur->add_option("--xmin", m_xmin, "grid start");
  mur->add_option("--xmax", m_xmax, "grid end");
  mur->add_flag("--include-r", m_include_r, "fold R_chi into the gold curve (even families)");
  mur->add_option("--out", m_out, "series CSV")->required();

  // ---- verify
  auto* ver = app.add_subcommand("verify", "run acceptance suites");
  std::string v_suite = "all", v_data = "data", v_curves, v_zeros;
  ver->add_option("--suite", v_suite, "suite name or 'all'");
  ver->add_option("--data-dir", v_data, "bundled data directory");
  ver->add_option("--curves", v_curves, "external curve corpus");
  ver->add_option("--zeros", v_zeros, "external zeros file");

  CLI11_PARSE(app, argc, argv);

  if (sieve->parsed()) {
    const auto table = arith::sieve_primes(sieve_limit);
    std::string content = "p\n";
    for (int64_t p : table.primes) content += std::to_string(p) + "\n";
    write_lines(sieve_out, content);
    return 0;
  }

  if (ap_cmd->parsed()) {
    const auto corpus = io::ingest_curves(ap_curves);
    for (const auto& w : corpus.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    std::string content = "label,p,ap\n";
    for (const auto& E : corpus.curves)
      for (const auto& [p, a] : ec::ap_vector(E, ap_limit))
        content += E.label + "," + std::to_string(p) + "," + std::to_string(a) + "\n";
    write_lines(ap_out, content);
    return 0;
  }

  if (zeros_cmd->parsed()) {
    std::vector<DirichletCharacter> members;
    if (z_kind == "kronecker") {
      if (z_lo == 0 || z_hi == 0) throw DomainError("zeros: kronecker needs --lo and --hi");
      members = kronecker_members(z_lo, z_hi);
    } else if (z_kind == "modprime") {
      if (z_modulus == 0 || z_count == 0)
        throw DomainError("zeros: modprime needs --modulus and --count");
      members = dirichlet::build_odd_family(z_modulus, z_count, z_seed).members;
    } else {
      throw DomainError("zeros: --kind must be kronecker or modprime");
    }
    io::persist_zeros(compute_zeros(members, z_height, z_step), z_out);
    return 0;
  }

  if (hist_cmd->parsed()) {
    const auto zeros = io::ingest_zeros(h_zeros);
    family::ZeroMap zmap;
    std::vector<std::string> ids;
    for (const auto& [id, zl] : zeros) {
      ids.push_back(id);
      zmap[id] = zl;
    }
    const auto hist = family::zero_density(ids, zmap, h_bin, h_max, h_norm,
                                           std::filesystem::path(h_zeros).stem().string());
    io::emit_hist(hist, h_out);
    return 0;
  }

  if (mur->parsed()) {
    const auto trunc = parse_trunc(m_trunc);
    const auto grid = family::geometric_grid(m_grid, m_xmin, m_xmax);
    const auto primes = arith::sieve_primes(static_cast<int64_t>(m_xmax) + 2);

    if (m_kind == "ec") {
      if (m_curves.empty() || m_zeros.empty())
        throw DomainError("murmurate ec needs --curves and --zeros");
      const auto corpus = io::ingest_curves(m_curves);
      for (const auto& w : corpus.warnings)
        std::fprintf(stderr, "warning: %s\n", w.c_str());

      family::EllipticFamily fam;
      if (m_rank >= 0) {
        int64_t lo = m_lo, hi = m_hi;
        if (lo == 0 || hi == 0) {
          lo = INT64_MAX;
          hi = 0;
          for (const auto& E : corpus.curves) {
            lo = std::min(lo, E.conductor);
            hi = std::max(hi, E.conductor);
          }
        }
        fam = family::build_elliptic_family(corpus.curves, lo, hi,
                                            static_cast<int>(m_rank));
      } else {
        fam.id = "ec_all";
        fam.members = corpus.curves;
      }

      family::ZeroMap zmap;
      for (auto& [id, zl] : io::ingest_zeros(m_zeros)) zmap[id] = std::move(zl);
      io::emit_series(family::murmuration_series_elliptic(fam, zmap, grid, trunc, primes),
                      m_out);
      return 0;
    }

    dirichlet::CharacterFamily fam;
    if (m_kind == "kronecker") {
      if (m_lo == 0 || m_hi == 0) throw DomainError("murmurate kronecker needs --lo/--hi");
      fam = family::build_kronecker_family(m_lo, m_hi);
    } else if (m_kind == "odd") {
      if (m_modulus == 0 || m_count == 0)
        throw DomainError("murmurate odd needs --modulus and --count");
      fam = dirichlet::build_odd_family(m_modulus, m_count, m_seed);
    } else {
      throw DomainError("murmurate: --kind must be ec, kronecker or odd");
    }

    family::ZeroMap zmap;
    if (!m_zeros.empty()) {
      for (auto& [id, zl] : io::ingest_zeros(m_zeros)) zmap[id] = std::move(zl);
    } else {
      if (m_height <= 0.0)
        throw DomainError("murmurate: character families need --zeros or --height");
      for (auto& [id, zl] : compute_zeros(fam.members, m_height, 0.0))
        zmap[id] = std::move(zl);
    }
    io::emit_series(family::murmuration_series_dirichlet(fam, zmap, grid, trunc,
                                                         m_include_r, primes),
                    m_out);
    return 0;
  }

  if (ver->parsed()) {
    verify::SuiteConfig cfg;
    cfg.data_dir = v_data;
    cfg.curves_file = v_curves;
    cfg.zeros_file = v_zeros;
    cfg.cli_path = std::filesystem::canonical("/proc/self/exe").string();
    int failures = 0;
    for (const auto& r : verify::run_suite(v_suite, cfg)) {
      std::printf("%s  %-20s %s\n", r.passed ? "PASS" : "FAIL", r.criterion.c_str(),
                  r.detail.c_str());
      std::fflush(stdout);
      if (!r.passed) ++failures;
    }
    return failures == 0 ? 0 : 3;
  }

  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const murmur::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.kind()) {
      case murmur::ErrorKind::usage:
        return 1;
      case murmur::ErrorKind::data:
        return 2;
      case murmur::ErrorKind::numeric:
        return 3;
    }
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
