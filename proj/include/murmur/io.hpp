#pragma once

#include <map>
#include <string>
#include <vector>

#include "murmur/elliptic.hpp"
#include "murmur/errors.hpp"
#include "murmur/family.hpp"
#include "murmur/lfunc.hpp"

namespace murmur::io {

// File contracts (headers are bit-exact):
//   curves: label,a1,a2,a3,a4,a6,conductor,rank
//   zeros:  object_id,gamma          (gamma with 9 decimal places)
//   series: x,avg_lhs,avg_zero_term,black   (9 significant digits)
//   hist:   bin_lo,bin_hi,count             (9 significant digits)

struct CurveCorpus {
  std::vector<ec::EllipticCurve> curves;
  std::vector<std::string> warnings; // conductor/discriminant mismatches
};

CurveCorpus ingest_curves(const std::string& path);

std::map<std::string, lfunc::ZeroList> ingest_zeros(const std::string& path);

void persist_zeros(const std::map<std::string, lfunc::ZeroList>& zeros,
                   const std::string& path);

void emit_series(const family::MurmurationSeries& series, const std::string& path);

void emit_hist(const family::ZeroDensityHistogram& hist, const std::string& path);

// Locale-independent float formatting used by all emitters.
std::string format_general(double v, int significant_digits);
std::string format_fixed(double v, int decimals);

} // namespace murmur::io
