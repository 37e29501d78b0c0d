#pragma once

#include <map>
#include <string>
#include <vector>

#include "vqsearch/converters.hpp"
#include "vqsearch/data.hpp"
#include "vqsearch/finding.hpp"
#include "vqsearch/search.hpp"

namespace vqsearch {

class Engine;

struct ExtractedPattern {
  Eigen::Index first;  // inclusive sample positions
  Eigen::Index last;
  YearRange years;
  Pattern pattern;
  double prominence;
};

/// Peaks of F and of -F ranked by prominence (descending, ties by position).
/// Each keeps [index - ceil(width), index + ceil(width)], clamped to the
/// series, and is classified by detect_pattern on that slice.
std::vector<ExtractedPattern> extract_top_patterns(const Series& series, std::size_t n,
                                                   const ConverterConfig& cfg);

/// The range itself, then every (from + ds, to + de) with ds, de in
/// [-window/2, window/2], clamped to `bounds`; reversed ranges and repeats
/// are dropped. Throws std::invalid_argument for an even or non-positive
/// window.
std::vector<YearRange> perturb(YearRange range, int window, YearRange bounds);

/// Mean overlap of the derived lists with `original`, normalized by
/// |original|. Throws std::invalid_argument when `original` or `derived` is
/// empty.
double stability(const std::vector<std::string>& original,
                 const std::vector<std::vector<std::string>>& derived);

struct StabilityConfig {
  std::size_t top_k = 10;
  int window = 3;
  std::size_t patterns_per_series = 6;
  WeightProfile profile = WeightProfile::uniform;
};

struct PatternStability {
  std::string dataset;
  std::string key;
  YearRange range;
  Pattern pattern;
  double stability;
  std::size_t derived;  // derived queries that contributed
};

struct PatternTypeStats {
  double mean = 0.0;
  double stddev = 0.0;  // population
  std::size_t count = 0;
};

struct StabilityReport {
  std::map<Pattern, PatternTypeStats> per_pattern_type;
  double overall_mean = 0.0;
  std::size_t pattern_count = 0;
  std::size_t query_count = 0;    // queries attempted
  std::size_t failed_queries = 0;
  std::size_t skipped_patterns = 0;  // original query failed or returned nothing
  std::vector<PatternStability> details;

  std::string to_json() const;
  std::string to_table() const;
};

/// Every series of the engine's collection: extract patterns, query the
/// original and perturbed selections, score each pattern, aggregate by type.
/// Conversion and backend failures are counted, not thrown.
StabilityReport run_stability(const Engine& engine, const SearchBackend& backend,
                              const StabilityConfig& config);

}  // namespace vqsearch
