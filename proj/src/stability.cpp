#include "vqsearch/stability.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vqsearch/pipeline.hpp"

namespace vqsearch {

std::vector<ExtractedPattern> extract_top_patterns(const Series& series, std::size_t n,
                                                   const ConverterConfig& cfg) {
  const Eigen::Index len = series.values.size();
  if (len < 3 || n == 0) return {};

  struct Candidate {
    Eigen::Index index;
    double prominence;
    double width;
  };
  std::vector<Candidate> candidates;
  for (const Eigen::VectorXd& v : {Eigen::VectorXd(series.values), Eigen::VectorXd(-series.values)}) {
    for (const auto& p : find_peaks(v, cfg.width_rel_height)) {
      candidates.push_back({p.index, p.prominence, p.width});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    if (a.prominence != b.prominence) return a.prominence > b.prominence;
    return a.index < b.index;
  });
  if (candidates.size() > n) candidates.resize(n);

  std::vector<ExtractedPattern> out;
  for (const auto& c : candidates) {
    const auto reach = static_cast<Eigen::Index>(std::ceil(c.width));
    const Eigen::Index first = std::max<Eigen::Index>(0, c.index - reach);
    const Eigen::Index last = std::min<Eigen::Index>(len - 1, c.index + reach);
    const auto result = detect_pattern(series.values.segment(first, last - first + 1), cfg);
    out.push_back({first, last,
                   {series.years[static_cast<std::size_t>(first)],
                    series.years[static_cast<std::size_t>(last)]},
                   result.pattern, c.prominence});
  }
  return out;
}

std::vector<YearRange> perturb(YearRange range, int window, YearRange bounds) {
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("perturbation window must be odd and positive");
  }
  const int h = window / 2;
  std::vector<YearRange> out{range};
  std::set<YearRange> seen{range};
  for (int ds = -h; ds <= h; ++ds) {
    for (int de = -h; de <= h; ++de) {
      const YearRange r{std::clamp(range.from + ds, bounds.from, bounds.to),
                        std::clamp(range.to + de, bounds.from, bounds.to)};
      if (r.from > r.to || !seen.insert(r).second) continue;
      out.push_back(r);
    }
  }
  return out;
}

double stability(const std::vector<std::string>& original,
                 const std::vector<std::vector<std::string>>& derived) {
  if (original.empty()) throw std::invalid_argument("stability: empty original list");
  if (derived.empty()) throw std::invalid_argument("stability: no derived lists");
  const std::set<std::string> d(original.begin(), original.end());
  double total = 0.0;
  for (const auto& list : derived) {
    const std::set<std::string> di(list.begin(), list.end());
    total += static_cast<double>(std::count_if(
        di.begin(), di.end(), [&](const std::string& id) { return d.count(id) > 0; }));
  }
  return total / (static_cast<double>(d.size()) * static_cast<double>(derived.size()));
}

StabilityReport run_stability(const Engine& engine, const SearchBackend& backend,
                              const StabilityConfig& config) {
  StabilityReport report;
  auto run = [&](const Selection& sel) -> std::optional<std::vector<std::string>> {
    ++report.query_count;
    try {
      const Conversion c = engine.convert(sel);
      std::vector<std::string> ids;
      for (const auto& hit : backend.search(c.expr, config.top_k)) ids.push_back(hit.doc_id);
      return ids;
    } catch (const std::exception&) {
      ++report.failed_queries;
      return std::nullopt;
    }
  };

  for (const auto& [_, ds] : engine.collection().datasets()) {
    for (const auto& [__, series] : ds.series) {
      if (series.size() == 0) continue;
      const YearRange bounds{series.years.front(), series.years.back()};
      for (const auto& p :
           extract_top_patterns(series, config.patterns_per_series, engine.config())) {
        const auto ranges = perturb(p.years, config.window, bounds);
        auto selection = [&](YearRange r) {
          return Selection{{ds.name}, {series.key}, {r}, config.profile};
        };
        const auto original = run(selection(ranges.front()));
        if (!original || original->empty()) {
          report.query_count += ranges.size() - 1;
          ++report.skipped_patterns;
          continue;
        }
        std::vector<std::vector<std::string>> derived;
        for (std::size_t i = 1; i < ranges.size(); ++i) {
          if (auto ids = run(selection(ranges[i]))) derived.push_back(std::move(*ids));
        }
        if (derived.empty()) {
          ++report.skipped_patterns;
          continue;
        }
        report.details.push_back({ds.name, series.key, p.years, p.pattern,
                                  stability(*original, derived), derived.size()});
      }
    }
  }

  std::map<Pattern, std::vector<double>> by_type;
  double total = 0.0;
  for (const auto& d : report.details) {
    by_type[d.pattern].push_back(d.stability);
    total += d.stability;
  }
  for (const auto& [pattern, values] : by_type) {
    PatternTypeStats s;
    s.count = values.size();
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(s.count);
    for (double v : values) s.stddev += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(s.stddev / static_cast<double>(s.count));
    report.per_pattern_type[pattern] = s;
  }
  report.pattern_count = report.details.size();
  if (report.pattern_count > 0) {
    report.overall_mean = total / static_cast<double>(report.pattern_count);
  }
  return report;
}

std::string StabilityReport::to_json() const {
  using nlohmann::json;
  json types = json::object();
  for (const auto& [pattern, s] : per_pattern_type) {
    types[std::string(to_string(pattern))] = {
        {"mean", s.mean}, {"std", s.stddev}, {"count", s.count}};
  }
  json rows = json::array();
  for (const auto& d : details) {
    rows.push_back({{"dataset", d.dataset},
                    {"key", d.key},
                    {"from", d.range.from},
                    {"to", d.range.to},
                    {"pattern", to_string(d.pattern)},
                    {"stability", d.stability},
                    {"derived", d.derived}});
  }
  const json out = {{"per_pattern_type", types},   {"overall_mean", overall_mean},
                    {"pattern_count", pattern_count}, {"query_count", query_count},
                    {"failed_queries", failed_queries},
                    {"skipped_patterns", skipped_patterns},
                    {"patterns", rows}};
  return out.dump(2);
}

std::string StabilityReport::to_table() const {
  std::ostringstream os;
  os << std::left << std::setw(10) << "pattern" << std::right << std::setw(8) << "count"
     << std::setw(10) << "mean" << std::setw(10) << "std" << '\n';
  os << std::fixed << std::setprecision(4);
  for (const auto& [pattern, s] : per_pattern_type) {
    os << std::left << std::setw(10) << to_string(pattern) << std::right << std::setw(8)
       << s.count << std::setw(10) << s.mean << std::setw(10) << s.stddev << '\n';
  }
  os << std::left << std::setw(10) << "overall" << std::right << std::setw(8)
     << pattern_count << std::setw(10) << overall_mean << '\n';
  os << "queries " << query_count << ", failed " << failed_queries << ", skipped patterns "
     << skipped_patterns << '\n';
  return os.str();
}

}  // namespace vqsearch
