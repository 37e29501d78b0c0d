#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vqsearch {

/// One categorical key's values, indexed by strictly increasing years.
/// Years without a value are simply absent.
struct Series {
  std::string key;
  std::vector<int> years;
  Eigen::VectorXd values;

  std::size_t size() const noexcept { return years.size(); }
  /// Positions [first, last) of the points with year in [from, to].
  std::pair<Eigen::Index, Eigen::Index> span(int from, int to) const;
};

struct Dataset {
  std::string name;
  std::map<std::string, Series> series;  // by lowercased key

  const Series* find(std::string_view key) const;
};

class DatasetCollection {
 public:
  DatasetCollection() = default;
  DatasetCollection(std::string id, std::vector<Dataset> datasets);

  /// Manifest: {"id": ..., "datasets": {"name": "file.csv", ...}}. CSV paths
  /// are relative to the manifest.
  static DatasetCollection load(const std::filesystem::path& manifest);

  const std::string& id() const noexcept { return id_; }
  const std::map<std::string, Dataset>& datasets() const noexcept { return datasets_; }

  /// Case-insensitive lookup; nullptr when absent.
  const Dataset* find(std::string_view name) const;
  const Series* find(std::string_view name, std::string_view key) const;

  /// Throws NotFoundError naming the missing dataset or key.
  const Dataset& dataset(std::string_view name) const;
  const Series& series(std::string_view name, std::string_view key) const;

  /// Distinct keys over all datasets, in display form, sorted.
  std::vector<std::string> keys() const;
  std::size_t series_count() const;

 private:
  std::string id_;
  std::map<std::string, Dataset> datasets_;  // by lowercased name
};

/// Wide CSV: header `key,<year>,<year>,...`, one row per key, empty cells for
/// missing values. `source` labels error messages.
Dataset parse_dataset_csv(std::string_view name, std::string_view text,
                          const std::string& source);

struct YearRange {
  int from;
  int to;

  friend auto operator<=>(const YearRange&, const YearRange&) = default;
};

enum class WeightProfile { uniform, gaussian };

std::string_view to_string(WeightProfile p) noexcept;
/// Throws std::invalid_argument for names other than uniform|gaussian.
WeightProfile parse_weight_profile(std::string_view name);

/// A visual selection: datasets x keys x year ranges.
struct Selection {
  std::vector<std::string> dataset_names;
  std::vector<std::string> keys;
  std::vector<YearRange> year_ranges;
  WeightProfile profile = WeightProfile::uniform;

  /// Throws std::invalid_argument for empty lists or reversed ranges and
  /// NotFoundError for names or keys missing from the collection.
  void validate(const DatasetCollection& collection) const;
};

/// Values of the points whose year lies in [from, to], in year order.
/// Throws NotFoundError for unknown name or key.
Eigen::VectorXd slice(const DatasetCollection& collection, std::string_view name,
                      std::string_view key, int from, int to);

struct GazetteerEntry {
  std::string name;  // normalized
  std::vector<std::string> synonyms;
  std::optional<std::string> region;
  double region_weight = 0.5;
};

class Gazetteer {
 public:
  Gazetteer() = default;
  explicit Gazetteer(std::vector<GazetteerEntry> entries);

  /// JSON object: name -> {"synonyms": [...], "region": "...",
  /// "region_weight": 0.5}.
  static Gazetteer load(const std::filesystem::path& path);

  /// By name or synonym, case-insensitive.
  const GazetteerEntry* find(std::string_view name) const;
  /// Up to `limit` entry names closest to `name` by edit distance.
  std::vector<std::string> near_matches(std::string_view name,
                                        std::size_t limit = 3) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<GazetteerEntry> entries_;
  std::map<std::string, std::size_t> by_name_;
  std::map<std::string, std::size_t> by_synonym_;
};

struct Document {
  std::string id;
  std::string title;
  std::string body;
  std::optional<std::string> url;
};

/// JSONL, one {"id", "title", "body", "url"} object per line. id and body are
/// required; ids must be unique.
std::vector<Document> load_corpus(const std::filesystem::path& path);
std::vector<Document> parse_corpus(std::string_view text, const std::string& source);

}  // namespace vqsearch
