#include "vqsearch/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vqsearch/errors.hpp"
#include "vqsearch/text.hpp"

namespace vqsearch {
namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Comma-separated fields; double quotes group fields containing commas.
std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(trim(cur));
  return fields;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                         prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace

std::pair<Eigen::Index, Eigen::Index> Series::span(int from, int to) const {
  const auto lo = std::lower_bound(years.begin(), years.end(), from);
  const auto hi = std::upper_bound(years.begin(), years.end(), to);
  if (hi <= lo) {
    const auto at = static_cast<Eigen::Index>(lo - years.begin());
    return {at, at};
  }
  return {static_cast<Eigen::Index>(lo - years.begin()),
          static_cast<Eigen::Index>(hi - years.begin())};
}

const Series* Dataset::find(std::string_view key) const {
  auto it = series.find(to_lower(key));
  return it == series.end() ? nullptr : &it->second;
}

DatasetCollection::DatasetCollection(std::string id, std::vector<Dataset> datasets)
    : id_(std::move(id)) {
  for (auto& d : datasets) {
    std::string k = to_lower(d.name);
    if (!datasets_.emplace(k, std::move(d)).second) {
      throw DataError("duplicate dataset name '" + k + "'");
    }
  }
}

Dataset parse_dataset_csv(std::string_view name, std::string_view text,
                          const std::string& source) {
  Dataset ds;
  ds.name = std::string(name);
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::vector<int> header_years;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    const std::string where = source + ":" + std::to_string(lineno);
    if (!have_header) {
      for (std::size_t i = 1; i < fields.size(); ++i) {
        int y = 0;
        if (!parse_number(fields[i], y)) {
          throw DataError(where + ": non-numeric year header '" + fields[i] + "'");
        }
        if (!header_years.empty() && y <= header_years.back()) {
          throw DataError(where + ": year columns must increase");
        }
        header_years.push_back(y);
      }
      have_header = true;
      continue;
    }
    if (fields.size() > header_years.size() + 1) {
      throw DataError(where + ": more values than year columns");
    }
    Series s;
    s.key = fields[0];
    if (s.key.empty()) throw DataError(where + ": empty key");
    std::vector<double> values;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].empty()) continue;
      double v = 0.0;
      if (!parse_number(fields[i], v) || !std::isfinite(v)) {
        throw DataError(where + ": non-numeric value '" + fields[i] + "'");
      }
      s.years.push_back(header_years[i - 1]);
      values.push_back(v);
    }
    s.values = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                 static_cast<Eigen::Index>(values.size()));
    const std::string k = to_lower(s.key);
    if (!ds.series.emplace(k, std::move(s)).second) {
      throw DataError(where + ": duplicate key '" + fields[0] + "'");
    }
  }
  if (!have_header) throw DataError(source + ": missing header row");
  return ds;
}

DatasetCollection DatasetCollection::load(const std::filesystem::path& manifest) {
  json doc;
  try {
    doc = json::parse(read_file(manifest));
  } catch (const json::parse_error& e) {
    throw DataError(manifest.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("datasets") || !doc["datasets"].is_object()) {
    throw DataError(manifest.string() + ": expected {\"id\", \"datasets\": {...}}");
  }
  const std::string id = doc.value("id", manifest.stem().string());
  const auto base = manifest.parent_path();
  std::vector<Dataset> datasets;
  for (const auto& [name, rel] : doc["datasets"].items()) {
    if (!rel.is_string()) {
      throw DataError(manifest.string() + ": path for '" + name + "' must be a string");
    }
    const auto path = base / rel.get<std::string>();
    datasets.push_back(parse_dataset_csv(name, read_file(path), path.string()));
  }
  return DatasetCollection(id, std::move(datasets));
}

const Dataset* DatasetCollection::find(std::string_view name) const {
  auto it = datasets_.find(to_lower(name));
  return it == datasets_.end() ? nullptr : &it->second;
}

const Series* DatasetCollection::find(std::string_view name,
                                      std::string_view key) const {
  const Dataset* d = find(name);
  return d ? d->find(key) : nullptr;
}

const Dataset& DatasetCollection::dataset(std::string_view name) const {
  const Dataset* d = find(name);
  if (!d) throw NotFoundError("unknown dataset '" + std::string(name) + "'");
  return *d;
}

const Series& DatasetCollection::series(std::string_view name,
                                        std::string_view key) const {
  const Series* s = dataset(name).find(key);
  if (!s) {
    throw NotFoundError("unknown key '" + std::string(key) + "' in dataset '" +
                        std::string(name) + "'");
  }
  return *s;
}

std::vector<std::string> DatasetCollection::keys() const {
  std::map<std::string, std::string> seen;
  for (const auto& [_, d] : datasets_) {
    for (const auto& [k, s] : d.series) seen.emplace(k, s.key);
  }
  std::vector<std::string> out;
  out.reserve(seen.size());
  for (auto& [_, display] : seen) out.push_back(display);
  return out;
}

std::size_t DatasetCollection::series_count() const {
  std::size_t n = 0;
  for (const auto& [_, d] : datasets_) n += d.series.size();
  return n;
}

Eigen::VectorXd slice(const DatasetCollection& collection, std::string_view name,
                      std::string_view key, int from, int to) {
  const Series& s = collection.series(name, key);
  const auto [first, last] = s.span(from, to);
  return s.values.segment(first, last - first);
}

std::string_view to_string(WeightProfile p) noexcept {
  return p == WeightProfile::gaussian ? "gaussian" : "uniform";
}

WeightProfile parse_weight_profile(std::string_view name) {
  if (name == "uniform") return WeightProfile::uniform;
  if (name == "gaussian") return WeightProfile::gaussian;
  throw std::invalid_argument("unknown weight profile '" + std::string(name) + "'");
}

void Selection::validate(const DatasetCollection& collection) const {
  if (dataset_names.empty()) throw std::invalid_argument("selection has no dataset");
  if (keys.empty()) throw std::invalid_argument("selection has no key");
  if (year_ranges.empty()) throw std::invalid_argument("selection has no year range");
  for (const auto& r : year_ranges) {
    if (r.from > r.to) {
      throw std::invalid_argument("year range " + std::to_string(r.from) + "-" +
                                  std::to_string(r.to) + " is reversed");
    }
  }
  for (const auto& n : dataset_names) {
    for (const auto& k : keys) collection.series(n, k);
  }
}

// ---------------------------------------------------------------------------

Gazetteer::Gazetteer(std::vector<GazetteerEntry> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    auto& e = entries_[i];
    e.name = normalize_phrase(e.name);
    for (auto& s : e.synonyms) s = normalize_phrase(s);
    if (e.region) e.region = normalize_phrase(*e.region);
    if (!by_name_.emplace(e.name, i).second) {
      throw DataError("duplicate gazetteer entry '" + e.name + "'");
    }
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    for (const auto& s : entries_[i].synonyms) {
      if (!by_name_.count(s)) by_synonym_.emplace(s, i);
    }
  }
}

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw DataError(path.string() + ": expected a JSON object");
  std::vector<GazetteerEntry> entries;
  for (const auto& [name, v] : doc.items()) {
    GazetteerEntry e;
    e.name = name;
    try {
      if (v.contains("synonyms")) e.synonyms = v.at("synonyms").get<std::vector<std::string>>();
      if (v.contains("region") && !v.at("region").is_null()) {
        e.region = v.at("region").get<std::string>();
      }
      e.region_weight = v.value("region_weight", 0.5);
    } catch (const json::exception& ex) {
      throw DataError(path.string() + ": entry '" + name + "': " + ex.what());
    }
    if (!(e.region_weight > 0.0)) {
      throw DataError(path.string() + ": entry '" + name + "': region_weight must be positive");
    }
    entries.push_back(std::move(e));
  }
  return Gazetteer(std::move(entries));
}

const GazetteerEntry* Gazetteer::find(std::string_view name) const {
  const std::string key = normalize_phrase(name);
  if (auto it = by_name_.find(key); it != by_name_.end()) return &entries_[it->second];
  if (auto it = by_synonym_.find(key); it != by_synonym_.end()) {
    return &entries_[it->second];
  }
  return nullptr;
}

std::vector<std::string> Gazetteer::near_matches(std::string_view name,
                                                 std::size_t limit) const {
  const std::string key = normalize_phrase(name);
  std::vector<std::pair<std::size_t, std::string>> scored;
  for (const auto& e : entries_) scored.emplace_back(edit_distance(key, e.name), e.name);
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && i < limit; ++i) {
    out.push_back(scored[i].second);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Document> parse_corpus(std::string_view text, const std::string& source) {
  std::vector<Document> docs;
  std::set<std::string> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(where + ": " + e.what());
    }
    if (!obj.is_object() || !obj.contains("id") || !obj.contains("body")) {
      throw DataError(where + ": document needs \"id\" and \"body\"");
    }
    Document d;
    try {
      d.id = obj["id"].is_string() ? obj["id"].get<std::string>() : obj["id"].dump();
      d.body = obj["body"].get<std::string>();
      d.title = obj.value("title", std::string());
      if (obj.contains("url") && obj["url"].is_string()) d.url = obj["url"].get<std::string>();
    } catch (const json::exception& e) {
      throw DataError(where + ": " + e.what());
    }
    if (!ids.insert(d.id).second) throw DataError(where + ": duplicate document id '" + d.id + "'");
    docs.push_back(std::move(d));
  }
  return docs;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
  return parse_corpus(read_file(path), path.string());
}

}  // namespace vqsearch
