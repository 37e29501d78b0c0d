#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "vqsearch/converters.hpp"
#include "vqsearch/search.hpp"

namespace vqsearch {

class Engine;

/// Resource paths, backend choice and defaults shared by the CLI and the
/// service. Relative paths in the file resolve against the file's directory.
struct Config {
  std::filesystem::path manifest;
  std::filesystem::path corpus;
  std::filesystem::path embeddings;
  std::filesystem::path gazetteer;
  std::filesystem::path antonyms;         // optional
  std::filesystem::path stopwords;        // optional, built-in list otherwise
  std::filesystem::path lemma_exceptions; // optional
  std::string backend = "local";          // local | es
  EsConfig es;
  ConverterConfig converter;
  std::size_t top_k = 10;
  std::string host = "127.0.0.1";
  int port = 8080;

  /// Throws DataError on unreadable or malformed files and on bad values.
  static Config load(const std::filesystem::path& path);
  static Config parse(std::string_view text, const std::filesystem::path& base_dir,
                      const std::string& source);
};

/// --config flag if given, then $Q4EDA_CONFIG, then the bundled default.
std::filesystem::path resolve_config_path(const std::optional<std::string>& flag);

/// "host:port" or ":port". Throws std::invalid_argument.
std::pair<std::string, int> parse_bind(std::string_view bind);

Tokenizer load_tokenizer(const Config& config);
std::unique_ptr<Engine> load_engine(const Config& config);
std::unique_ptr<SearchBackend> make_backend(const Config& config, const Engine& engine,
                                            std::string_view name = {});

}  // namespace vqsearch
