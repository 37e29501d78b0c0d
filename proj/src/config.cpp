#include "vqsearch/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "vqsearch/errors.hpp"
#include "vqsearch/pipeline.hpp"

#ifndef VQSEARCH_DATA_DIR
#define VQSEARCH_DATA_DIR "data"
#endif

namespace vqsearch {

using nlohmann::json;

std::pair<std::string, int> parse_bind(std::string_view bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("bind address '" + std::string(bind) + "' needs host:port");
  }
  std::string host(bind.substr(0, colon));
  if (host.empty()) host = "127.0.0.1";
  const auto port_text = bind.substr(colon + 1);
  int port = 0;
  auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc() || ptr != port_text.data() + port_text.size() || port < 0 ||
      port > 65535) {
    throw std::invalid_argument("bad port in bind address '" + std::string(bind) + "'");
  }
  return {host, port};
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str(), path.parent_path(), path.string());
}

Config Config::parse(std::string_view text, const std::filesystem::path& base_dir,
                     const std::string& source) {
  Config c;
  try {
    const json j = json::parse(text);
    auto path_of = [&](const json& paths, const char* name, bool required) {
      if (!paths.contains(name)) {
        if (required) throw DataError(source + ": paths." + name + " is required");
        return std::filesystem::path();
      }
      std::filesystem::path p = paths.at(name).get<std::string>();
      return p.is_absolute() ? p : base_dir / p;
    };
    const json& paths = j.at("paths");
    c.manifest = path_of(paths, "manifest", true);
    c.corpus = path_of(paths, "corpus", true);
    c.embeddings = path_of(paths, "embeddings", true);
    c.gazetteer = path_of(paths, "gazetteer", true);
    c.antonyms = path_of(paths, "antonyms", false);
    c.stopwords = path_of(paths, "stopwords", false);
    c.lemma_exceptions = path_of(paths, "lemma_exceptions", false);

    c.backend = j.value("backend", c.backend);
    if (c.backend != "local" && c.backend != "es") {
      throw DataError(source + ": backend must be local or es");
    }
    if (j.contains("es")) {
      const json& es = j["es"];
      c.es.url = es.value("url", c.es.url);
      c.es.index = es.value("index", c.es.index);
      c.es.timeout_ms = es.value("timeout_ms", c.es.timeout_ms);
    }
    if (j.contains("converter")) {
      const json& cv = j["converter"];
      ConverterConfig& cc = c.converter;
      cc.ma_window = cv.value("ma_window", cc.ma_window);
      cc.lambda1 = cv.value("lambda1", cc.lambda1);
      cc.lambda2 = cv.value("lambda2", cc.lambda2);
      cc.neighbor_k = cv.value("neighbor_k", cc.neighbor_k);
      cc.width_rel_height = cv.value("width_rel_height", cc.width_rel_height);
      if (cv.contains("profile")) {
        cc.profile = parse_weight_profile(cv["profile"].get<std::string>());
      }
      cc.validate();
    }
    c.top_k = j.value("top_k", c.top_k);
    if (c.top_k == 0) throw DataError(source + ": top_k must be >= 1");
    if (j.contains("bind")) std::tie(c.host, c.port) = parse_bind(j["bind"].get<std::string>());
  } catch (const json::exception& e) {
    throw DataError(source + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(source + ": " + e.what());
  }
  return c;
}

std::filesystem::path resolve_config_path(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("Q4EDA_CONFIG"); env && *env) return env;
  return std::filesystem::path(VQSEARCH_DATA_DIR) / "config.json";
}

Tokenizer load_tokenizer(const Config& config) {
  if (config.stopwords.empty() && config.lemma_exceptions.empty()) return Tokenizer();
  return Tokenizer(config.stopwords.empty() ? Tokenizer::default_stopwords()
                                            : load_word_list(config.stopwords),
                   config.lemma_exceptions.empty() ? Tokenizer::default_exceptions()
                                                   : load_word_list(config.lemma_exceptions));
}

std::unique_ptr<Engine> load_engine(const Config& config) {
  return std::make_unique<Engine>(
      DatasetCollection::load(config.manifest), Gazetteer::load(config.gazetteer),
      EmbeddingModel::load(config.embeddings),
      config.antonyms.empty() ? AntonymLexicon() : AntonymLexicon::load(config.antonyms),
      Index::build(load_corpus(config.corpus), load_tokenizer(config)), config.converter);
}

std::unique_ptr<SearchBackend> make_backend(const Config& config, const Engine& engine,
                                            std::string_view name) {
  const std::string_view which = name.empty() ? std::string_view(config.backend) : name;
  if (which == "local") return std::make_unique<LocalBackend>(engine.index());
  if (which == "es") return std::make_unique<ElasticsearchBackend>(config.es);
  throw std::invalid_argument("unknown backend '" + std::string(which) +
                              "' (expected local|es)");
}

}  // namespace vqsearch
