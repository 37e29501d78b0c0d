// Command-line front end: convert, query, suggest, stability, index, serve.

#include <CLI11.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "vqsearch/config.hpp"
#include "vqsearch/errors.hpp"
#include "vqsearch/pipeline.hpp"
#include "vqsearch/service.hpp"
#include "vqsearch/stability.hpp"

using namespace vqsearch;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SelectionFlags {
  std::vector<std::string> datasets;
  std::vector<std::string> keys;
  int from = 0;
  int to = 0;
  std::string profile;

  void add(CLI::App* cmd) {
    cmd->add_option("--dataset", datasets, "Dataset name (repeatable)")->required();
    cmd->add_option("--key", keys, "Categorical key (repeatable)")->required();
    cmd->add_option("--from", from, "First year")->required();
    cmd->add_option("--to", to, "Last year")->required();
    cmd->add_option("--profile", profile, "Year weights")
        ->check(CLI::IsMember({"uniform", "gaussian"}));
  }

  Selection build(const Engine& engine) const {
    if (from > to) {
      throw UsageError("--from " + std::to_string(from) + " is after --to " + std::to_string(to));
    }
    return {datasets, keys, {{from, to}},
            profile.empty() ? engine.config().profile : parse_weight_profile(profile)};
  }
};

json ranking_json(const Ranking& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back({{"nominal", e.nominal}, {"score", e.score}});
  return {{"kind", to_string(r.kind)}, {"entries", entries}};
}

Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compile time-series selections into search queries"};
  app.require_subcommand(1);
  std::string config_flag;
  app.add_option("--config", config_flag, "Config file (default $Q4EDA_CONFIG)");

  SelectionFlags sel;
  std::string format = "es";
  auto* convert = app.add_subcommand("convert", "Print the query for a selection");
  sel.add(convert);
  convert->add_option("--format", format, "Output dialect")
      ->check(CLI::IsMember({"inner", "es"}));

  std::size_t top_k = 0;
  std::string backend_name;
  auto* query = app.add_subcommand("query", "Retrieve documents as JSON lines");
  sel.add(query);
  query->add_option("--top-k", top_k)->check(CLI::PositiveNumber);
  query->add_option("--backend", backend_name)->check(CLI::IsMember({"local", "es"}));

  std::string mode = "direct";
  std::string method = "pearson";
  auto* suggest = app.add_subcommand("suggest", "Print suggestion rankings as JSON");
  sel.add(suggest);
  suggest->add_option("--top-k", top_k)->check(CLI::PositiveNumber);
  suggest->add_option("--backend", backend_name)->check(CLI::IsMember({"local", "es"}));
  suggest->add_option("--mode", mode)->check(CLI::IsMember({"direct", "indirect", "nlp"}));
  suggest->add_option("--method", method)->check(CLI::IsMember({"pearson", "dtw"}));

  StabilityConfig sc;
  std::string out_path;
  bool table = false;
  std::string stab_profile;
  auto* stab = app.add_subcommand("stability", "Run the stability evaluation");
  stab->add_option("--out", out_path, "Write the JSON report here");
  stab->add_flag("--table", table, "Print an aligned text table to stdout");
  stab->add_option("--top-k", sc.top_k)->check(CLI::PositiveNumber);
  stab->add_option("--window", sc.window)->check(CLI::PositiveNumber);
  stab->add_option("--patterns", sc.patterns_per_series)->check(CLI::PositiveNumber);
  stab->add_option("--profile", stab_profile)->check(CLI::IsMember({"uniform", "gaussian"}));
  stab->add_option("--backend", backend_name)->check(CLI::IsMember({"local", "es"}));

  std::string corpus_path;
  auto* index = app.add_subcommand("index", "Build the local index and print its size");
  index->add_option("--corpus", corpus_path, "JSONL corpus (default from config)");

  std::string bind;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--bind", bind, "host:port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    Config config = Config::load(resolve_config_path(
        config_flag.empty() ? std::nullopt : std::optional<std::string>(config_flag)));

    if (*index) {
      if (!corpus_path.empty()) config.corpus = corpus_path;
      const Index idx = Index::build(load_corpus(config.corpus), load_tokenizer(config));
      std::cout << idx.doc_count() << " documents, " << idx.term_count() << " terms\n";
      return 0;
    }
    if (*stab && (sc.window % 2 == 0)) throw UsageError("--window must be odd");
    if ((*convert || *query || *suggest) && sel.from > sel.to) {
      throw UsageError("--from " + std::to_string(sel.from) + " is after --to " +
                       std::to_string(sel.to));
    }

    const auto engine = load_engine(config);

    if (*convert) {
      const Conversion c = engine->convert(sel.build(*engine));
      std::cout << (format == "inner" ? c.ir_text : c.es_query) << '\n';
      return 0;
    }
    if (*query || *suggest) {
      const auto backend = make_backend(config, *engine, backend_name);
      QueryOptions opts;
      opts.top_k = top_k ? top_k : config.top_k;
      opts.text_mode = parse_text_mode(mode);
      opts.pattern_method = parse_pattern_method(method);
      const QueryResult r = engine->query(sel.build(*engine), *backend, opts);
      if (*query) {
        for (const auto& hit : r.documents) {
          std::cout << json{{"doc_id", hit.doc_id}, {"score", hit.score},
                            {"snippet", hit.snippet}}.dump()
                    << '\n';
        }
        return 0;
      }
      json docs = json::array();
      for (const auto& d : r.per_document) {
        docs.push_back({{"doc_id", d.doc_id},
                        {"datasets", ranking_json(d.datasets)},
                        {"keys", ranking_json(d.keys)}});
      }
      std::cout << json{{"pattern_suggestions",
                         {{"keys", ranking_json(r.pattern_keys)},
                          {"datasets", ranking_json(r.pattern_datasets)}}},
                        {"per_document_suggestions", docs}}.dump()
                << '\n';
      return 0;
    }
    if (*stab) {
      sc.profile = stab_profile.empty() ? engine->config().profile
                                        : parse_weight_profile(stab_profile);
      const auto backend = make_backend(config, *engine, backend_name);
      const StabilityReport report = run_stability(*engine, *backend, sc);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw DataError("cannot write " + out_path);
        out << report.to_json() << '\n';
      }
      if (table) {
        std::cout << report.to_table();
      } else if (out_path.empty()) {
        std::cout << report.to_json() << '\n';
      }
      return 0;
    }
    if (*serve) {
      auto [host, port] = bind.empty() ? std::pair{config.host, config.port} : parse_bind(bind);
      Service service(*engine, config);
      const int bound = service.bind(host, port);
      if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << host << ':' << bound << std::endl;
      service.run();
      g_service = nullptr;
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
