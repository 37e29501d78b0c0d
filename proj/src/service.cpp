#include "vqsearch/service.hpp"

#include "vqsearch/pipeline.hpp"  // Eigen ahead of httplib: resolv.h defines _res

#include <httplib.h>

#include <atomic>
#include <json.hpp>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "vqsearch/errors.hpp"
#include "vqsearch/pipeline.hpp"
#include "vqsearch/stability.hpp"

#ifndef VQSEARCH_VERSION
#define VQSEARCH_VERSION "0.0.0"
#endif

namespace vqsearch {

using nlohmann::json;

namespace {

struct HttpError {
  int status;
  std::string code;
  std::string message;
  std::string detail;
};

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const HttpError& e) {
  send_json(res, e.status, {{"code", e.code}, {"message", e.message}, {"detail", e.detail}});
}

json parse_body(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw HttpError{400, "bad_request", "request body must be a JSON object", ""};
  }
  return body;
}

json ranking_json(const Ranking& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back({{"nominal", e.nominal}, {"score", e.score}});
  return {{"kind", to_string(r.kind)}, {"entries", entries}};
}

Selection parse_selection(const json& body, const Engine& engine) {
  if (body.contains("collection") &&
      body["collection"].get<std::string>() != engine.collection().id()) {
    throw NotFoundError("unknown collection '" + body["collection"].get<std::string>() + "'");
  }
  Selection sel;
  sel.dataset_names = body.at("dataset_names").get<std::vector<std::string>>();
  sel.keys = body.at("keys").get<std::vector<std::string>>();
  for (const json& r : body.at("year_ranges")) {
    if (r.is_array() && r.size() == 2) {
      sel.year_ranges.push_back({r[0].get<int>(), r[1].get<int>()});
    } else {
      sel.year_ranges.push_back({r.at("from").get<int>(), r.at("to").get<int>()});
    }
  }
  sel.profile = body.contains("profile")
                    ? parse_weight_profile(body["profile"].get<std::string>())
                    : engine.config().profile;
  return sel;
}

json conversion_json(const Conversion& c) {
  return {{"ir_text", c.ir_text},
          {"es_query", c.es_query},
          {"trend", to_string(c.finding.trend)},
          {"pattern", to_string(c.finding.pattern)},
          {"pf", c.finding.factor}};
}

// Runs a handler body and maps exceptions onto the error payload. Missing
// resources are 400 while validating a selection and 404 while browsing.
template <typename F>
void guarded(httplib::Response& res, int not_found_status, F&& body) {
  try {
    body();
  } catch (const HttpError& e) {
    send_error(res, e);
  } catch (const NotFoundError& e) {
    send_error(res, {not_found_status, not_found_status == 404 ? "not_found" : "unknown_name",
                     e.what(), ""});
  } catch (const EmptySliceError& e) {
    send_error(res, {422, "empty_slice", e.what(), ""});
  } catch (const BackendError& e) {
    send_error(res, {502, "backend_error", e.what(), "status " + std::to_string(e.status())});
  } catch (const ParseError& e) {
    send_error(res, {400, "bad_request", e.what(), "position " + std::to_string(e.position())});
  } catch (const json::exception& e) {
    send_error(res, {400, "bad_request", "malformed request", e.what()});
  } catch (const std::invalid_argument& e) {
    send_error(res, {400, "bad_request", e.what(), ""});
  } catch (const std::exception& e) {
    send_error(res, {500, "internal", e.what(), ""});
  }
}

}  // namespace

struct Service::Impl {
  struct Job {
    std::string status = "running";
    std::string result;  // report JSON when done
    std::string error;
  };

  const Engine& engine;
  Config config;
  httplib::Server server;
  std::mutex jobs_mutex;
  std::map<std::string, Job> jobs;
  std::vector<std::thread> workers;
  std::atomic<std::uint64_t> next_job{1};

  Impl(const Engine& e, Config c) : engine(e), config(std::move(c)) { routes(); }

  ~Impl() {
    server.stop();
    for (auto& t : workers) t.join();
  }

  void routes() {
    server.Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
      const auto& c = engine.collection();
      send_json(res, 200,
                {{"status", "ok"},
                 {"version", VQSEARCH_VERSION},
                 {"collection", c.id()},
                 {"datasets", c.datasets().size()},
                 {"series", c.series_count()},
                 {"documents", engine.index().doc_count()},
                 {"terms", engine.index().term_count()},
                 {"vocabulary", engine.model().size()},
                 {"gazetteer", engine.gazetteer().size()},
                 {"antonyms", engine.lexicon().size()}});
    });

    server.Post("/v1/convert", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, 400, [&] {
        const Selection sel = parse_selection(parse_body(req), engine);
        send_json(res, 200, conversion_json(engine.convert(sel)));
      });
    });

    server.Post("/v1/query", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, 400, [&] { query(req, res); });
    });

    server.Get("/v1/collections", [this](const httplib::Request&, httplib::Response& res) {
      const auto& c = engine.collection();
      send_json(res, 200,
                json::array({{{"id", c.id()}, {"datasets", c.datasets().size()}}}));
    });

    server.Get(R"(/v1/collections/([^/]+)/datasets)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, 404, [&] {
                   const auto& c = engine.collection();
                   if (req.matches[1] != c.id()) {
                     throw NotFoundError("unknown collection '" + req.matches[1].str() + "'");
                   }
                   json out = json::array();
                   for (const auto& [_, ds] : c.datasets()) {
                     json keys = json::array();
                     for (const auto& [__, s] : ds.series) keys.push_back(s.key);
                     out.push_back({{"name", ds.name}, {"keys", keys}});
                   }
                   send_json(res, 200, out);
                 });
               });

    server.Get("/v1/series", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, 404, [&] {
        if (!req.has_param("dataset") || !req.has_param("key")) {
          throw HttpError{400, "bad_request", "dataset and key parameters are required", ""};
        }
        const Series& s =
            engine.collection().series(req.get_param_value("dataset"), req.get_param_value("key"));
        send_json(res, 200,
                  {{"dataset", engine.collection().dataset(req.get_param_value("dataset")).name},
                   {"key", s.key},
                   {"years", s.years},
                   {"values", std::vector<double>(s.values.begin(), s.values.end())}});
      });
    });

    server.Post("/v1/stability", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, 400, [&] { start_stability(req, res); });
    });

    server.Get(R"(/v1/stability/([^/]+))",
               [this](const httplib::Request& req, httplib::Response& res) {
                 std::lock_guard lock(jobs_mutex);
                 auto it = jobs.find(req.matches[1]);
                 if (it == jobs.end()) {
                   send_error(res, {404, "not_found",
                                    "unknown job '" + req.matches[1].str() + "'", ""});
                   return;
                 }
                 json out = {{"job", it->first}, {"status", it->second.status}};
                 if (it->second.status == "done") out["result"] = json::parse(it->second.result);
                 if (it->second.status == "failed") out["error"] = it->second.error;
                 send_json(res, 200, out);
               });
  }

  void query(const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const Selection sel = parse_selection(body, engine);
    QueryOptions opts;
    opts.top_k = body.value("top_k", config.top_k);
    if (opts.top_k == 0) throw std::invalid_argument("top_k must be >= 1");
    opts.text_mode = parse_text_mode(body.value("text_mode", std::string("direct")));
    opts.pattern_method = parse_pattern_method(body.value("pattern_method", std::string("pearson")));
    const auto backend = make_backend(config, engine, body.value("backend", config.backend));
    const QueryResult r = engine.query(sel, *backend, opts);

    json docs = json::array();
    for (const auto& hit : r.documents) {
      json d = {{"doc_id", hit.doc_id}, {"score", hit.score}, {"snippet", hit.snippet}};
      for (std::size_t i = 0; i < engine.index().doc_count(); ++i) {
        const Document& doc = engine.index().document(i);
        if (doc.id != hit.doc_id) continue;
        d["title"] = doc.title;
        if (doc.url) d["url"] = *doc.url;
        break;
      }
      docs.push_back(std::move(d));
    }
    json per_doc = json::array();
    for (const auto& s : r.per_document) {
      per_doc.push_back({{"doc_id", s.doc_id},
                         {"datasets", ranking_json(s.datasets)},
                         {"keys", ranking_json(s.keys)}});
    }
    json out = conversion_json(r.conversion);
    out["documents"] = docs;
    out["per_document_suggestions"] = per_doc;
    out["pattern_suggestions"] = {{"keys", ranking_json(r.pattern_keys)},
                                  {"datasets", ranking_json(r.pattern_datasets)}};
    send_json(res, 200, out);
  }

  void start_stability(const httplib::Request& req, httplib::Response& res) {
    const json body = req.body.empty() ? json::object() : parse_body(req);
    StabilityConfig sc;
    sc.top_k = body.value("top_k", sc.top_k);
    sc.window = body.value("window", sc.window);
    sc.patterns_per_series = body.value("patterns_per_series", sc.patterns_per_series);
    sc.profile = body.contains("profile")
                     ? parse_weight_profile(body["profile"].get<std::string>())
                     : engine.config().profile;
    if (sc.top_k == 0) throw std::invalid_argument("top_k must be >= 1");
    if (sc.window < 1 || sc.window % 2 == 0) {
      throw std::invalid_argument("window must be odd and positive");
    }
    std::shared_ptr<SearchBackend> backend =
        make_backend(config, engine, body.value("backend", config.backend));

    const std::string id = "job-" + std::to_string(next_job++);
    {
      std::lock_guard lock(jobs_mutex);
      jobs[id] = Job{};
      workers.emplace_back([this, id, sc, backend] {
        Job done;
        try {
          done.result = run_stability(engine, *backend, sc).to_json();
          done.status = "done";
        } catch (const std::exception& e) {
          done.status = "failed";
          done.error = e.what();
        }
        std::lock_guard inner(jobs_mutex);
        jobs[id] = std::move(done);
      });
    }
    send_json(res, 202, {{"job", id}, {"status", "running"}});
  }
};

Service::Service(const Engine& engine, Config config)
    : impl_(std::make_unique<Impl>(engine, std::move(config))) {}

Service::~Service() = default;

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::run() { return impl_->server.listen_after_bind(); }

void Service::stop() { impl_->server.stop(); }

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace vqsearch
