#include "vqsearch/search.hpp"

#include <httplib.h>

#include <json.hpp>

#include "vqsearch/errors.hpp"

namespace vqsearch {

using nlohmann::json;

std::vector<DocHit> execute_es(const EsConfig& config, std::string_view query_text,
                               std::size_t top_k) {
  if (top_k == 0) throw std::invalid_argument("top_k must be >= 1");
  httplib::Client client(config.url);
  const auto timeout = std::chrono::milliseconds(config.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);

  const json body = {
      {"size", top_k},
      {"query",
       {{"simple_query_string",
         {{"query", std::string(query_text)}, {"fields", {"title", "body"}}}}}},
      {"highlight", {{"fields", {{"body", json::object()}}}}},
  };
  const std::string path = "/" + config.index + "/_search";
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) {
    throw BackendError(0, "elasticsearch at " + config.url + ": " +
                              httplib::to_string(res.error()));
  }
  json reply = json::parse(res->body, nullptr, false);
  if (res->status < 200 || res->status >= 300) {
    std::string reason = res->body;
    if (!reply.is_discarded() && reply.contains("error")) {
      const json& err = reply["error"];
      if (err.is_object() && err.contains("reason")) {
        reason = err["reason"].get<std::string>();
      } else if (err.is_string()) {
        reason = err.get<std::string>();
      }
    }
    throw BackendError(res->status, "elasticsearch returned " +
                                        std::to_string(res->status) + ": " + reason);
  }
  if (reply.is_discarded() || !reply.contains("hits")) {
    throw BackendError(res->status, "elasticsearch reply is not a search result");
  }

  std::vector<DocHit> hits;
  for (const json& h : reply["hits"].value("hits", json::array())) {
    DocHit hit;
    hit.doc_id = h.at("_id").get<std::string>();
    hit.score = h.value("_score", 0.0);
    if (h.contains("highlight") && h["highlight"].contains("body") &&
        !h["highlight"]["body"].empty()) {
      hit.snippet = h["highlight"]["body"][0].get<std::string>();
    } else if (h.contains("_source")) {
      hit.snippet = h["_source"].value("body", std::string()).substr(0, 200);
    }
    hits.push_back(std::move(hit));
    if (hits.size() == top_k) break;
  }
  return hits;
}

}  // namespace vqsearch
