#pragma once

#include <memory>
#include <string>

#include "vqsearch/config.hpp"

namespace vqsearch {

class Engine;

/// JSON-over-HTTP front end for an Engine. Handlers run concurrently; the
/// stability job registry is the only mutable state.
class Service {
 public:
  Service(const Engine& engine, Config config);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds to `port`, or to a free port when `port` is 0. Returns the bound
  /// port, or -1 on failure.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Requires a successful bind().
  bool run();
  void stop();
  /// Blocks until the server accepts connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vqsearch
