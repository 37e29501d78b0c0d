#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vqsearch {

/// Malformed input file. The message carries the file and line.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dataset, key, country, document or job that does not exist.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A selection cell (key, dataset, range) without any values.
class EmptySliceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure reported by (or while reaching) a search backend.
class BackendError : public std::runtime_error {
 public:
  BackendError(int status, const std::string& message)
      : std::runtime_error(message), status_(status) {}

  /// HTTP status returned by the backend, 0 when it was never reached.
  int status() const noexcept { return status_; }

 private:
  int status_;
};

}  // namespace vqsearch
