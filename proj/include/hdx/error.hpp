#pragma once

#include <stdexcept>
#include <string>

namespace hdx {

enum class ErrorKind {
  Spec,          // malformed input or unsupported parameters
  Math,          // domain errors: zero modulus, inverse of zero, constant polynomial
  NonSpherical,  // rank-2 pair whose Coxeter group is infinite
  Unsupported,   // outside the implemented scope (e.g. non type-A affinization)
  Resource,      // enumeration or eigensolver budget exceeded
  Integrity,     // an internal consistency check failed (closure bug, bad file)
  Disconnected,  // spectral query on a disconnected graph
  Io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown when explicit enumeration exceeds its element budget. Carries the
// number of elements reached before giving up.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t partial_count)
      : Error(ErrorKind::Resource, what), partial_count_(partial_count) {}
  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

}  // namespace hdx
