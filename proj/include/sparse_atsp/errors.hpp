#ifndef SPARSE_ATSP_ERRORS_HPP
#define SPARSE_ATSP_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sparse_atsp {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what_)
      : std::runtime_error("parse error at line " + std::to_string(line_) + ": " + what_),
        line(line_) {}
};

struct DuplicateEdge : std::runtime_error {
  DuplicateEdge(int u, int v)
      : std::runtime_error("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")") {}
};

struct SelfLoop : std::runtime_error {
  explicit SelfLoop(int v) : std::runtime_error("self-loop at vertex " + std::to_string(v)) {}
};

struct InvalidEdge : std::runtime_error {
  InvalidEdge(int u, int v)
      : std::runtime_error("no such edge (" + std::to_string(u) + "," + std::to_string(v) + ")") {}
};

struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TooDense : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OddN : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PreconditionViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MemoryBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Checked signed addition; weights are unbounded in the file format, so every
// accumulation of tour weight goes through here.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("weight sum overflows 64-bit range");
  return r;
}

}  // namespace sparse_atsp

#endif
