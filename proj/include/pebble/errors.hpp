#ifndef PEBBLE_ERRORS_HPP
#define PEBBLE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pebble {

enum class ErrorCode {
  invalid_argument,
  illegal_move,
  resource_limit,
  construction_failed,
  overflow,
  internal,
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every exception thrown by the engine. The code maps one-to-one
/// onto the status values of the C API.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::invalid_argument, what) {}
};

/// A move that is not legal in the state it was applied to. `index` is the
/// position of the offending move inside a trace (0 for a lone move).
class IllegalMove : public Error {
public:
  IllegalMove(std::size_t index, const std::string& what)
      : Error(ErrorCode::illegal_move, what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

private:
  std::size_t index_;
};

/// Search budget exhausted. Never a negative answer.
class ResourceLimit : public Error {
public:
  explicit ResourceLimit(const std::string& what)
      : Error(ErrorCode::resource_limit, what) {}
};

/// A constructive strategy could not finish on input that satisfied its
/// preconditions. Always an engine bug.
class ConstructionFailed : public Error {
public:
  explicit ConstructionFailed(const std::string& what)
      : Error(ErrorCode::construction_failed, what) {}
};

class Overflow : public Error {
public:
  explicit Overflow(const std::string& what)
      : Error(ErrorCode::overflow, what) {}
};

class InternalError : public Error {
public:
  explicit InternalError(const std::string& what)
      : Error(ErrorCode::internal, what) {}
};

}  // namespace pebble

#endif  // PEBBLE_ERRORS_HPP
