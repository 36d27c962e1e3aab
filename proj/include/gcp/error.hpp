#ifndef GCP_ERROR_HPP
#define GCP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gcp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arithmetic mixing scalars from different coefficient fields.
struct FieldMismatchError : Error {
  using Error::Error;
};

// A requested degree or a needed product falls outside the configured window.
struct WindowError : Error {
  using Error::Error;
};

// A size cap (tensor basis, enumeration) was exceeded.
struct CapacityError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

// Input instance outside the supported class (e.g. cyclic graph for the
// boundary path groupoid).
struct UnsupportedInstanceError : Error {
  using Error::Error;
};

// A computation produced a value contradicting an identity that must hold
// (e.g. pi applied to a zero operator giving a nonzero ring element).
struct InconsistencyError : Error {
  using Error::Error;
};

// An arrow of the target set admits no factorization through the given sets.
struct NotGeneratedError : Error {
  using Error::Error;
};

struct ParseError : Error {
  int line;
  ParseError(const std::string& msg, int line_) : Error(msg), line(line_) {}
};

}  // namespace gcp

#endif
