#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace grpd {

/** Base class for every error thrown by this library. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A multiplication table failed one of the defining axioms.
 *
 * Axiom ids 1..4 follow the usual numbering for partial-table groupoids
 * (associativity, pair/triple existence, unique left/right identities,
 * unique inverses); id 5 is the composability criterion derived from them
 * (xy exists iff d(x) = r(y)).  The witness holds the offending element
 * tokens, always the lexicographically first failure.
 */
class AxiomViolation : public Error {
 public:
  AxiomViolation(int axiom, std::vector<std::string> witness, const std::string& detail)
      : Error("axiom " + std::to_string(axiom) + " violated: " + detail),
        axiom_(axiom),
        witness_(std::move(witness)) {}

  int axiom() const noexcept { return axiom_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  int axiom_;
  std::vector<std::string> witness_;
};

/** Text input could not be parsed; line/column are 1-based. */
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& detail)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
              detail),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class DuplicateElement : public ParseError {
 public:
  using ParseError::ParseError;
};

class DuplicateProduct : public ParseError {
 public:
  using ParseError::ParseError;
};

class UndeclaredToken : public ParseError {
 public:
  using ParseError::ParseError;
};

/** A token or index does not name an element of the groupoid at hand. */
class UnknownElement : public Error {
 public:
  using Error::Error;
};

/** An identity was required (isotropy group base point, bundle fiber, ...). */
class NotAnIdentity : public Error {
 public:
  using Error::Error;
};

class EmptySet : public Error {
 public:
  using Error::Error;
};

class EmptyIntersection : public Error {
 public:
  using Error::Error;
};

/** A member set is not closed under product/inverse, so it is no subgroupoid. */
class NotASubgroupoid : public Error {
 public:
  using Error::Error;
};

/** Generic contract failure for operations with documented preconditions. */
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class NotNormal : public Error {
 public:
  using Error::Error;
};

/** Quotient denominators must consist of isotropy arrows only. */
class NotIsotropic : public Error {
 public:
  using Error::Error;
};

/** A mapping file is not a (total, single-valued) function on the source. */
class NotAFunction : public Error {
 public:
  using Error::Error;
};

class NotStrong : public Error {
 public:
  using Error::Error;
};

class NotSurjective : public Error {
 public:
  using Error::Error;
};

class NotNormalKernel : public Error {
 public:
  using Error::Error;
};

class TargetNotAbelian : public Error {
 public:
  using Error::Error;
};

/** An isotropy group exceeded the partial-isomorphism enumeration bound. */
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace grpd
