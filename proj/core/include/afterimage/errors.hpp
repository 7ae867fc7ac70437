#pragma once

#include <stdexcept>
#include <string>

namespace afterimage {

/// Input outside an operation's mathematical domain (out-of-range value,
/// even kernel size, empty grid, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Unknown builtin, family or glyph.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A precondition on an argument's structure failed, e.g. asking for
/// trigger derivation from a rule set that is not bias-ambiguous.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A rule set has no rule for a requested afterimage level (or bias/level
/// combination).
class UnsatisfiableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Images handed to a plan do not share the bias image they claim.
class ProvenanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line` is 1-based, 0 when unknown; `field` names the
/// offending JSON path or header token when one applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line = 0, std::string field = {})
      : std::runtime_error(message), line_(line), field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace afterimage
