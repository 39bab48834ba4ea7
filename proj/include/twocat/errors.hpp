#pragma once

#include <stdexcept>
#include <string>

namespace twocat {

// Contract violations surface as exceptions; expected "no result" outcomes
// (singular matrix, no conjugating unit, ...) are std::optional instead.

struct FieldMismatch : std::runtime_error {
  explicit FieldMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

struct ParentMismatch : std::runtime_error {
  explicit ParentMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NotAUnit : std::runtime_error {
  explicit NotAUnit(const std::string& what) : std::runtime_error(what) {}
};

struct CertificationError : std::runtime_error {
  explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

struct IntervalError : std::runtime_error {
  explicit IntervalError(const std::string& what) : std::runtime_error(what) {}
};

struct SiteError : std::runtime_error {
  explicit SiteError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed instance files: missing keys, wrong shapes, bad references.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Parse failures carry a byte offset into the input.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset(offset) {}
  std::size_t offset;
};

}  // namespace twocat
