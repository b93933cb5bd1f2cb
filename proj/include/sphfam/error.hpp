#pragma once

#include <stdexcept>
#include <string>

namespace sphfam {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Raised for GroupKind values with no root realization (G2(m)) or bad ranks.
class UnsupportedKind : public Error {
 public:
  using Error::Error;
};

class SchemeMismatch : public Error {
 public:
  using Error::Error;
};

// Direct-mode size limits and the E8 long-running gate.
class GuardRailError : public Error {
 public:
  using Error::Error;
};

class NotADual : public Error {
 public:
  using Error::Error;
};

class NotRealizable : public Error {
 public:
  using Error::Error;
};

}  // namespace sphfam
