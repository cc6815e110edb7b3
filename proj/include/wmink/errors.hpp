#pragma once

#include <stdexcept>
#include <string>

namespace wmink {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// geometry
class UnboundedBody : public Error {
 public:
  using Error::Error;
};
class DegenerateHull : public Error {
 public:
  using Error::Error;
};
class UnknownNormal : public Error {
 public:
  using Error::Error;
};
class NoLowerFacets : public Error {
 public:
  using Error::Error;
};

// measure
class InvalidWeight : public Error {
 public:
  using Error::Error;
};
class ZeroMass : public Error {
 public:
  using Error::Error;
};

// minkowski
class InvalidTarget : public Error {
 public:
  using Error::Error;
};
class CollapsedBody : public Error {
 public:
  using Error::Error;
};
class InadmissibleWeight : public Error {
 public:
  using Error::Error;
};

// lift
class ConcentratedOnHyperplane : public Error {
 public:
  using Error::Error;
};

// envelope / verify
class OutsideDomain : public Error {
 public:
  using Error::Error;
};
class EmptySubgradientFacet : public Error {
 public:
  using Error::Error;
};

/// Input document failed schema validation. `line` is 1-based, 0 if unknown.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace wmink
