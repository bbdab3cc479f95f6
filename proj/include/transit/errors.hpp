#pragma once

#include <stdexcept>
#include <string>

namespace transit {

// Base class for all recoverable errors raised by this library.
class TransitError : public std::runtime_error {
 public:
  explicit TransitError(const std::string& what) : std::runtime_error(what) {}
};

class UnknownStation : public TransitError {
 public:
  explicit UnknownStation(const std::string& id)
      : TransitError("unknown station: " + id) {}
};

class UncoveredEdge : public TransitError {
 public:
  UncoveredEdge(const std::string& a, const std::string& b)
      : TransitError("edge " + a + "--" + b + " belongs to no line") {}
};

class DegenerateGeometry : public TransitError {
 public:
  explicit DegenerateGeometry(const std::string& what) : TransitError(what) {}
};

class DegeneratePath : public TransitError {
 public:
  explicit DegeneratePath(const std::string& what) : TransitError(what) {}
};

class UnknownCostMode : public TransitError {
 public:
  explicit UnknownCostMode(const std::string& mode)
      : TransitError("unknown cost mode: " + mode) {}
};

class NonPositiveLogOperand : public TransitError {
 public:
  explicit NonPositiveLogOperand(const std::string& what) : TransitError(what) {}
};

class UnreachablePair : public TransitError {
 public:
  UnreachablePair(const std::string& a, const std::string& b)
      : TransitError("no route between " + a + " and " + b +
                     " but demand exists (set unreachable-penalty to tolerate)") {}
};

class NoFeasibleLine : public TransitError {
 public:
  explicit NoFeasibleLine(const std::string& what) : TransitError(what) {}
};

// Config and input-file problems: malformed lines, unknown or missing keys,
// CSV schema violations.
class ConfigError : public TransitError {
 public:
  explicit ConfigError(const std::string& what) : TransitError(what) {}
};

class CsvError : public TransitError {
 public:
  explicit CsvError(const std::string& what) : TransitError(what) {}
};

}  // namespace transit
