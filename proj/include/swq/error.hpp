#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace swq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Problems with input data or files. The CLI maps these to exit code 2.
class DataError : public Error {
 public:
  using Error::Error;
};

class DuplicateId : public DataError {
 public:
  explicit DuplicateId(const std::string& id)
      : DataError("duplicate point id '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class NonFiniteCoordinate : public DataError {
 public:
  explicit NonFiniteCoordinate(const std::string& id)
      : DataError("point '" + id + "' has a non-finite coordinate"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class UndeclaredAttribute : public DataError {
 public:
  UndeclaredAttribute(const std::string& id, const std::string& name)
      : DataError("point '" + id + "' carries undeclared attribute '" + name + "'"),
        id_(id),
        name_(name) {}
  const std::string& id() const { return id_; }
  const std::string& name() const { return name_; }

 private:
  std::string id_;
  std::string name_;
};

class LatitudeOutOfRange : public DataError {
 public:
  explicit LatitudeOutOfRange(double lat)
      : DataError("latitude " + std::to_string(lat) + " outside [-90, 90]"), lat_(lat) {}
  double latitude() const { return lat_; }

 private:
  double lat_;
};

class IoError : public DataError {
 public:
  using DataError::DataError;
};

class FormatError : public DataError {
 public:
  FormatError(const std::string& what, std::size_t line)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Problems with the query text or its binding to a dataset. Exit code 1.
class QueryError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public QueryError {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected, const std::string& found);
  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
};

class NamedWindowUnsupported : public QueryError {
 public:
  NamedWindowUnsupported(std::size_t position, const std::string& name)
      : QueryError("named window '" + name + "' at position " + std::to_string(position) +
                   " is not supported; write the frame clause inline"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownAggregate : public QueryError {
 public:
  explicit UnknownAggregate(const std::string& name)
      : QueryError("unknown aggregate function '" + name + "'") {}
};

class UnsupportedAggregate : public QueryError {
 public:
  explicit UnsupportedAggregate(const std::string& what)
      : QueryError("unsupported aggregate: " + what) {}
};

class UnknownColumn : public QueryError {
 public:
  explicit UnknownColumn(const std::string& name)
      : QueryError("unknown column '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnsupportedMetric : public QueryError {
 public:
  using QueryError::QueryError;
};

// A forced executor that cannot run the requested window.
class PlanError : public QueryError {
 public:
  using QueryError::QueryError;
};

// Violated engine contract; indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

class NegativeCount : public InternalError {
 public:
  using InternalError::InternalError;
};

}  // namespace swq
