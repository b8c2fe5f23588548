#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace odang {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown by parsers (N-Triples, Turtle subset, pattern files).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + reason),
        line(line),
        column(column),
        reason(reason) {}

  std::size_t line;
  std::size_t column;
  std::string reason;
};

class UnknownPrefixInDocumentError : public ParseError {
 public:
  UnknownPrefixInDocumentError(std::size_t line, std::size_t column,
                               const std::string& prefix)
      : ParseError(line, column, "unknown prefix '" + prefix + "'"),
        prefix(prefix) {}

  std::string prefix;
};

class UnknownPrefixError : public Error {
 public:
  explicit UnknownPrefixError(const std::string& prefix)
      : Error("unknown prefix '" + prefix + "'"), prefix(prefix) {}
  std::string prefix;
};

class EmptyLocalNameError : public Error {
 public:
  EmptyLocalNameError() : Error("empty local name") {}
};

class DanglingRecordError : public Error {
 public:
  explicit DanglingRecordError(const std::string& msg) : Error(msg) {}
};

class InvalidSituationError : public Error {
 public:
  explicit InvalidSituationError(const std::string& msg) : Error(msg) {}
};

class InconsistentRefsError : public Error {
 public:
  explicit InconsistentRefsError(const std::string& msg) : Error(msg) {}
};

// Mapping documents.
class MappingSyntaxError : public Error {
 public:
  MappingSyntaxError(std::size_t byte_offset, const std::string& reason)
      : Error("mapping syntax error at byte " + std::to_string(byte_offset) +
              ": " + reason),
        byte_offset(byte_offset) {}
  std::size_t byte_offset;
};

class UnknownValueDomainError : public Error {
 public:
  explicit UnknownValueDomainError(const std::string& msg) : Error(msg) {}
};

class DuplicateColumnError : public Error {
 public:
  explicit DuplicateColumnError(const std::string& column)
      : Error("duplicate column binding '" + column + "'"), column(column) {}
  std::string column;
};

class ColumnMissingError : public Error {
 public:
  explicit ColumnMissingError(const std::string& column)
      : Error("column '" + column + "' missing from header"), column(column) {}
  std::string column;
};

// Query engine.
class UnboundFilterVariableError : public Error {
 public:
  explicit UnboundFilterVariableError(const std::string& var)
      : Error("filter variable '" + var + "' not bound by any conjunct"),
        var(var) {}
  std::string var;
};

// External knowledge-graph clients.
class ClientUnavailableError : public Error {
 public:
  explicit ClientUnavailableError(const std::string& msg) : Error(msg) {}
};

class RateLimitedError : public Error {
 public:
  explicit RateLimitedError(const std::string& msg) : Error(msg) {}
};

class UnknownEntityError : public Error {
 public:
  explicit UnknownEntityError(const std::string& id)
      : Error("unknown entity '" + id + "'"), id(id) {}
  std::string id;
};

// Lexicon loading / profiling.
class UnknownCategoryError : public Error {
 public:
  UnknownCategoryError(std::size_t row, const std::string& code)
      : Error("row " + std::to_string(row) + ": unknown category '" + code +
              "'"),
        row(row),
        code(code) {}
  std::size_t row;
  std::string code;
};

class EmptyLemmaError : public Error {
 public:
  explicit EmptyLemmaError(std::size_t row)
      : Error("row " + std::to_string(row) + ": empty lemma"), row(row) {}
  std::size_t row;
};

class EmptyDatasetError : public Error {
 public:
  EmptyDatasetError() : Error("dataset has no documents") {}
};

class EmptyClassError : public Error {
 public:
  explicit EmptyClassError(const std::string& msg) : Error(msg) {}
};

}  // namespace odang
