#pragma once

#include <stdexcept>
#include <string>

namespace hqa {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input that cannot be parsed at all (bad JSON, unreadable file).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates the schema. Carries the offending entity.
class SchemaError : public Error {
 public:
  SchemaError(std::string entity, const std::string& what)
      : Error(what + " [" + entity + "]"), entity_(std::move(entity)) {}

  const std::string& entity() const noexcept { return entity_; }

 private:
  std::string entity_;
};

class IncompleteScores : public Error {
 public:
  IncompleteScores(std::string question_id, std::string evidence)
      : Error("missing score for " + evidence + " in question " + question_id),
        question_id_(std::move(question_id)),
        evidence_(std::move(evidence)) {}

  const std::string& question_id() const noexcept { return question_id_; }
  const std::string& evidence() const noexcept { return evidence_; }

 private:
  std::string question_id_;
  std::string evidence_;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class GroupTooSmall : public Error {
 public:
  using Error::Error;
};

class EmptyRow : public Error {
 public:
  EmptyRow() : Error("row has no cell scores") {}
};

class NoPositives : public Error {
 public:
  explicit NoPositives(std::string granularity)
      : Error("no positive training instance for granularity " + granularity),
        granularity_(std::move(granularity)) {}

  const std::string& granularity() const noexcept { return granularity_; }

 private:
  std::string granularity_;
};

class UnknownQuestion : public Error {
 public:
  explicit UnknownQuestion(const std::string& id) : Error("unknown question id " + id) {}
};

class MissingPrediction : public Error {
 public:
  explicit MissingPrediction(std::string id)
      : Error("no prediction for question " + id), question_id_(std::move(id)) {}

  const std::string& question_id() const noexcept { return question_id_; }

 private:
  std::string question_id_;
};

class GenerationFailed : public Error {
 public:
  using Error::Error;
};

/// Bad command-line usage or configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace hqa
