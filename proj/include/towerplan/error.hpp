#pragma once

#include <stdexcept>
#include <string>

namespace towerplan {

/// Base class for every error raised by the planner library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class MinerError : public Error {
 public:
  using Error::Error;
};

class ScoringError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Wraps an error raised inside one pipeline stage with the stage name and
/// the input locus (file, cell, object id) where it happened.
class StageError : public Error {
 public:
  StageError(std::string stage, std::string locus, const std::string& what)
      : Error(stage + " [" + locus + "]: " + what), stage_(std::move(stage)), locus_(std::move(locus)) {}

  const std::string& stage() const noexcept { return stage_; }
  const std::string& locus() const noexcept { return locus_; }

 private:
  std::string stage_;
  std::string locus_;
};

}  // namespace towerplan
