#pragma once

#include <stdexcept>
#include <string>

namespace rankhash {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid HashParams or other out-of-range arguments.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Vector lengths do not agree with each other or with HashParams::n.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Two hashed codes were produced under different parameters or seeds.
class IncompatibleTemplateError : public Error {
 public:
  using Error::Error;
};

/// A reissue was requested with a seed that is already in use.
class SeedReuseError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (CSV rows, template stores, non-finite values).
class DataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace rankhash
