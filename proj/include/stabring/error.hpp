#pragma once

#include <stdexcept>
#include <string>

namespace stabring {

/// Base class of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GroupError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (group order, state count, chain rank) was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class CacheError : public Error {
 public:
  using Error::Error;
};

class LinalgError : public Error {
 public:
  using Error::Error;
};

class ModuleError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace stabring
