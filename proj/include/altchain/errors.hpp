// Copyright 2026 The altchain Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace altchain {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Input outside the domain of an operation (zero separation, odd chain, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// An iterative or series computation did not reach its tolerance.
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

/// A numerical diagnosis could not be made unambiguously.
class AmbiguityError : public Error {
 public:
  explicit AmbiguityError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace altchain
