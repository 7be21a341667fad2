// Copyright 2026 The synthvid Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace synthvid {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `where` is a byte offset or a JSON path.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

class ConfigurationConflictError : public Error {
 public:
  using Error::Error;
};

/// A state or loss became NaN/inf.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class MissingEntryError : public Error {
 public:
  using Error::Error;
};

}  // namespace synthvid
