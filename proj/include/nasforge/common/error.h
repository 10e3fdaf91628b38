// Copyright 2026 The nasforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NASFORGE_COMMON_ERROR_H_
#define NASFORGE_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace nasforge {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid configuration. The CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Config text that does not parse. `line` is 1-based, 0 when unknown.
class ConfigParseError : public ConfigError {
 public:
  ConfigParseError(const std::string& message, int line)
      : ConfigError(line > 0 ? "line " + std::to_string(line) + ": " + message
                             : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Well-formed config that violates the schema. `key_path` is dotted.
class ValidationError : public ConfigError {
 public:
  ValidationError(const std::string& key_path, const std::string& message)
      : ConfigError(key_path + ": " + message),
        key_path_(key_path),
        message_(message) {}
  // Same error with `prefix` in front of the rendered text.
  ValidationError(const std::string& prefix, const ValidationError& inner)
      : ConfigError(prefix + inner.what()),
        key_path_(inner.key_path_),
        message_(inner.message_) {}
  const std::string& key_path() const { return key_path_; }
  const std::string& message() const { return message_; }

 private:
  std::string key_path_;
  std::string message_;
};

class DuplicateRegistrationError : public Error {
 public:
  using Error::Error;
};

class UnknownComponentError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

// Textual genotype that does not match the space grammar.
class GenotypeError : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

class MissingEntryError : public Error {
 public:
  using Error::Error;
};

}  // namespace nasforge

#endif  // NASFORGE_COMMON_ERROR_H_
