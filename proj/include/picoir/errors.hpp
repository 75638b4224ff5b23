// Copyright 2026 The picoir Authors.
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

#ifndef PICOIR_ERRORS_HPP_
#define PICOIR_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

#include "picoir/types.hpp"

namespace picoir {

// Base of every error raised by the library. The CLI maps these to exit 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed an argument outside the operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data (files, corpora, models) is unreadable or malformed.
class DataError : public Error {
 public:
  using Error::Error;
};

// A line of a JSONL file violates its schema.
class SchemaError : public DataError {
 public:
  SchemaError(std::size_t line, std::string field, const std::string& detail)
      : DataError("line " + std::to_string(line) + ": field '" + field +
                  "': " + detail),
        line_(line),
        field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class MissingElement : public Error {
 public:
  explicit MissingElement(PicoLabel element)
      : Error("document has no gold span for element '" +
              std::string(label_name(element)) + "'"),
        element_(element) {}

  PicoLabel element() const { return element_; }

 private:
  PicoLabel element_;
};

class MissingEmbedding : public Error {
 public:
  explicit MissingEmbedding(const std::string& id)
      : Error("no embedding for id '" + id + "'"), id_(id) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

// Optimization diverged.
class TrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace picoir

#endif  // PICOIR_ERRORS_HPP_
