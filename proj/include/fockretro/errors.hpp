// Copyright 2026 The fockretro Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fockretro {

/// Bad argument to a library call: mode out of range, mismatched mode counts,
/// unnormalized input where a normalized one is required.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A beam-splitter matrix failed the unitarity check.
class InvalidElement : public std::domain_error {
 public:
  InvalidElement(const std::string& what, double deviation)
      : std::domain_error(what), deviation_(deviation) {}

  /// max |M^dagger M - I| of the rejected matrix.
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// Normalizing a state of zero norm.
class DegenerateState : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A state has support outside the basis it is being expanded in.
class BasisMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A detection record that has zero probability under the given state.
class ImpossibleObservation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense oracle requested on a basis that is too large.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A computed result failed a consistency check (probability tables not
/// summing to 1, oracle disagreement).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed scenario text. line() is 1-based; 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed scenario text with a bad value; key() names the offender.
class SemanticError : public std::runtime_error {
 public:
  SemanticError(const std::string& key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(key) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace fockretro
