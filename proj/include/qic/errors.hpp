// Copyright 2026 The qic authors
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

namespace qic {

/// Base class for all qic errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// File or stream level failure (missing file, short read, ...).
class IoError : public Error {
  public:
    using Error::Error;
};

/// Malformed textual input. Carries the 1-based line number when known.
class ParseError : public Error {
  public:
    explicit ParseError(const std::string &what) : Error(what), line_(0) {}
    ParseError(std::size_t line, const std::string &what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Two routes that must agree did not (negative bit balance, failed
/// circuit-vs-formula cross check).
class InconsistencyError : public Error {
  public:
    using Error::Error;
};

} // namespace qic
