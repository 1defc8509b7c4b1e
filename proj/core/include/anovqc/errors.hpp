// Copyright 2026 The anovqc Authors
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

/**
 * @file errors.hpp
 * Exception hierarchy shared by every anovqc module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace anovqc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: shapes, ranges, or incompatible files.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Caller-supplied value outside its domain.
class InputError : public Error {
  public:
    using Error::Error;
};

/// Qubit or element index out of range.
class IndexError : public InputError {
  public:
    using InputError::InputError;
};

/// Malformed external file (IDX, dataset, checkpoint).
class FormatError : public Error {
  public:
    using Error::Error;
};

/// A numerical invariant was violated (non-finite loss, Hermiticity residue).
class NumericalError : public Error {
  public:
    using Error::Error;
};

/**
 * @brief Process exit code for an error, as used by the CLI.
 *
 * 1 usage/config/input, 2 data format, 3 numerical failure.
 */
[[nodiscard]] inline int exit_code_for(const Error &err) noexcept {
    if (dynamic_cast<const FormatError *>(&err) != nullptr) {
        return 2;
    }
    if (dynamic_cast<const NumericalError *>(&err) != nullptr) {
        return 3;
    }
    return 1;
}

} // namespace anovqc
