// Copyright 2026 The Previval Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exception types raised by the previval library.
 */

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace previval {

/// Base class for every error the library throws.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A precondition or type invariant was violated by the caller.
class InvalidInput : public Error {
  public:
    using Error::Error;
};

/// Operand sizes disagree (e.g. a state and a Hamiltonian of different
/// truncation).
class DimensionMismatch : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

/// A preparation ensemble with no members was supplied where prior
/// information is required.
class EmptyEnsemble : public InvalidInput {
  public:
    using InvalidInput::InvalidInput;
};

/**
 * @brief Conditioning on a measurement outcome whose probability is zero.
 *
 * Raised instead of returning 0 or NaN for the 0/0 ratio of a conditional
 * probability. Carries the elapsed time when the caller knows it.
 */
class ZeroProbability : public Error {
  public:
    explicit ZeroProbability(const std::string &what,
                             std::optional<double> lambda_tau = std::nullopt)
        : Error(what), lambda_tau_(lambda_tau) {}

    [[nodiscard]] std::optional<double> lambda_tau() const {
        return lambda_tau_;
    }

  private:
    std::optional<double> lambda_tau_;
};

} // namespace previval
