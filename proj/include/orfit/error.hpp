// Copyright 2026 The ORFit Authors
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

#include <stdexcept>
#include <string>

namespace orfit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (dimension mismatch, bad shape).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A projection basis contains a vector too close to zero.
class DegenerateBasis : public Error {
 public:
  using Error::Error;
};

/// An iterative routine failed to converge or a denominator vanished.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A new datapoint cannot be fit without disturbing the span of prior data.
class InconsistentStream : public Error {
 public:
  using Error::Error;
};

/// Multi-pass SGD left the stable region.
class Divergence : public Error {
 public:
  using Error::Error;
};

/// A stateful predictor was queried before seeing any data.
class Uninitialized : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration (policy, config file, CLI flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Data could not be read, parsed or written.
class IngestionError : public Error {
 public:
  using Error::Error;
};

/// IDX header carries an unknown magic number.
class FormatError : public IngestionError {
 public:
  using IngestionError::IngestionError;
};

/// IDX payload is shorter than its header promises.
class CorruptFile : public IngestionError {
 public:
  using IngestionError::IngestionError;
};

/// Not enough samples of the requested class to build a stream.
class InsufficientData : public IngestionError {
 public:
  using IngestionError::IngestionError;
};

}  // namespace orfit
