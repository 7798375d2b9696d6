// Copyright 2026 The paramine Authors.
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

#ifndef PARAMINE_ERROR_HPP_
#define PARAMINE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace paramine {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or missing configuration: unreadable files, unknown encoders,
// pattern compile failures, invalid thresholds.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data that violates a contract (empty sentence, dimension mismatch).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace paramine

#endif  // PARAMINE_ERROR_HPP_
