// Copyright 2026 The plsmc Authors
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

#ifndef PLSMC_ERROR_HPP
#define PLSMC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace plsmc {

/// Invalid model specification, configuration or input data.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Component, particle or time index outside its valid range.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Every particle received zero weight; the filter cannot continue.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact oracle refused to run because the problem exceeds its size guard.
class OracleGuardError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A function was called on data that does not carry what it needs.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// File system failure (unreadable input, unwritable output).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace plsmc

#endif  // PLSMC_ERROR_HPP
