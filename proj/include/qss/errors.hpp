// Copyright 2026 The qss-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSS_ERRORS_HPP
#define QSS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qss {

/// A caller violated a documented precondition (bad dimension, mismatched sizes, ...).
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

/// A request exceeds a configured size limit.
class ResourceError : public std::length_error {
 public:
  explicit ResourceError(const std::string& what) : std::length_error(what) {}
};

/// Numerics produced something that should be impossible for valid inputs.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qss

#endif  // QSS_ERRORS_HPP
