// Copyright 2026 The cplab Authors
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

namespace cplab {

// Base of every error raised by the library. Legitimate "bottom" results
// (punctured evaluations, failed rejection sampling) are values, not errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

// A configured cap (qubits, domain size, support size) would be exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ImpossibleCollapse : public Error {
 public:
  using Error::Error;
};

class UndefinedConditioning : public Error {
 public:
  using Error::Error;
};

class EvaluationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace cplab
