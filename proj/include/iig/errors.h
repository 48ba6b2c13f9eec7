// Copyright 2026 The iiglearn Authors. All rights reserved.
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

#ifndef IIG_ERRORS_H_
#define IIG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace iig {

// Bad user-supplied parameters (CLI maps these to exit code 2).
class ArgumentError : public std::runtime_error {
 public:
  explicit ArgumentError(const std::string& what) : std::runtime_error(what) {}
};

// Inconsistent tree / layout / serialization input (exit code 2).
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what)
      : std::runtime_error(what) {}
};

// Overflow, non-convergence, invalid denominators (exit code 3).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Requested construction exceeds configured budgets (exit code 2).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace iig

#endif  // IIG_ERRORS_H_
