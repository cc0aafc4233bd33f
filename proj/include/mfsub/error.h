// Copyright 2026 The mfsub Authors. All Rights Reserved.
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


#ifndef MFSUB_ERROR_H_
#define MFSUB_ERROR_H_

#include <stdexcept>
#include <string>

namespace mfsub {

// Coarse error classes; the CLI maps each to its own exit code.
enum class ErrorClass { kConfig, kIo, kNumeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const { return class_; }

 private:
  ErrorClass class_;
};

// Violated precondition or invalid parameter.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorClass::kConfig, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorClass::kIo, what) {}
};

// Undefined numeric result, e.g. correlation of a constant vector.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorClass::kNumeric, what) {}
};

}  // namespace mfsub

#endif  // MFSUB_ERROR_H_
