// Copyright (c) 2026 The WANE Authors. All Rights Reserved.
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

namespace wane {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid flags or configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input files (edges, text, labels, checkpoints).
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss or parameter values during training.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace wane
