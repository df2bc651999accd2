// Copyright 2026 The NAP Trajectory Authors
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

#ifndef NAP__ERRORS_HPP_
#define NAP__ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace nap
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent configuration (unknown keys, bad values).
class ConfigError : public Error
{
public:
  using Error::Error;
};

/// Unreadable, malformed or inconsistent input data.
class DataError : public Error
{
public:
  using Error::Error;
};

/// Shape mismatch between operands of a numeric operation.
class ShapeError : public Error
{
public:
  using Error::Error;
};

/// NaN or Inf produced during a forward or backward pass.
class NumericError : public Error
{
public:
  using Error::Error;
};

/// Checkpoint or configuration that does not match what the caller expects.
class IncompatibleError : public Error
{
public:
  using Error::Error;
};

}  // namespace nap

#endif  // NAP__ERRORS_HPP_
