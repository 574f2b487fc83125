// Copyright 2026 The sbpwave Authors
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

namespace sbpwave {

/// Base of every error raised by the library. The CLI maps subclasses onto
/// exit codes, so new error kinds should derive from one of the groups below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Domain group (exit code 3).
class DomainError : public Error {
 public:
  using Error::Error;
};
class MisalignmentError : public DomainError {
 public:
  using DomainError::DomainError;
};
class UnsupportedRatio : public DomainError {
 public:
  using DomainError::DomainError;
};
class InfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};
class SizeError : public DomainError {
 public:
  using DomainError::DomainError;
};
class OutOfCoverage : public DomainError {
 public:
  using DomainError::DomainError;
};
class ValueError : public DomainError {
 public:
  using DomainError::DomainError;
};
class ShapeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Input group.
class ConfigError : public Error {
 public:
  using Error::Error;
};
class IoError : public Error {
 public:
  using Error::Error;
};
class FormatError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace sbpwave
