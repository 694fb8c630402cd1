/*
 * Copyright 2026 The textclf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace textclf {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: unreadable corpus, malformed file, inconsistent model.
class DataError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures (missing root, unreadable file).
class IoError : public DataError {
 public:
  using DataError::DataError;
};

// A caller violated an operation's precondition (k out of range, bad hyperparameter).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace textclf
