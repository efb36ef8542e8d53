/*
 * Copyright 2026 The Graphleak Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GRAPHLEAK_ERROR_H_
#define GRAPHLEAK_ERROR_H_

#include <stdexcept>
#include <string>

namespace graphleak {

// Base class for every error raised by the library. Subclasses only refine
// the category so callers can react to invalid input versus numerical
// failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on shapes, indices or configuration values was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Training or optimization produced a non-finite value.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Reading or writing files failed, or a file did not match its format.
class IoError : public Error {
 public:
  using Error::Error;
};

// Not enough data to satisfy a request (e.g. too few linked pairs).
class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace graphleak

#endif  // GRAPHLEAK_ERROR_H_
