/*
 * Copyright 2026 The Samelson Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SAMELSON_ERRORS_HPP
#define SAMELSON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace samelson {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

/// Ring mismatch, degree-violating ring map, malformed ring.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside of its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input to decompose_invariant fails one of the generators of W(D_m).
class NotInvariantError : public Error {
 public:
  using Error::Error;
};

/// A table entry was requested whose value would depend on unknown
/// correction terms of a catalog representative.
class RefusalError : public Error {
 public:
  using Error::Error;
};

class UnknownGroupError : public Error {
 public:
  using Error::Error;
};

class NotRegularError : public Error {
 public:
  using Error::Error;
};

}  // namespace samelson

#endif  // SAMELSON_ERRORS_HPP
