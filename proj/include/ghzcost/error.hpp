// Copyright 2026 The ghzcost Authors
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

#ifndef GHZCOST_ERROR_HPP
#define GHZCOST_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ghzcost {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bad argument or configuration (empty party set, p out of range, ...).
class InvalidArgument : public Error {
   public:
    using Error::Error;
};

/// Operands whose party dimensions do not line up.
class DimensionError : public Error {
   public:
    using Error::Error;
};

/// A size guard (enumeration, optimizer dimension, branch count) was exceeded.
class GuardError : public Error {
   public:
    using Error::Error;
};

/// A measurement operator set violated sum_j M_j^dagger M_j = I.
class CompletenessError : public Error {
   public:
    using Error::Error;
};

/// A runtime self-check failed: non-unitary input, a state that should be a
/// product is not, a protocol branch missed its target, a non-finite objective.
class VerificationError : public Error {
   public:
    using Error::Error;
};

}  // namespace ghzcost

#endif
