// Copyright 2026 The lambdacav Authors
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

#ifndef LAMBDACAV_ERRORS_HPP
#define LAMBDACAV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lambdacav {

/// Base class for every error thrown by this library.
class SimError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Structural mismatch: wrong subsystem kind, incompatible state shapes,
/// out-of-range subsystem index.
class ShapeError : public SimError {
   public:
    using SimError::SimError;
};

/// Invalid argument value (bad level, non-normalized input, non-unitary
/// matrix, zero-amplitude coherent parameter where one is required, ...).
class DomainError : public SimError {
   public:
    using SimError::SimError;
};

/// Joint dimension of a tensor product would exceed the hard amplitude cap.
class CapacityError : public SimError {
   public:
    using SimError::SimError;
};

/// A state does not fit the truncated Fock space at the requested tolerance.
/// `required_n_max()` is the smallest cutoff that would have sufficed, or -1
/// when that number is not cheaply computable from inside the truncation.
class TruncationError : public SimError {
   public:
    TruncationError(const std::string &what, int required_n_max)
        : SimError(what), required_n_max_(required_n_max) {}

    int required_n_max() const { return required_n_max_; }

   private:
    int required_n_max_;
};

/// The requested measurement outcome has numerically zero probability.
class PostSelectionError : public SimError {
   public:
    using SimError::SimError;
};

/// The operation is deliberately unsupported by the model
/// (for example, direct detection of the cavity field).
class UnsupportedError : public SimError {
   public:
    using SimError::SimError;
};

/// A cross-model consistency check exceeded its stated bound.
class CheckError : public SimError {
   public:
    using SimError::SimError;
};

}  // namespace lambdacav

#endif
