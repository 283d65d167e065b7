// Copyright 2026 The qhmc Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qhmc {

/// Base class for all errors raised by the library.
struct QhmcError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BadDimension : QhmcError {
    using QhmcError::QhmcError;
};

struct NonHermitianInput : QhmcError {
    using QhmcError::QhmcError;
};

/// The finite-difference Jacobian of a map is (numerically) singular.
struct SingularMap : QhmcError {
    using QhmcError::QhmcError;
};

/// Probabilities violate the basic constraints of their measurement.
struct ConstraintViolation : QhmcError {
    using QhmcError::QhmcError;
};

/// No value of the unmeasured correlation makes the state positive.
struct NotPhysical : QhmcError {
    using QhmcError::QhmcError;
};

/// The chain's starting point has zero target density.
struct BadInitialPoint : QhmcError {
    using QhmcError::QhmcError;
};

struct ConfigError : QhmcError {
    using QhmcError::QhmcError;
};

}  // namespace qhmc
