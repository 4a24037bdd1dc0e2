// Copyright 2026 The trajenergy Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace trajenergy {

/// Root of the library's exception hierarchy.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A file could not be opened or is not syntactically valid.
struct ParseError : Error {
  using Error::Error;
};

/// A parsed or constructed object violates a documented invariant.
/// The message names the offending field.
struct ValidationError : Error {
  using Error::Error;
};

/// A vector or matrix argument has the wrong size, or holds non-finite
/// entries where finite values are required.
struct DimensionError : Error {
  using Error::Error;
};

/// A time interval has non-positive width.
struct DegenerateInterval : Error {
  using Error::Error;
};

/// A query time lies outside the trajectory's [0, duration] window.
struct OutOfRange : Error {
  using Error::Error;
};

struct TooFewWaypoints : Error {
  using Error::Error;
};

struct NonMonotonicTimes : Error {
  using Error::Error;
};

struct TooFewSamples : Error {
  using Error::Error;
};

struct TooFewTrajectories : Error {
  using Error::Error;
};

/// Two sampled series that must align have different lengths.
struct LengthMismatch : Error {
  using Error::Error;
};

struct SeriesTooShort : Error {
  using Error::Error;
};

/// A series carries no usable oscillation (constant or near-constant).
struct FlatSeries : Error {
  using Error::Error;
};

/// Planning-stage failures. The CLI maps these to exit code 2, as opposed
/// to configuration problems which exit with code 1.
struct PlanningError : Error {
  using Error::Error;
};

/// A robot check point sits on or inside an obstacle surface.
struct PenetrationError : PlanningError {
  using PlanningError::PlanningError;
};

/// A trajectory endpoint is too close to an obstacle to be deformed away
/// (endpoints are pinned).
struct EndpointBlocked : PlanningError {
  using PlanningError::PlanningError;
};

/// Deformation finished without reaching the requested clearance while the
/// pipeline required it to.
struct NotConvergedError : PlanningError {
  using PlanningError::PlanningError;
};

}  // namespace trajenergy
