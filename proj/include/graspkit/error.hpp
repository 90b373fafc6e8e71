// Copyright 2026 The graspkit Authors
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

namespace graspkit {

/// Base class for all graspkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// tangent_frame() was given a (near-)zero direction.
class ZeroNormal : public Error {
 public:
  using Error::Error;
};

/// Friction-cone discretization with fewer than 3 pyramid edges.
class BadDiscretization : public Error {
 public:
  using Error::Error;
};

/// Operation requires a hand Jacobian but the grasp record has none.
class MissingJacobian : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Hull input that cannot define any geometry (e.g. all points zero).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// boundary_distance() called while the origin is not strictly inside.
class OriginOutside : public Error {
 public:
  using Error::Error;
};

/// Brute-force facet enumeration beyond its size cap.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// Minkowski-sum enumeration would exceed the configured cap.
class CombinatorialCap : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class EmptyTrial : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Malformed scene/report/CSV input. Message names the offending field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// A numeric routine failed on an otherwise valid input.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace graspkit
