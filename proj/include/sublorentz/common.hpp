// Copyright 2026 The Sublorentz Authors

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

#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sublorentz {

/// Components of a tangent vector in a fixed basis of the model space.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A linear functional on the model space, kept distinct from Vector so that
/// pairing a covector with a vector is always explicit.
struct Covector {
  Eigen::VectorXd components;

  Covector() = default;
  explicit Covector(Eigen::VectorXd c) : components(std::move(c)) {}

  [[nodiscard]] Eigen::Index dim() const { return components.size(); }
  [[nodiscard]] double operator()(const Vector& v) const;
  [[nodiscard]] double norm() const { return components.norm(); }
};

// ---------------------------------------------------------------------------
// Errors

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(Eigen::Index expected, Eigen::Index got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

class InvalidPoint : public Error {
 public:
  using Error::Error;
};

class NotPointed : public Error {
 public:
  using Error::Error;
};

class UnsupportedStep : public Error {
 public:
  using Error::Error;
};

class InvalidAlgebra : public Error {
 public:
  using Error::Error;
};

class NotExact : public Error {
 public:
  using Error::Error;
};

class StalledParameter : public Error {
 public:
  using Error::Error;
};

class UnboundedSection : public Error {
 public:
  using Error::Error;
};

class WrongModel : public Error {
 public:
  using Error::Error;
};

inline void require_dim(Eigen::Index expected, Eigen::Index got) {
  if (expected != got) throw DimensionMismatch(expected, got);
}

inline double Covector::operator()(const Vector& v) const {
  require_dim(components.size(), v.size());
  return components.dot(v);
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

// ---------------------------------------------------------------------------
// Extended reals: R together with a tagged -infinity.

/// A real number or the distinguished value -inf that antinorms take off
/// their cone. The tag is explicit; no floating sentinel is ever used.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT: implicit from finite reals

  static constexpr ExtendedReal neg_inf() {
    ExtendedReal r;
    r.neg_inf_ = true;
    return r;
  }

  [[nodiscard]] constexpr bool is_neg_inf() const { return neg_inf_; }
  [[nodiscard]] constexpr bool is_finite() const { return !neg_inf_; }

  /// Finite value; throws if called on -inf.
  [[nodiscard]] double value() const {
    if (neg_inf_) throw std::domain_error("ExtendedReal::value() on -inf");
    return value_;
  }

  /// Lossy conversion for reporting (-inf maps to IEEE -infinity).
  [[nodiscard]] double to_double() const {
    return neg_inf_ ? -std::numeric_limits<double>::infinity() : value_;
  }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.neg_inf_ || b.neg_inf_) return neg_inf();
    return {a.value_ + b.value_};
  }
  ExtendedReal& operator+=(ExtendedReal b) { return *this = *this + b; }

  /// Scaling by a strictly positive factor; -inf stays -inf.
  friend ExtendedReal operator*(double lambda, ExtendedReal a) {
    if (!(lambda > 0.0)) {
      throw std::domain_error("ExtendedReal scaling requires a positive factor");
    }
    if (a.neg_inf_) return neg_inf();
    return {lambda * a.value_};
  }

  friend bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }
  friend bool operator<(ExtendedReal a, ExtendedReal b) {
    if (b.neg_inf_) return false;
    if (a.neg_inf_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return b < a; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return !(b < a); }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, ExtendedReal a) {
    if (a.neg_inf_) return os << "-inf";
    return os << a.value_;
  }

 private:
  double value_ = 0.0;
  bool neg_inf_ = false;
};

}  // namespace sublorentz
