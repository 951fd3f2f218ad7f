// Copyright 2026 The ahsim Authors
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

#include <memory>

#include "ahsim/common.hpp"
#include "ahsim/hilbert.hpp"

namespace ahsim {

/// Normalized amplitude vector over a basis.
struct QuantumState {
  std::shared_ptr<const Basis> basis;
  Vector amplitudes;

  QuantumState() = default;
  QuantumState(std::shared_ptr<const Basis> b, Vector a)
      : basis(std::move(b)), amplitudes(std::move(a)) {
    if (static_cast<size_t>(amplitudes.size()) != basis->size()) {
      throw BasisMismatch("state length does not match basis");
    }
  }

  static QuantumState basisState(std::shared_ptr<const Basis> b, size_t index) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(b->size()));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return {std::move(b), std::move(v)};
  }

  double norm() const { return amplitudes.norm(); }
  void normalize() {
    const double n = norm();
    if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
    amplitudes /= n;
  }
};

}  // namespace ahsim
