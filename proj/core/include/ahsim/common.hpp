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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ahsim {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A static-charge sector admits no configuration under the truncation.
class InfeasibleSector : public Error {
 public:
  using Error::Error;
};

/// A cheap upper bound on memory or dimension exceeded the configured cap.
class ResourceLimit : public Error {
 public:
  ResourceLimit(const std::string& what, double bound)
      : Error(what), bound_(bound) {}
  double bound() const { return bound_; }

 private:
  double bound_;
};

/// An iterative method failed to meet its tolerance within the cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what), best_residual_(best_residual) {}
  double bestResidual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// Operands live on different bases.
class BasisMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace ahsim
