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

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "ahsim/common.hpp"
#include "ahsim/hilbert.hpp"

namespace ahsim {

using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

/// Sparse complex matrix between two bases. Exact zeros are never stored.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(std::shared_ptr<const Basis> codomain,
                 std::shared_ptr<const Basis> domain, SparseMatrix m,
                 bool hermitian = false);

  static SparseOperator zero(std::shared_ptr<const Basis> basis);
  static SparseOperator identity(std::shared_ptr<const Basis> basis);
  static SparseOperator diagonal(std::shared_ptr<const Basis> basis,
                                 const std::vector<double>& values);

  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  Eigen::Index nonZeros() const { return m_.nonZeros(); }
  const SparseMatrix& matrix() const { return m_; }
  const std::shared_ptr<const Basis>& domain() const { return domain_; }
  const std::shared_ptr<const Basis>& codomain() const { return codomain_; }

  bool hermitianFlag() const { return hermitian_; }
  /// Largest entry of |A - A^dagger|.
  double hermitianDefect() const;

  SparseOperator adjoint() const;
  SparseOperator operator+(const SparseOperator& o) const;
  SparseOperator operator-(const SparseOperator& o) const;
  SparseOperator operator*(const SparseOperator& o) const;
  SparseOperator operator*(cplx s) const;
  SparseOperator operator*(double s) const;
  SparseOperator& operator+=(const SparseOperator& o);

  Vector apply(const Vector& v) const;
  cplx expectation(const Vector& v) const;

  double maxAbs() const;
  /// Induced infinity norm (largest absolute row sum).
  double normInf() const;
  double normFrobenius() const;

  DenseMatrix toDense(Eigen::Index cap = 4096) const;

 private:
  void prune();

  std::shared_ptr<const Basis> codomain_;
  std::shared_ptr<const Basis> domain_;
  SparseMatrix m_;
  bool hermitian_ = false;
};

SparseOperator operator*(double s, const SparseOperator& a);
SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

/// Local action on a packed configuration row. Mutates the row in place and
/// returns the amplitude; zero means the state was annihilated.
using ConfigAction = std::function<double(std::span<std::int8_t>)>;

/// Coefficient times an ordered product; `actions[0]` acts first.
struct Monomial {
  cplx coefficient{1.0, 0.0};
  std::vector<ConfigAction> actions;
};

struct AssembleOptions {
  /// Add the Hermitian conjugate of the assembled sum.
  bool addConjugate = false;
  /// Throw when an image configuration is missing from the basis.
  bool requireClosed = true;
};

/// Row-parallel assembly of a sum of monomials on one basis.
SparseOperator assemble(std::shared_ptr<const Basis> basis,
                        const std::vector<Monomial>& terms,
                        const AssembleOptions& options = {});

/// Worker count used by assembly and matrix-vector products.
void setThreadCount(int n);
int threadCount();

}  // namespace ahsim
