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

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "ahsim/solvers.hpp"

namespace ahsim {

namespace {

struct SubstepResult {
  Vector value;
  double error = 0.0;
  int dim = 0;
  bool ok = false;
};

/// Lanczos approximation of exp(-i H h) v with the usual a posteriori
/// bound beta_m |e_m^T exp(-i h T) e_1|.
SubstepResult lanczosExp(const SparseOperator& H, const Vector& v, double h,
                         double normH, const KrylovOptions& opt) {
  const double beta0 = v.norm();
  const Eigen::Index n = v.size();
  const Eigen::Index mmax = std::min<Eigen::Index>(opt.maxDim, n);
  DenseMatrix q(n, mmax);
  q.col(0) = v / beta0;
  std::vector<double> alpha;
  std::vector<double> beta;
  const double breakdown = 1e-13 * std::max(normH, 1e-300);
  SubstepResult out;

  for (Eigen::Index j = 0; j < mmax; ++j) {
    Vector w = H.apply(q.col(j));
    const double a = q.col(j).dot(w).real();
    alpha.push_back(a);
    w -= a * q.col(j);
    if (j > 0) w -= beta[static_cast<size_t>(j - 1)] * q.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) {
      const auto block = q.leftCols(j + 1);
      const Vector c = block.adjoint() * w;
      w.noalias() -= block * c;
    }
    const double b = w.norm();
    const Eigen::Index m = j + 1;
    const bool exhausted = b < breakdown || m == n;

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::MatrixXd& y = es.eigenvectors();
    Eigen::VectorXcd phase(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      phase[i] = std::exp(cplx(0.0, -h * es.eigenvalues()[i])) * y(0, i);
    }
    const Eigen::VectorXcd c = y.cast<cplx>() * phase;
    const double err = exhausted ? 0.0 : beta0 * b * std::abs(c[m - 1]);
    if (exhausted || err <= opt.tol) {
      out.value = beta0 * (q.leftCols(m) * c);
      out.error = err;
      out.dim = static_cast<int>(m);
      out.ok = true;
      return out;
    }
    if (m == mmax) {
      out.error = err;
      out.dim = static_cast<int>(m);
      return out;
    }
    beta.push_back(b);
    q.col(j + 1) = w / b;
  }
  return out;
}

}  // namespace

Vector krylovStep(const SparseOperator& H, const Vector& psi, double dt,
                  const KrylovOptions& options, StepStats* stats) {
  if (psi.size() != H.cols()) throw BasisMismatch("state and operator differ");
  StepStats local;
  const double n0 = psi.norm();
  if (dt == 0.0 || n0 == 0.0) {
    if (stats) *stats = local;
    return psi;
  }
  const double normH = H.normInf();
  Vector cur = psi;
  double remaining = std::abs(dt);
  const double sign = dt < 0.0 ? -1.0 : 1.0;
  double h = remaining;
  int halvings = 0;
  while (remaining > 0.0) {
    const double step = std::min(h, remaining);
    SubstepResult r = lanczosExp(H, cur, sign * step, normH, options);
    if (!r.ok) {
      if (++halvings > options.maxHalvings) {
        throw ConvergenceError("Krylov step missed its tolerance", r.error);
      }
      h = 0.5 * step;
      continue;
    }
    cur = std::move(r.value);
    remaining = step >= remaining ? 0.0 : remaining - step;
    ++local.substeps;
    local.maxKrylov = std::max(local.maxKrylov, r.dim);
    local.errorEstimate += r.error;
  }
  local.normDrift = std::abs(cur.norm() - n0);
  if (stats) *stats = local;
  return cur;
}

EvolveResult evolve(const SparseOperator& H, QuantumState psi0, double dt,
                    int nSteps, const Observer& observer,
                    const KrylovOptions& options) {
  if (psi0.basis != H.domain()) {
    throw BasisMismatch("state and Hamiltonian live on different bases");
  }
  if (nSteps < 0) throw InvalidArgument("nSteps must be non-negative");
  EvolveResult res;
  res.final = std::move(psi0);
  if (observer) observer(0.0, res.final);
  for (int s = 1; s <= nSteps; ++s) {
    StepStats st;
    res.final.amplitudes = krylovStep(H, res.final.amplitudes, dt, options, &st);
    res.substeps += st.substeps;
    res.maxNormDrift =
        std::max(res.maxNormDrift, std::abs(res.final.norm() - 1.0));
    res.final.normalize();
    if (observer) observer(s * dt, res.final);
  }
  return res;
}

}  // namespace ahsim
