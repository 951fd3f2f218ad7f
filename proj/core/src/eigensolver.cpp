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
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>

#include "ahsim/solvers.hpp"

namespace ahsim {

namespace {

double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vector randomVector(Eigen::Index n, std::mt19937_64& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = 2.0 * uniform(rng) - 1.0;
    const double im = 2.0 * uniform(rng) - 1.0;
    v[i] = cplx(re, im);
  }
  return v;
}

void projectOut(Vector& w, const std::vector<Vector>& basis) {
  for (const auto& q : basis) w -= q * q.dot(w);
}

void projectOut(Vector& w, const DenseMatrix& q, Eigen::Index cols) {
  if (cols == 0) return;
  const auto block = q.leftCols(cols);
  const Vector c = block.adjoint() * w;
  w.noalias() -= block * c;
}

struct RitzPair {
  double value = 0.0;
  Vector vector;
  double residual = 0.0;
};

/// One Lanczos cycle on H restricted to the complement of `locked`,
/// returning the lowest Ritz pair with its explicit residual.
RitzPair lanczosCycle(const SparseOperator& H, const std::vector<Vector>& locked,
                      Vector start, int maxKrylov, double normH, int& matvecs) {
  const Eigen::Index n = H.rows();
  const Eigen::Index room = n - static_cast<Eigen::Index>(locked.size());
  const Eigen::Index mmax = std::min<Eigen::Index>(maxKrylov, room);
  DenseMatrix q(n, mmax);
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples q_j and q_{j+1}
  const double breakdown = 1e-13 * std::max(normH, 1e-300);

  projectOut(start, locked);
  projectOut(start, locked);
  q.col(0) = start / start.norm();
  Eigen::Index m = 0;
  for (Eigen::Index j = 0; j < mmax; ++j) {
    Vector w = H.apply(q.col(j));
    ++matvecs;
    const double a = q.col(j).dot(w).real();
    alpha.push_back(a);
    m = j + 1;
    if (j + 1 == mmax) break;
    w -= a * q.col(j);
    if (j > 0) w -= beta[static_cast<size_t>(j - 1)] * q.col(j - 1);
    for (int pass = 0; pass < 2; ++pass) {
      projectOut(w, locked);
      projectOut(w, q, j + 1);
    }
    const double b = w.norm();
    if (b < breakdown) break;
    beta.push_back(b);
    q.col(j + 1) = w / b;
  }

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    t(i, i) = alpha[static_cast<size_t>(i)];
    if (i + 1 < m) {
      t(i, i + 1) = t(i + 1, i) = beta[static_cast<size_t>(i)];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  RitzPair rp;
  rp.value = es.eigenvalues()[0];
  const Eigen::VectorXcd y = es.eigenvectors().col(0).cast<cplx>();
  rp.vector = q.leftCols(m) * y;
  projectOut(rp.vector, locked);
  rp.vector /= rp.vector.norm();
  const Vector hx = H.apply(rp.vector);
  ++matvecs;
  Vector r = hx - rp.value * rp.vector;
  // The residual is measured in the deflated space.
  projectOut(r, locked);
  rp.residual = r.norm();
  return rp;
}

}  // namespace

std::vector<Cluster> Spectrum::clusters() const {
  std::vector<Cluster> out;
  for (size_t i = 0; i < values.size(); ++i) {
    const int c = clusterOf[i];
    if (c >= static_cast<int>(out.size())) out.push_back({values[i], {}});
    out[static_cast<size_t>(c)].members.push_back(static_cast<int>(i));
  }
  return out;
}

Spectrum groundStates(const SparseOperator& H, int k,
                      const LanczosOptions& options) {
  const Eigen::Index n = H.rows();
  if (H.cols() != n) throw InvalidArgument("operator is not square");
  if (k < 1 || k > n) {
    throw InvalidArgument("requested " + std::to_string(k) +
                          " states from dimension " + std::to_string(n));
  }
  const double scale = std::max(1.0, H.maxAbs());
  if (!H.hermitianFlag() && H.hermitianDefect() > 1e-12 * scale) {
    throw InvalidArgument("eigensolver needs a Hermitian operator");
  }

  Spectrum s;
  const double normH = H.normInf();
  s.clusterThreshold = 10.0 * options.tol * normH;
  std::mt19937_64 rng(options.seed);
  std::vector<Vector> locked;
  std::vector<double> values;

  auto findNext = [&]() {
    Vector start = randomVector(n, rng);
    double best = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart <= options.maxRestarts; ++restart) {
      RitzPair rp = lanczosCycle(H, locked, std::move(start), options.maxKrylov,
                                 normH, s.matrixVectorProducts);
      best = std::min(best, rp.residual);
      if (rp.residual <= options.tol * std::max(normH, 1e-300) ||
          normH == 0.0) {
        s.maxResidual = std::max(s.maxResidual, rp.residual);
        return rp;
      }
      start = std::move(rp.vector);
    }
    throw ConvergenceError("Lanczos did not reach the residual tolerance",
                           best);
  };

  while (static_cast<int>(locked.size()) < k) {
    RitzPair rp = findNext();
    values.push_back(rp.value);
    locked.push_back(std::move(rp.vector));
  }
  if (options.completeClusters) {
    while (static_cast<Eigen::Index>(locked.size()) < n) {
      const double top = *std::max_element(values.begin(), values.end());
      RitzPair rp = findNext();
      if (rp.value - top > s.clusterThreshold) break;
      values.push_back(rp.value);
      locked.push_back(std::move(rp.vector));
    }
  }

  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  int cluster = -1;
  for (size_t i = 0; i < order.size(); ++i) {
    const double v = values[order[i]];
    if (i == 0 || v - s.values.back() > s.clusterThreshold) ++cluster;
    s.values.push_back(v);
    s.vectors.push_back(std::move(locked[order[i]]));
    s.clusterOf.push_back(cluster);
  }
  return s;
}

Spectrum neutralGroundStates(const SparseOperator& H, int k,
                             const LanczosOptions& options) {
  const auto& full = H.domain();
  if (!full || H.codomain() != full) {
    throw BasisMismatch("operator must act within one basis");
  }
  const std::vector<size_t> keep = neutralIndices(*full);
  if (keep.empty()) throw InfeasibleSector("no neutral configuration");
  const int cols = full->numLinks() + full->numVertices();
  std::vector<std::int8_t> rows;
  for (size_t i : keep) {
    const auto r = full->row(i);
    rows.insert(rows.end(), r.begin(), r.begin() + cols);
  }
  std::optional<StaticCharges> charges;
  if (auto cb = std::dynamic_pointer_cast<const ConfigBasis>(full)) {
    charges = cb->charges();
  }
  auto sub = ConfigBasis::fromRows(full->geometryPtr(), full->truncation(),
                                   std::move(rows), charges);
  std::vector<Eigen::Index> toSub(full->size(), -1);
  std::vector<Eigen::Index> toFull(sub->size());
  for (size_t i : keep) {
    const auto r = full->row(i);
    const size_t j = *sub->find(std::span<const std::int8_t>(r.data(), cols));
    toSub[i] = static_cast<Eigen::Index>(j);
    toFull[j] = static_cast<Eigen::Index>(i);
  }
  std::vector<Eigen::Triplet<cplx>> trip;
  const SparseMatrix& m = H.matrix();
  for (size_t i : keep) {
    for (SparseMatrix::InnerIterator it(m, static_cast<Eigen::Index>(i)); it;
         ++it) {
      const Eigen::Index c = toSub[static_cast<size_t>(it.col())];
      if (c >= 0) trip.emplace_back(toSub[i], c, it.value());
    }
  }
  const auto d = static_cast<Eigen::Index>(sub->size());
  SparseMatrix sm(d, d);
  sm.setFromTriplets(trip.begin(), trip.end());
  const SparseOperator hs(sub, sub, std::move(sm), H.hermitianFlag());
  Spectrum s = groundStates(hs, std::min<int>(k, static_cast<int>(d)), options);
  for (auto& v : s.vectors) {
    Vector e = Vector::Zero(static_cast<Eigen::Index>(full->size()));
    for (Eigen::Index j = 0; j < d; ++j) e[toFull[static_cast<size_t>(j)]] = v[j];
    v = std::move(e);
  }
  return s;
}

double defaultTimeStep(const SparseOperator& H) {
  const double r = H.normInf();
  return r > 0.0 ? 0.5 / r : 1.0;
}

}  // namespace ahsim
