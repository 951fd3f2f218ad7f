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

#include "ahsim/sparse_operator.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>

#ifdef AHSIM_HAVE_OPENMP
#include <omp.h>
#endif

namespace ahsim {

namespace {

int g_threads = 0;

void requireSame(const std::shared_ptr<const Basis>& a,
                 const std::shared_ptr<const Basis>& b, const char* what) {
  if (a != b) throw BasisMismatch(std::string("basis mismatch in ") + what);
}

}  // namespace

void setThreadCount(int n) {
  g_threads = std::max(1, n);
  Eigen::setNbThreads(g_threads);
}

int threadCount() {
  if (g_threads > 0) return g_threads;
  if (const char* env = std::getenv("AHSIM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef AHSIM_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

SparseOperator::SparseOperator(std::shared_ptr<const Basis> codomain,
                               std::shared_ptr<const Basis> domain,
                               SparseMatrix m, bool hermitian)
    : codomain_(std::move(codomain)),
      domain_(std::move(domain)),
      m_(std::move(m)),
      hermitian_(hermitian) {
  if (!codomain_ || !domain_) throw InvalidArgument("operator without basis");
  if (m_.rows() != static_cast<Eigen::Index>(codomain_->size()) ||
      m_.cols() != static_cast<Eigen::Index>(domain_->size())) {
    throw BasisMismatch("matrix shape does not match its bases");
  }
  prune();
  if (hermitian_) {
    if (codomain_ != domain_) {
      throw InvalidArgument("Hermitian operator must map a basis to itself");
    }
    if (hermitianDefect() != 0.0) {
      throw InvalidArgument("operator flagged Hermitian is not exactly so");
    }
  }
}

void SparseOperator::prune() {
  m_.prune([](Eigen::Index, Eigen::Index, const cplx& v) {
    return v != cplx(0.0, 0.0);
  });
  m_.makeCompressed();
}

SparseOperator SparseOperator::zero(std::shared_ptr<const Basis> basis) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  return SparseOperator(basis, basis, SparseMatrix(n, n), true);
}

SparseOperator SparseOperator::identity(std::shared_ptr<const Basis> basis) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  SparseMatrix m(n, n);
  m.setIdentity();
  return SparseOperator(basis, basis, std::move(m), true);
}

SparseOperator SparseOperator::diagonal(std::shared_ptr<const Basis> basis,
                                        const std::vector<double>& values) {
  const auto n = static_cast<Eigen::Index>(basis->size());
  if (static_cast<Eigen::Index>(values.size()) != n) {
    throw BasisMismatch("diagonal length does not match basis");
  }
  std::vector<Eigen::Triplet<cplx>> t;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (values[i] != 0.0) t.emplace_back(i, i, values[i]);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return SparseOperator(basis, basis, std::move(m), true);
}

double SparseOperator::hermitianDefect() const {
  if (m_.rows() != m_.cols()) return std::numeric_limits<double>::infinity();
  SparseMatrix d = m_ - SparseMatrix(m_.adjoint());
  double worst = 0.0;
  for (Eigen::Index k = 0; k < d.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(d, k); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

SparseOperator SparseOperator::adjoint() const {
  return SparseOperator(domain_, codomain_, SparseMatrix(m_.adjoint()),
                        hermitian_);
}

SparseOperator SparseOperator::operator+(const SparseOperator& o) const {
  requireSame(domain_, o.domain_, "sum");
  requireSame(codomain_, o.codomain_, "sum");
  SparseMatrix s = m_ + o.m_;
  const bool herm = hermitian_ && o.hermitian_;
  SparseOperator r(codomain_, domain_, std::move(s), false);
  r.hermitian_ = herm && r.hermitianDefect() == 0.0;
  return r;
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const {
  return *this + o * -1.0;
}

SparseOperator SparseOperator::operator*(const SparseOperator& o) const {
  requireSame(domain_, o.codomain_, "product");
  SparseMatrix p = m_ * o.m_;
  return SparseOperator(codomain_, o.domain_, std::move(p), false);
}

SparseOperator SparseOperator::operator*(cplx s) const {
  SparseMatrix p = m_ * s;
  SparseOperator r(codomain_, domain_, std::move(p), false);
  r.hermitian_ = hermitian_ && s.imag() == 0.0;
  return r;
}

SparseOperator SparseOperator::operator*(double s) const {
  return *this * cplx(s, 0.0);
}

SparseOperator operator*(double s, const SparseOperator& a) { return a * s; }

SparseOperator& SparseOperator::operator+=(const SparseOperator& o) {
  *this = *this + o;
  return *this;
}

Vector SparseOperator::apply(const Vector& v) const {
  if (v.size() != m_.cols()) throw BasisMismatch("vector length mismatch");
  Vector out(m_.rows());
  const Eigen::Index n = m_.rows();
#ifdef AHSIM_HAVE_OPENMP
#pragma omp parallel for schedule(static) num_threads(threadCount()) if (n > 4096)
#endif
  for (Eigen::Index i = 0; i < n; ++i) {
    cplx acc(0.0, 0.0);
    for (SparseMatrix::InnerIterator it(m_, i); it; ++it) {
      acc += it.value() * v[it.col()];
    }
    out[i] = acc;
  }
  return out;
}

cplx SparseOperator::expectation(const Vector& v) const {
  return v.dot(apply(v));
}

double SparseOperator::maxAbs() const {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < m_.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m_, k); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

double SparseOperator::normInf() const {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < m_.outerSize(); ++k) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(m_, k); it; ++it) {
      row += std::abs(it.value());
    }
    worst = std::max(worst, row);
  }
  return worst;
}

double SparseOperator::normFrobenius() const { return m_.norm(); }

DenseMatrix SparseOperator::toDense(Eigen::Index cap) const {
  if (m_.rows() > cap || m_.cols() > cap) {
    throw ResourceLimit("dense conversion above cap",
                        static_cast<double>(std::max(m_.rows(), m_.cols())));
  }
  return DenseMatrix(m_);
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
  return a * b - b * a;
}

SparseOperator assemble(std::shared_ptr<const Basis> basis,
                        const std::vector<Monomial>& terms,
                        const AssembleOptions& options) {
  const size_t n = basis->size();
  const int w = basis->width();
  std::vector<std::vector<Eigen::Triplet<cplx>>> cols(n);
  std::exception_ptr failure;

#ifdef AHSIM_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 64) num_threads(threadCount()) if (n > 2048)
#endif
  for (long long jj = 0; jj < static_cast<long long>(n); ++jj) {
    const size_t j = static_cast<size_t>(jj);
    try {
      std::vector<std::int8_t> scratch(w);
      const auto src = basis->row(j);
      for (const Monomial& term : terms) {
        std::copy(src.begin(), src.end(), scratch.begin());
        double amp = 1.0;
        for (const ConfigAction& act : term.actions) {
          amp *= act(std::span<std::int8_t>(scratch));
          if (amp == 0.0) break;
        }
        if (amp == 0.0) continue;
        const auto i = basis->find(scratch);
        if (!i) {
          if (options.requireClosed) {
            throw BasisMismatch("operator maps " + basis->describe(j) +
                                " outside the basis");
          }
          continue;
        }
        cols[j].emplace_back(static_cast<Eigen::Index>(*i),
                             static_cast<Eigen::Index>(j),
                             term.coefficient * amp);
      }
    } catch (...) {
#ifdef AHSIM_HAVE_OPENMP
#pragma omp critical(ahsim_assemble_failure)
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Eigen::Triplet<cplx>> all;
  size_t total = 0;
  for (const auto& c : cols) total += c.size();
  all.reserve(total);
  for (const auto& c : cols) all.insert(all.end(), c.begin(), c.end());

  const auto dim = static_cast<Eigen::Index>(n);
  SparseMatrix m(dim, dim);
  m.setFromTriplets(all.begin(), all.end());
  if (options.addConjugate) {
    SparseMatrix h = m + SparseMatrix(m.adjoint());
    return SparseOperator(basis, basis, std::move(h), true);
  }
  return SparseOperator(basis, basis, std::move(m), false);
}

}  // namespace ahsim
