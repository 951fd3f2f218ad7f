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

#include "ahsim/fit.hpp"

#include <cmath>

namespace ahsim {

namespace {

Eigen::VectorXd flatten(const DenseMatrix& m) {
  const Eigen::Index n = m.size();
  Eigen::VectorXd v(2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    v[k] = m.data()[k].real();
    v[n + k] = m.data()[k].imag();
  }
  return v;
}

}  // namespace

FitResult fitCoefficients(const DenseMatrix& target,
                          const std::vector<DictionaryEntry>& dictionary,
                          double aliasTol) {
  FitResult out;
  const Eigen::VectorXd y = flatten(target);
  out.targetNorm = y.norm();

  std::vector<Eigen::VectorXd> basis;  // orthonormal
  std::vector<size_t> kept;
  std::vector<Eigen::VectorXd> raw;
  for (size_t k = 0; k < dictionary.size(); ++k) {
    const auto& d = dictionary[k];
    if (d.matrix.rows() != target.rows() || d.matrix.cols() != target.cols()) {
      throw BasisMismatch("dictionary entry '" + d.name + "' has wrong shape");
    }
    Eigen::VectorXd v = flatten(d.matrix);
    FitResult::Entry e{d.name, std::nullopt, ""};
    const double norm = v.norm();
    if (norm == 0.0) {
      e.note = "absent on this basis";
      out.entries.push_back(e);
      raw.emplace_back();
      continue;
    }
    Eigen::VectorXd w = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) w -= q.dot(w) * q;
    }
    if (w.norm() <= aliasTol * norm) {
      std::string with;
      for (size_t j = 0; j < kept.size(); ++j) {
        const double overlap = std::abs(basis[j].dot(v)) / norm;
        if (overlap > aliasTol) {
          with += (with.empty() ? "" : ", ") + dictionary[kept[j]].name;
        }
      }
      e.note = "aliased with " + with;
      out.entries.push_back(e);
      raw.emplace_back();
      continue;
    }
    basis.push_back(w / w.norm());
    kept.push_back(k);
    raw.push_back(v);
    out.entries.push_back(e);
  }

  if (!kept.empty()) {
    Eigen::MatrixXd A(y.size(), static_cast<Eigen::Index>(kept.size()));
    for (size_t j = 0; j < kept.size(); ++j) A.col(j) = raw[kept[j]];
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    for (size_t j = 0; j < kept.size(); ++j) {
      out.entries[kept[j]].coefficient = c[static_cast<Eigen::Index>(j)];
    }
    out.residualNorm = (y - A * c).norm();
  } else {
    out.residualNorm = out.targetNorm;
  }
  return out;
}

double powerLawExponent(const std::vector<double>& x,
                        const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t k = 0; k < x.size() && k < y.size(); ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) continue;
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::nan("");
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return std::nan("");
  return (n * sxy - sx * sy) / den;
}

}  // namespace ahsim
