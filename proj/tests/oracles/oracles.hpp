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

// Brute-force references for tests. Nothing here may include ahsim headers:
// the point is an independent second implementation.

#include <vector>

#include <Eigen/Dense>

namespace ahsim_oracles {

struct EigenDecomposition {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // columns
};

/// Full Hermitian eigendecomposition through LAPACK zheev.
EigenDecomposition denseEig(const Eigen::MatrixXcd& m, int cap = 4096);

/// exp(-i M t) psi via denseEig.
Eigen::VectorXcd denseExp(const Eigen::MatrixXcd& m, double t,
                          const Eigen::VectorXcd& psi);

struct SmallLattice {
  int lx = 1;
  int ly = 1;
  bool periodic = false;
};

struct OracleLink {
  int origin = 0;
  int dir = 0;  // 0 = x, 1 = y
  int target = 0;
};

/// Links vertex by vertex (row-major), x before y.
std::vector<OracleLink> oracleLinks(const SmallLattice& lat);

/// Every (m per link, Q per vertex) in the box that satisfies
/// sum_out m - sum_in m - Q = q at each vertex.
std::vector<std::vector<int>> exhaustiveSector(const SmallLattice& lat,
                                               int emax, int qmin, int qmax,
                                               const std::vector<int>& charges,
                                               double cap = 1e7);

/// Textbook degenerate perturbation theory for H = H0 + V with H0 diagonal,
/// ground energy 0 and P V P = 0. Returns the order-`order` effective block
/// on the listed ground indices (orders 2 and 4; 1 and 3 vanish).
Eigen::MatrixXcd pureHopEffective(const std::vector<double>& h0,
                                  const Eigen::MatrixXcd& v,
                                  const std::vector<int>& ground, int order);

/// Two vertices joined by one link, one auxiliary boson per vertex, unit
/// auxiliary amplitudes and dressed link operators. Returns the effective
/// block of the given order over link states m = -N/2 .. N/2.
Eigen::MatrixXd twoSiteEffective(double lambda, double epsilon, int n0l,
                                 int order);

}  // namespace ahsim_oracles
