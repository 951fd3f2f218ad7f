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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"

namespace {

using ahsim_oracles::SmallLattice;

TEST(Oracle, DenseEigTwoLevel) {
  Eigen::MatrixXcd m(2, 2);
  m << 1.0, std::complex<double>(0.0, 2.0), std::complex<double>(0.0, -2.0), 1.0;
  const auto d = ahsim_oracles::denseEig(m);
  EXPECT_NEAR(d.values[0], -1.0, 1e-14);
  EXPECT_NEAR(d.values[1], 3.0, 1e-14);
  const Eigen::MatrixXcd back =
      d.vectors * d.values.cast<std::complex<double>>().asDiagonal() * d.vectors.adjoint();
  EXPECT_LT((back - m).norm(), 1e-13);
}

TEST(Oracle, DenseEigReconstructsLargeMatrices) {
  std::srand(1);
  for (int n : {40, 300, 600}) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(n, n);
    a = (a + a.adjoint()).eval();
    const auto d = ahsim_oracles::denseEig(a);
    const Eigen::MatrixXcd back =
        d.vectors * d.values.cast<std::complex<double>>().asDiagonal() * d.vectors.adjoint();
    EXPECT_LT((back - a).norm(), 1e-10 * a.norm()) << n;
  }
}

TEST(Oracle, DenseExpRabi) {
  Eigen::MatrixXcd x(2, 2);
  x << 0, 1, 1, 0;
  Eigen::VectorXcd psi(2);
  psi << 1, 0;
  const double t = 0.3;
  const auto out = ahsim_oracles::denseExp(x, t, psi);
  EXPECT_NEAR(std::abs(out[0] - std::cos(t)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(out[1] - std::complex<double>(0.0, -std::sin(t))), 0.0, 1e-14);
}

TEST(Oracle, LinksOfPlaquette) {
  const auto links = ahsim_oracles::oracleLinks(SmallLattice{2, 2, false});
  ASSERT_EQ(links.size(), 4u);
  EXPECT_EQ(links[0].origin, 0);
  EXPECT_EQ(links[0].target, 1);
  EXPECT_EQ(links[1].dir, 1);
  EXPECT_EQ(links[1].target, 2);
  EXPECT_EQ(ahsim_oracles::oracleLinks(SmallLattice{3, 3, true}).size(), 18u);
}

TEST(Oracle, SectorCounts) {
  EXPECT_EQ(ahsim_oracles::exhaustiveSector({2, 2, false}, 1, 0, 0, {0, 0, 0, 0}).size(), 3u);
  // Single link with a matter pair: m and Q0 = m, Q1 = -m.
  EXPECT_EQ(ahsim_oracles::exhaustiveSector({2, 1, false}, 1, -1, 1, {0, 0}).size(), 3u);
  EXPECT_TRUE(ahsim_oracles::exhaustiveSector({2, 1, false}, 1, 0, 0, {1, 0}).empty());
}

TEST(Oracle, PerturbationOfTwoLevelSystem) {
  // Exact ground energy (1 - sqrt(1 + 4 v^2)) / 2 = -v^2 + v^4 - ...
  const double v = 0.05;
  Eigen::MatrixXcd V(2, 2);
  V << 0, v, v, 0;
  EXPECT_NEAR(ahsim_oracles::pureHopEffective({0.0, 1.0}, V, {0}, 2)(0, 0).real(), -v * v, 1e-17);
  EXPECT_NEAR(ahsim_oracles::pureHopEffective({0.0, 1.0}, V, {0}, 4)(0, 0).real(), std::pow(v, 4),
              1e-19);
}

TEST(Oracle, TwoSiteOrderTwoPattern) {
  const double eps = 0.1;
  const auto h = ahsim_oracles::twoSiteEffective(1.0, eps, 2, 2);
  ASSERT_EQ(h.rows(), 3);
  EXPECT_NEAR(h(0, 0) - h(1, 1), 0.5 * eps * eps, 1e-16);
  EXPECT_NEAR(h(2, 2) - h(1, 1), 0.5 * eps * eps, 1e-16);
}

}  // namespace
