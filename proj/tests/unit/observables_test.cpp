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
#include <numeric>

#include "ahsim/common.hpp"
#include "ahsim/observables.hpp"

namespace ahsim {
namespace {

using Geom = std::shared_ptr<const LatticeGeometry>;

Geom lattice(int lx, int ly) {
  return std::make_shared<const LatticeGeometry>(lx, ly, Boundary::Open);
}

TruncationSpec ideal(int emax, int qmax) {
  TruncationSpec t;
  t.emax = emax;
  t.qmax = qmax;
  return t;
}

size_t indexOf(const ConfigBasis& b, GaugeConfig c) {
  const auto i = b.find(packRow(c));
  if (!i) throw std::runtime_error("configuration not in basis");
  return *i;
}

const std::vector<DirectedLink> kPath{{0, +1}, {1, +1}};
const std::vector<std::pair<int, int>> kPairs{{0, 1}, {1, 2}};

std::shared_ptr<const ConfigBasis> chain() {
  return enumerateSector(lattice(3, 1), ideal(1, 1), {1, 0, -1});
}

TEST(Maps, EmptyPlaquetteState) {
  const auto b = enumerateSector(lattice(2, 2), ideal(1, 0), {0, 0, 0, 0});
  const auto psi = QuantumState::basisState(b, indexOf(*b, {{0, 0, 0, 0}, {0, 0, 0, 0}}));
  const auto e = electricFieldMap(psi);
  EXPECT_EQ(e.offset, -1);
  for (size_t l = 0; l < 4; ++l) {
    EXPECT_EQ(e.mean[l], 0.0);
    EXPECT_EQ(e.distribution[l][1], 1.0);
  }
  EXPECT_EQ(gaussResidual(psi, {0, 0, 0, 0}), 0.0);
  EXPECT_EQ(plaquetteExpectation(psi)[0], 0.0);
}

TEST(Maps, LoopSuperposition) {
  const auto b = enumerateSector(lattice(2, 2), ideal(1, 0), {0, 0, 0, 0});
  const size_t empty = indexOf(*b, {{0, 0, 0, 0}, {0, 0, 0, 0}});
  for (size_t loop = 0; loop < 3; ++loop) {
    if (loop == empty) continue;
    for (double sign : {+1.0, -1.0}) {
      Vector v = Vector::Zero(3);
      v[Eigen::Index(empty)] = 1.0 / std::sqrt(2.0);
      v[Eigen::Index(loop)] = sign / std::sqrt(2.0);
      // <U_p> = <loop|U_p|empty>/2 or <empty|U_p|loop>/2, both unit amplitude.
      EXPECT_NEAR(plaquetteExpectation(QuantumState(b, v))[0], 0.5 * sign, 1e-15);
    }
  }
}

TEST(Maps, ChargeSumMatchesStaticCharges) {
  const StaticCharges q{1, 0, 0};
  const auto b = enumerateSector(lattice(3, 1), ideal(1, 1), q);
  std::srand(4);
  Vector v = Vector::Random(Eigen::Index(b->size()));
  const QuantumState psi(b, v / v.norm());
  const auto c = chargeMap(psi);
  const double total = std::accumulate(c.mean.begin(), c.mean.end(), 0.0);
  EXPECT_NEAR(total, -1.0, 1e-14);
  for (const auto& d : c.distribution) {
    EXPECT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 1.0, 1e-14);
  }
  EXPECT_LT(gaussResidual(psi, q), 1e-15);
}

TEST(Maps, DistributionsMixLinearly) {
  const auto b = chain();
  const size_t x = indexOf(*b, {{1, 1}, {0, 0, 0}});
  const size_t y = indexOf(*b, {{0, 1}, {-1, 1, 0}});
  Vector v = Vector::Zero(Eigen::Index(b->size()));
  v[Eigen::Index(x)] = std::sqrt(0.3);
  v[Eigen::Index(y)] = cplx(0.0, std::sqrt(0.7));
  const auto mix = chargeMap(QuantumState(b, v));
  const auto cx = chargeMap(QuantumState::basisState(b, x));
  const auto cy = chargeMap(QuantumState::basisState(b, y));
  for (size_t s = 0; s < 3; ++s) {
    EXPECT_NEAR(mix.mean[s], 0.3 * cx.mean[s] + 0.7 * cy.mean[s], 1e-15);
    for (size_t k = 0; k < mix.distribution[s].size(); ++k) {
      EXPECT_NEAR(mix.distribution[s][k],
                  0.3 * cx.distribution[s][k] + 0.7 * cy.distribution[s][k], 1e-15);
    }
  }
}

TEST(Maps, GaussResidualDetectsWrongCharges) {
  const auto b = chain();
  const auto psi = QuantumState::basisState(b, indexOf(*b, {{1, 1}, {0, 0, 0}}));
  EXPECT_EQ(gaussResidual(psi, {1, 0, -1}), 0.0);
  EXPECT_NEAR(gaussResidual(psi, {0, 0, 0}), 1.0, 1e-15);
  EXPECT_THROW(gaussResidual(psi, {0, 0}), InvalidArgument);
}

TEST(String, IntactFluxTube) {
  const auto b = chain();
  const auto psi = QuantumState::basisState(b, indexOf(*b, {{1, 1}, {0, 0, 0}}));
  const auto d = stringDiagnostics(psi, kPath, {0, 2}, kPairs);
  EXPECT_EQ(d.stringIntactProb, 1.0);
  EXPECT_EQ(d.chargePairProb, 0.0);
  EXPECT_EQ(d.brokenProb, 0.0);
  EXPECT_EQ(d.fluxProfile, (std::vector<double>{1.0, 1.0}));
}

TEST(String, BrokenNearTheSource) {
  // Pair created on the first link: flux only on the second.
  const auto b = chain();
  const auto psi = QuantumState::basisState(b, indexOf(*b, {{0, 1}, {-1, 1, 0}}));
  const auto d = stringDiagnostics(psi, kPath, {0, 2}, kPairs);
  EXPECT_EQ(d.stringIntactProb, 0.0);
  EXPECT_EQ(d.chargePairProb, 1.0);
  EXPECT_EQ(d.brokenProb, 1.0);
  EXPECT_EQ(d.fluxProfile, (std::vector<double>{0.0, 1.0}));
}

TEST(String, FullyScreened) {
  const auto b = chain();
  const auto psi = QuantumState::basisState(b, indexOf(*b, {{0, 0}, {-1, 0, 1}}));
  const auto d = stringDiagnostics(psi, kPath, {0, 2}, kPairs);
  EXPECT_EQ(d.chargePairProb, 0.0);  // charges sit on non-adjacent vertices
  EXPECT_EQ(d.brokenProb, 1.0);
  const auto far = stringDiagnostics(psi, kPath, {0, 2}, {{0, 2}});
  EXPECT_EQ(far.chargePairProb, 1.0);
}

TEST(String, RejectsBrokenPaths) {
  const auto b = chain();
  const auto psi = QuantumState::basisState(b, 0);
  EXPECT_THROW(stringDiagnostics(psi, {}, {0, 2}, kPairs), InvalidArgument);
  EXPECT_THROW(stringDiagnostics(psi, {{1, +1}}, {0, 2}, kPairs), InvalidArgument);
  EXPECT_THROW(stringDiagnostics(psi, {{0, +1}}, {0, 2}, kPairs), InvalidArgument);
  EXPECT_THROW(stringDiagnostics(psi, kPath, {0, 2}, {{0, 7}}), InvalidArgument);
  EXPECT_NO_THROW(stringDiagnostics(psi, {{1, -1}, {0, -1}}, {2, 0}, kPairs));
}

TEST(Sampling, DeterministicForSeed) {
  const auto b = chain();
  Vector v = Vector::Ones(Eigen::Index(b->size()));
  const QuantumState psi(b, v / v.norm());
  const auto a = sampleConfigurations(psi, 500, 17);
  EXPECT_EQ(a, sampleConfigurations(psi, 500, 17));
  EXPECT_NE(a, sampleConfigurations(psi, 500, 18));
  EXPECT_TRUE(sampleConfigurations(psi, 0, 1).empty());
  EXPECT_THROW(sampleConfigurations(psi, -1, 1), InvalidArgument);
}

TEST(Sampling, MeanConvergesToExpectation) {
  const auto b = chain();
  const size_t x = indexOf(*b, {{1, 1}, {0, 0, 0}});
  const size_t y = indexOf(*b, {{0, 0}, {-1, 0, 1}});
  Vector v = Vector::Zero(Eigen::Index(b->size()));
  v[Eigen::Index(x)] = std::sqrt(0.25);
  v[Eigen::Index(y)] = std::sqrt(0.75);
  const QuantumState psi(b, v);
  const auto s = sampleConfigurations(psi, 20000, 3);
  for (size_t i : s) EXPECT_TRUE(i == x || i == y);
  const auto mean = sampledElectricMean(*b, s);
  // Binomial standard error is about 0.003.
  EXPECT_NEAR(mean[0], 0.25, 0.02);
  EXPECT_EQ(mean[0], mean[1]);
  EXPECT_THROW(sampleConfigurations(QuantumState(b, Vector::Zero(v.size())), 1, 1),
               InvalidArgument);
}

}  // namespace
}  // namespace ahsim
