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

#include "ahsim/common.hpp"
#include "ahsim/operators.hpp"

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

TruncationSpec atomic(int n0l, int n0v, int qmax, int cap = 3) {
  TruncationSpec t = ideal(n0l / 2, qmax);
  t.atomic = AtomicOccupancy{n0l, n0v, cap};
  return t;
}

// Amplitude <to| op |from> looked up by configuration.
cplx element(const SparseOperator& op, const Basis& b, const GaugeConfig& to,
             const GaugeConfig& from) {
  const auto i = b.find(packRow(to));
  const auto j = b.find(packRow(from));
  if (!i || !j) throw std::runtime_error("configuration not in basis");
  return op.toDense()(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*j));
}

TEST(Electric, DiagonalOfLoopLabel) {
  const auto b = enumerateSector(lattice(2, 2), ideal(1, 0), {0, 0, 0, 0});
  for (int l = 0; l < 4; ++l) {
    const DenseMatrix e = electricField(b, l).toDense();
    std::vector<double> d;
    for (Eigen::Index i = 0; i < 3; ++i) d.push_back(e(i, i).real());
    std::sort(d.begin(), d.end());
    EXPECT_EQ(d, (std::vector<double>{-1.0, 0.0, 1.0}));
    EXPECT_EQ((e - DenseMatrix(e.diagonal().asDiagonal())).norm(), 0.0);
  }
}

TEST(Electric, AtomicOccupancyReading) {
  const auto b = enumerateFull(lattice(2, 1), atomic(2, 1, 0));
  const auto [na, nb] = occupancyFromElectric(-1, 2);
  EXPECT_EQ(na, 0);
  EXPECT_EQ(nb, 2);
  const auto i = b->find(packRow({{-1}, {0, 0}}));
  ASSERT_TRUE(i);
  EXPECT_EQ(electricField(b, 0).toDense()(static_cast<Eigen::Index>(*i),
                                          static_cast<Eigen::Index>(*i)).real(), -1.0);
}

TEST(LinkRaise, AtomicAndIdealElements) {
  const auto a = enumerateFull(lattice(2, 1), atomic(2, 1, 0));
  const auto up = linkRaise(a, 0, Variant::Atomic);
  EXPECT_DOUBLE_EQ(element(up, *a, {{1}, {0, 0}}, {{0}, {0, 0}}).real(), 1.0);
  const auto top = a->find(packRow({{1}, {0, 0}}));
  EXPECT_EQ(up.toDense().col(static_cast<Eigen::Index>(*top)).norm(), 0.0);

  const auto b = enumerateFull(lattice(2, 1), ideal(2, 0));
  const auto ui = linkRaise(b, 0, Variant::Ideal);
  EXPECT_EQ(element(ui, *b, {{-1}, {0, 0}}, {{-2}, {0, 0}}), cplx(1.0));
}

TEST(LinkRaise, DressingMatchesClosedForm) {
  for (int n : {2, 4, 8, 16}) {
    for (int m = -n / 2; m <= n / 2; ++m) {
      const double want = m == n / 2 ? 0.0
                                     : std::sqrt(double(n / 2 + m + 1) * (n / 2 - m) /
                                                 (double(n / 2) * (n / 2 + 1)));
      EXPECT_NEAR(dressedLinkRaise(m, n), want, 1e-15);
    }
  }
}

// [E, U^dag] = U^dag away from the truncation edge.
TEST(Ladder, ElectricCommutatorOnInterior) {
  for (Variant v : {Variant::Ideal, Variant::Atomic}) {
    const auto b = v == Variant::Ideal ? enumerateFull(lattice(2, 1), ideal(2, 0))
                                       : enumerateFull(lattice(2, 1), atomic(4, 1, 0));
    const auto up = linkRaise(b, 0, v);
    const DenseMatrix d = (commutator(electricField(b, 0), up) - up).toDense();
    for (size_t i = 0; i < b->size(); ++i) {
      for (size_t j = 0; j < b->size(); ++j) {
        EXPECT_EQ(d(Eigen::Index(i), Eigen::Index(j)), cplx(0.0));
      }
    }
  }
}

TEST(Ladder, ChargeCommutatorOnInterior) {
  const auto b = enumerateFull(lattice(2, 1), ideal(0, 2));
  const auto up = matterRaise(b, 0, Variant::Ideal);
  EXPECT_EQ((commutator(chargeOperator(b, 0), up) - up).toDense().norm(), 0.0);
  const auto down = matterLower(b, 0, Variant::Ideal);
  EXPECT_EQ((commutator(chargeOperator(b, 0), down) + down).toDense().norm(), 0.0);
}

// f(E) U^dag = U^dag f(E + 1) on rows below the edge.
TEST(Ladder, ShiftIdentityForPolynomials) {
  const auto b = enumerateFull(lattice(2, 1), ideal(3, 0));
  const auto up = linkRaise(b, 0, Variant::Ideal);
  const auto id = SparseOperator::identity(b);
  for (int k = 1; k <= 4; ++k) {
    SparseOperator shifted = electricField(b, 0) + id;
    SparseOperator p = shifted;
    for (int j = 1; j < k; ++j) p = p * shifted;
    const DenseMatrix lhs = (electricPower(b, 0, k) * up).toDense();
    const DenseMatrix rhs = (up * p).toDense();
    for (size_t i = 0; i < b->size(); ++i) {
      if (b->electric(i, 0) == b->truncation().emax) continue;
      EXPECT_LT((lhs.row(Eigen::Index(i)) - rhs.row(Eigen::Index(i))).norm(), 1e-12) << k;
    }
  }
}

TEST(Ladder, AtomicAnticommutatorIdentity) {
  for (int n : {2, 4, 6}) {
    const auto b = enumerateFull(lattice(2, 1), atomic(n, 1, 0));
    const auto up = linkRaise(b, 0, Variant::Atomic);
    const auto dn = linkLower(b, 0, Variant::Atomic);
    const SparseOperator lhs = up * dn + dn * up;
    const double nn = double(n) * (n + 2);
    const SparseOperator rhs =
        (SparseOperator::identity(b) - electricPower(b, 0, 2) * (4.0 / nn)) * 2.0;
    EXPECT_LT((lhs - rhs).toDense().norm(), 1e-14);
  }
}

TEST(Generator, SectorAndEmptyState) {
  const auto b = enumerateSector(lattice(3, 1), ideal(1, 0), {1, 0, -1});
  const DenseMatrix g0 = gaugeGenerator(b, 0).toDense();
  EXPECT_EQ((g0 - DenseMatrix::Identity(g0.rows(), g0.cols())).norm(), 0.0);

  const auto z = enumerateSector(lattice(2, 2), ideal(1, 0), {0, 0, 0, 0});
  const auto e = z->find(std::vector<std::int8_t>(8, 0));
  ASSERT_TRUE(e);
  for (int v = 0; v < 4; ++v) {
    const Vector s = gaugeGenerator(z, v).apply(
        Vector::Unit(static_cast<Eigen::Index>(z->size()), static_cast<Eigen::Index>(*e)));
    EXPECT_EQ(s.norm(), 0.0);
  }
}

TEST(Generator, FullBasisSpectrumRange) {
  const auto b = enumerateFull(lattice(2, 1), ideal(1, 1));
  const DenseMatrix g = gaugeGenerator(b, 0).toDense();
  std::set<int> seen;
  for (Eigen::Index i = 0; i < g.rows(); ++i) seen.insert(int(g(i, i).real()));
  // One link and one charge: div - Q ranges over [-2, 2] at an end vertex;
  // including both ends the combined range is {-3..3} only on a middle vertex.
  EXPECT_EQ(*seen.begin(), -2);
  EXPECT_EQ(*seen.rbegin(), 2);
  const auto c = enumerateFull(lattice(3, 1), ideal(1, 1));
  const DenseMatrix gm = gaugeGenerator(c, 1).toDense();
  std::set<int> mid;
  for (Eigen::Index i = 0; i < gm.rows(); ++i) mid.insert(int(gm(i, i).real()));
  EXPECT_EQ(mid, (std::set<int>{-3, -2, -1, 0, 1, 2, 3}));
}

TEST(Plaquette, IdealLoopShift) {
  const auto b = enumerateSector(lattice(2, 2), ideal(1, 0), {0, 0, 0, 0});
  const DenseMatrix p = plaquetteOperator(b, 0, Variant::Ideal).toDense();
  int nonzero = 0;
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      if (p(i, j) != cplx(0.0)) {
        ++nonzero;
        EXPECT_EQ(p(i, j), cplx(1.0));
        // Loop label is the field on the anchoring x-link.
        EXPECT_EQ(b->electric(size_t(i), 0), b->electric(size_t(j), 0) - 1);
      }
    }
  }
  EXPECT_EQ(nonzero, 2);
  const auto e = *b->find(std::vector<std::int8_t>(8, 0));
  const Vector out = plaquetteOperator(b, 0, Variant::Ideal)
                         .apply(Vector::Unit(3, static_cast<Eigen::Index>(e)));
  Eigen::Index k;
  out.cwiseAbs().maxCoeff(&k);
  EXPECT_EQ(b->electric(size_t(k), 0), -1);
}

TEST(Plaquette, AtomicTopLoopAmplitude) {
  const auto b = enumerateSector(lattice(2, 2), atomic(2, 1, 0), {0, 0, 0, 0});
  const auto p = plaquetteOperator(b, 0, Variant::Atomic);
  const DenseMatrix d = p.toDense();
  size_t top = 0, mid = 0;
  for (size_t i = 0; i < 3; ++i) {
    if (b->electric(i, 0) == 1) top = i;
    if (b->electric(i, 0) == 0) mid = i;
  }
  const double want = dressedLinkRaise(0, 2) * dressedLinkRaise(0, 2) *
                      dressedLinkRaise(-1, 2) * dressedLinkRaise(-1, 2);
  EXPECT_DOUBLE_EQ(want, 1.0);
  EXPECT_DOUBLE_EQ(d(Eigen::Index(mid), Eigen::Index(top)).real(), want);
}

TEST(MatterHopping, CreatesChargePairWithFlux) {
  const auto b = enumerateSector(lattice(2, 1), ideal(1, 1), {0, 0});
  const auto h = matterHopping(b, 0, Variant::Ideal);
  const auto hh = h + h.adjoint();
  const GaugeConfig empty{{0}, {0, 0}};
  const GaugeConfig pair{{1}, {1, -1}};
  EXPECT_EQ(element(hh, *b, pair, empty), cplx(1.0));

  TruncationSpec t = atomic(2, 1, 1);
  const auto a = enumerateSector(lattice(2, 1), t, {0, 0});
  const auto ha = matterHopping(a, 0, Variant::Atomic);
  // phi_{target}: sqrt(n_eta / N0v) at n_eta = 1; U^dag: dressed m = 0;
  // phi^dag_{origin}: sqrt((n_eta + 1) / N0v) at n_eta = 1.
  const double want = std::sqrt(1.0 / 1.0) * std::sqrt(1.0 - 0.0) * std::sqrt(2.0 / 1.0);
  EXPECT_NEAR(element(ha, *a, pair, empty).real(), want, 1e-15);
}

TEST(MatterHopping, AnnihilatesAtChargeEdge) {
  const auto b = enumerateSector(lattice(3, 1), ideal(1, 1), {0, 0, 0});
  const auto h = matterHopping(b, 0, Variant::Ideal);
  // Origin already at Q = +1: raising it leaves the truncation.
  const auto i = b->find(packRow({{1, 0}, {1, -1, 0}}));
  ASSERT_TRUE(i);
  EXPECT_EQ(h.apply(Vector::Unit(Eigen::Index(b->size()), Eigen::Index(*i))).norm(), 0.0);
}

TEST(GaugeInvariance, CompositesCommuteWithGenerators) {
  for (Variant v : {Variant::Ideal, Variant::Atomic}) {
    const auto b = v == Variant::Ideal ? enumerateFull(lattice(2, 2), ideal(1, 1))
                                       : enumerateFull(lattice(2, 2), atomic(2, 1, 1));
    std::vector<SparseOperator> terms;
    const auto p = plaquetteOperator(b, 0, v);
    terms.push_back(p + p.adjoint());
    for (int l = 0; l < b->numLinks(); ++l) {
      const auto h = matterHopping(b, l, v);
      terms.push_back(h + h.adjoint());
      terms.push_back(electricPower(b, l, 2));
    }
    for (int n = 0; n < b->numVertices(); ++n) terms.push_back(chargeOperator(b, n) * chargeOperator(b, n));
    for (const auto& t : terms) {
      for (int n = 0; n < b->numVertices(); ++n) {
        EXPECT_EQ(commutator(t, gaugeGenerator(b, n)).maxAbs(), 0.0);
      }
    }
  }
}

TEST(BosonLadder, CanonicalElementsAndCap) {
  TruncationSpec t = atomic(2, 2, 2, 2);
  const auto b = enumerateFock(lattice(2, 1), t, {});
  const auto aDown = bosonLadder(b, 0, BosonSpecies::Aux, false);
  const auto aUp = bosonLadder(b, 0, BosonSpecies::Aux, true);
  const DenseMatrix dn = aDown.toDense();
  const DenseMatrix up = aUp.toDense();
  for (size_t j = 0; j < b->size(); ++j) {
    const int n = b->aux(j, 0);
    const double colDown = dn.col(Eigen::Index(j)).norm();
    const double colUp = up.col(Eigen::Index(j)).norm();
    EXPECT_NEAR(colDown, std::sqrt(double(n)), 1e-15);
    if (n == 2) EXPECT_EQ(colUp, 0.0);
    else EXPECT_NEAR(colUp, std::sqrt(n + 1.0), 1e-15);
  }
  const DenseMatrix eta = bosonLadder(b, 1, BosonSpecies::Eta, false).toDense();
  for (size_t j = 0; j < b->size(); ++j) {
    const int n = b->occupancyEta(j, 1);
    const bool inside = b->charge(j, 1) - 1 >= t.qmin();
    EXPECT_NEAR(eta.col(Eigen::Index(j)).norm(), inside ? std::sqrt(double(n)) : 0.0, 1e-15);
  }
  EXPECT_THROW(bosonLadder(b, 0, BosonSpecies::LinkA, true), InvalidArgument);
}

TEST(BosonLadder, LinkBilinearIsScaledDressedRaise) {
  const auto b = enumerateFock(lattice(2, 1), atomic(4, 1, 0, 0), {});
  const DenseMatrix ab = linkBilinear(b, 0).toDense();
  const DenseMatrix up = linkRaise(b, 0, Variant::Atomic).toDense();
  EXPECT_LT((ab - up * std::sqrt(2.0 * 3.0)).norm(), 1e-13);
}

}  // namespace
}  // namespace ahsim
