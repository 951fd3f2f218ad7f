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
#include <map>

#include "ahsim/common.hpp"
#include "ahsim/effective.hpp"
#include "ahsim/fit.hpp"
#include "ahsim/hamiltonians.hpp"
#include "oracles.hpp"

namespace ahsim {
namespace {

using Geom = std::shared_ptr<const LatticeGeometry>;

Geom lattice(int lx, int ly) {
  return std::make_shared<const LatticeGeometry>(lx, ly, Boundary::Open);
}

TruncationSpec atomic(int n0l, int qmax = 0) {
  TruncationSpec t;
  t.emax = n0l / 2;
  t.qmax = qmax;
  t.atomic = AtomicOccupancy{n0l, 1, 3};
  return t;
}

MicroscopicCouplings couplings(double lambda, double eps, int n0l) {
  MicroscopicCouplings c;
  c.lambda = lambda;
  c.epsilon = eps;
  c.n0l = n0l;
  return c;
}

struct Problem {
  EffectiveProblem p;
  EffectiveExpansion num;
};

Problem twoSite(double eps, int n0l, int order, double mu = 0.0) {
  const auto g = lattice(2, 1);
  FockConstraints fc;
  fc.auxTotal = 2;
  MicroscopicCouplings c = couplings(1.0, eps, n0l);
  c.mu = mu;
  auto p = buildEffectiveProblem(g, atomic(n0l), fc, c);
  auto num = effectiveNumeric(p.primitive, p.penalty, order);
  return {std::move(p), std::move(num)};
}

Problem plaquette(double eps, int order) {
  const auto g = lattice(2, 2);
  FockConstraints fc;
  fc.auxTotal = 4;
  fc.extendedGauss = StaticCharges{0, 0, 0, 0};
  auto p = buildEffectiveProblem(g, atomic(2), fc, couplings(1.0, eps, 2));
  auto num = effectiveNumeric(p.primitive, p.penalty, order);
  return {std::move(p), std::move(num)};
}

// Numeric order-k block as a function of the single link field.
std::map<int, double> diagonalByField(const EffectiveExpansion& e, int k) {
  std::map<int, double> out;
  const DenseMatrix d = e.order(k).toDense();
  for (size_t i = 0; i < e.basis->size(); ++i) {
    out[e.basis->electric(i, 0)] = d(Eigen::Index(i), Eigen::Index(i)).real();
  }
  return out;
}

const EffectiveTerm& term(const EffectiveExpansion& e, const std::string& name) {
  for (const auto& t : e.terms) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("no term " + name);
}

TEST(Numeric, TwoSiteMatchesPerturbationOracle) {
  for (int n0l : {2, 4}) {
    const double eps = 0.1;
    const auto pr = twoSite(eps, n0l, 4);
    for (int k : {2, 4}) {
      const Eigen::MatrixXd ref = ahsim_oracles::twoSiteEffective(1.0, eps, n0l, k);
      const auto diag = diagonalByField(pr.num, k);
      const DenseMatrix d = pr.num.order(k).toDense();
      EXPECT_LT((d - DenseMatrix(d.diagonal().asDiagonal())).norm(), 1e-15);
      for (int m = -n0l / 2; m <= n0l / 2; ++m) {
        const Eigen::Index r = m + n0l / 2;
        EXPECT_NEAR(diag.at(m), ref(r, r), 1e-15) << "order " << k << " m " << m;
      }
    }
  }
}

TEST(Numeric, TwoSiteOrderTwoClosedForm) {
  const double eps = 0.1;
  const auto pr = twoSite(eps, 2, 2);
  const auto d = diagonalByField(pr.num, 2);
  // (eps^2 / 2 lambda) diag(1, 0, 1) plus a constant.
  EXPECT_NEAR(d.at(1) - d.at(0), 0.5 * eps * eps, 1e-16);
  EXPECT_NEAR(d.at(-1) - d.at(0), 0.5 * eps * eps, 1e-16);
}

TEST(Numeric, FirstOrderIsLinkEnergy) {
  const double mu = 0.03;
  const auto pr = twoSite(0.1, 2, 1, mu);
  const auto d = diagonalByField(pr.num, 1);
  for (int m = -1; m <= 1; ++m) EXPECT_NEAR(d.at(m), mu * m * m, 1e-16);
}

TEST(Numeric, NoHoppingMeansNoCorrections) {
  const auto g = lattice(2, 1);
  FockConstraints fc;
  fc.auxTotal = 2;
  MicroscopicCouplings c = couplings(1.0, 0.0, 2);
  const auto p = buildEffectiveProblem(g, atomic(2), fc, c);
  const auto num = effectiveNumeric(p.primitive, p.penalty, 4);
  for (int k = 2; k <= 4; ++k) EXPECT_EQ(num.order(k).maxAbs(), 0.0);
  const auto s = spectrumValidate(p.primitive, num.total(), 1.0, 3);
  EXPECT_EQ(s.maxGapError, 0.0);
}

TEST(Numeric, OddOrdersVanishInPureGauge) {
  const auto pr = plaquette(0.05, 3);
  EXPECT_EQ(pr.num.order(3).maxAbs(), 0.0);
  EXPECT_EQ(pr.num.order(1).maxAbs(), 0.0);
}

TEST(Numeric, HermitianAndGaugeInvariant) {
  const auto pr = plaquette(0.05, 4);
  for (int k = 1; k <= 4; ++k) {
    const auto& h = pr.num.order(k);
    EXPECT_LE((h - h.adjoint()).maxAbs(), 1e-13);
    for (int n = 0; n < 4; ++n) {
      EXPECT_LE(commutator(h, gaugeGenerator(pr.num.basis, n)).maxAbs(), 1e-12);
    }
  }
  EXPECT_TRUE(pr.num.warnings.empty());
}

// Diagonal of a 3-link chain: no term may couple the two end links, which
// share no vertex. The mixed second difference measures such a coupling.
TEST(Numeric, CounterTermsKeepTheExpansionLocal) {
  const auto g = lattice(4, 1);
  FockConstraints fc;
  fc.auxTotal = 4;
  const auto p = buildEffectiveProblem(g, atomic(2), fc, couplings(1.0, 0.1, 2));
  const auto num = effectiveNumeric(p.primitive, p.penalty, 4);
  for (int k : {2, 4}) {
    const DenseMatrix d = num.order(k).toDense();
    EXPECT_LT((d - DenseMatrix(d.diagonal().asDiagonal())).norm(), 1e-15);
    auto f = [&](int a, int b, int c) {
      const auto i = num.basis->find(packRow({{a, b, c}, {0, 0, 0, 0}}));
      return d(Eigen::Index(*i), Eigen::Index(*i)).real();
    };
    double worst = 0.0;
    for (int b = -1; b <= 1; ++b) {
      for (int a = -1; a <= 1; ++a) {
        for (int c = -1; c <= 1; ++c) {
          worst = std::max(worst, std::abs(f(a, b, c) - f(0, b, c) - f(a, b, 0) + f(0, b, 0)));
        }
      }
    }
    EXPECT_LT(worst, 1e-12) << "order " << k;
  }
}

TEST(Analytic, PrintedCoefficients) {
  const auto g = lattice(2, 2);
  TruncationSpec t = atomic(2);
  const auto a = effectiveAnalytic(couplings(1.0, 0.1, 2), g, t, StaticCharges{0, 0, 0, 0}, 4);
  EXPECT_NEAR(term(a, "plaquette").coefficient, -2.5e-4, 1e-18);
  EXPECT_NEAR(term(a, "electric_renorm_2").coefficient, 5e-3, 1e-17);
  EXPECT_NEAR(term(a, "nn_electric").coefficient, -(2.0 / 3.0) * 1e-4 / 64.0, 1e-19);
  EXPECT_NEAR(term(a, "nn_electric").coefficient, -1.0417e-6, 1e-10);
  EXPECT_NEAR(term(a, "electric_quartic").coefficient, 8e-4 / 64.0, 1e-19);
  EXPECT_EQ(a.order(3).maxAbs(), 0.0);
}

TEST(Compare, OrderTwoAgreesUpToConstant) {
  for (int n0l : {2, 4}) {
    const auto pr = twoSite(0.1, n0l, 2);
    const auto a = effectiveAnalytic(couplings(1.0, 0.1, n0l), pr.num.basis, 2);
    const auto rep = compareExpansions(pr.num, a, 2);
    const auto& o = rep.orders.at(1);
    EXPECT_LT(o.residualNorm, 1e-15);
    for (const auto& t : o.terms) {
      if (t.name == "electric_renorm_2") {
        ASSERT_TRUE(t.fitted);
        EXPECT_NEAR(*t.fitted / t.analytic, 1.0, 1e-10);
      }
    }
  }
}

TEST(Compare, OrderThreeBothZero) {
  const auto pr = plaquette(0.05, 3);
  const auto a = effectiveAnalytic(couplings(1.0, 0.05, 2), pr.num.basis, 3);
  const auto rep = compareExpansions(pr.num, a, 3);
  EXPECT_EQ(rep.orders.at(2).frobenius, 0.0);
}

TEST(Compare, PlaquetteCoefficientFit) {
  const double eps = 0.05;
  const auto pr = plaquette(eps, 4);
  const auto a = effectiveAnalytic(couplings(1.0, eps, 2), pr.num.basis, 4);
  const auto rep = compareExpansions(pr.num, a, 4);
  bool found = false;
  for (const auto& t : rep.orders.at(3).terms) {
    if (t.name != "plaquette") continue;
    found = true;
    ASSERT_TRUE(t.fitted);
    EXPECT_NEAR(*t.fitted / (-2.5 * std::pow(eps, 4)), 1.0, 1e-10);
  }
  EXPECT_TRUE(found);
  const auto j = rep.toJson();
  EXPECT_EQ(j["schema"], "ahsim.effective.v1");
}

TEST(Spectrum, SweepExponentOnTwoSites) {
  SweepSetup s;
  s.geometry = lattice(2, 1);
  s.truncation = atomic(2);
  s.constraints.auxTotal = 2;
  s.couplings = couplings(1.0, 0.1, 2);
  s.order = 2;
  const auto rep = spectrumSweep(s);
  ASSERT_EQ(rep.errors.size(), 3u);
  EXPECT_GE(rep.exponent, 3.5);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(rep.scaledErrors[i], rep.errors[i] * rep.points[i].alpha, 1e-12 * rep.scaledErrors[i]);
  }
}

TEST(Spectrum, OrderFourBeatsOrderTwoOnPlaquette) {
  const auto pr = plaquette(0.05, 4);
  const double alpha = deriveCouplings(1.0, 0.05, 0.0, 2).alpha;
  const auto s2 = spectrumValidate(pr.p.primitive, pr.num.total(2), alpha, 3);
  const auto s4 = spectrumValidate(pr.p.primitive, pr.num.total(4), alpha, 3);
  EXPECT_LT(s4.maxGapError, s2.maxGapError);
}

TEST(Budget, ReferenceRows) {
  const auto b = correctionBudget(1.0, 0.0, 2);
  EXPECT_NEAR(b.row("electric_quartic").relative, 0.05, 1e-15);
  EXPECT_NEAR(b.row("plaquette").magnitude, 0.5, 1e-15);
  EXPECT_EQ(b.row("dressed_hopping").magnitude, 0.0);
  EXPECT_EQ(b.row("squared_hopping").magnitude, 0.0);
  EXPECT_EQ(b.row("dressed_hopping_mu_prime").magnitude, 0.0);
  EXPECT_THROW(b.row("nonexistent"), InvalidArgument);
}

TEST(Budget, LinkWeightsDecayAsInverseFourthPower) {
  // Local slope between N0l = 64 and 128; 1/(N(N+2))^2 tends to N^-4.
  const double g = 2.0;
  for (const char* name : {"electric_quartic", "nn_electric"}) {
    const double a = std::abs(correctionBudget(g, 0.0, 64).row(name).magnitude);
    const double b = std::abs(correctionBudget(g, 0.0, 128).row(name).magnitude);
    EXPECT_NEAR(std::log(b / a) / std::log(2.0), -4.0, 0.05) << name;
  }
  std::vector<double> n{2, 4, 8, 16}, w;
  for (double x : n) w.push_back(correctionBudget(g, 0.0, int(x)).row("electric_quartic").magnitude);
  EXPECT_LT(powerLawExponent(n, w), -3.0);
}

TEST(Fit, DetectsAliasedElectricPowers) {
  // At Emax = 1 the powers E^2 and E^4 coincide.
  Eigen::VectorXcd e2(3), e4(3), one(3);
  e2 << 1, 0, 1;
  e4 << 1, 0, 1;
  one << 1, 1, 1;
  const DenseMatrix target = DenseMatrix((0.3 * one + 2.0 * e2).asDiagonal());
  const auto r = fitCoefficients(target, {{"one", DenseMatrix(one.asDiagonal())},
                                          {"e2", DenseMatrix(e2.asDiagonal())},
                                          {"e4", DenseMatrix(e4.asDiagonal())}});
  EXPECT_NEAR(*r.entries[0].coefficient, 0.3, 1e-14);
  EXPECT_NEAR(*r.entries[1].coefficient, 2.0, 1e-14);
  EXPECT_FALSE(r.entries[2].coefficient.has_value());
  EXPECT_FALSE(r.entries[2].note.empty());
  EXPECT_LT(r.residualNorm, 1e-14);
}

TEST(Fit, InvariantUnderBasisPermutation) {
  const auto pr = plaquette(0.05, 4);
  const auto a = effectiveAnalytic(couplings(1.0, 0.05, 2), pr.num.basis, 4);
  const DenseMatrix t = pr.num.order(4).toDense();
  std::vector<DictionaryEntry> dict{{"one", DenseMatrix::Identity(t.rows(), t.cols())}};
  for (const auto& x : a.terms) {
    if (x.order == 4) dict.push_back({x.name, x.unit.toDense()});
  }
  const auto base = fitCoefficients(t, dict);
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(t.rows());
  perm.setIdentity();
  std::reverse(perm.indices().data(), perm.indices().data() + perm.size());
  auto permuted = dict;
  for (auto& d : permuted) d.matrix = perm * d.matrix * perm.transpose();
  const auto moved = fitCoefficients(perm * t * perm.transpose(), permuted);
  ASSERT_EQ(base.entries.size(), moved.entries.size());
  for (size_t i = 0; i < base.entries.size(); ++i) {
    ASSERT_EQ(base.entries[i].coefficient.has_value(), moved.entries[i].coefficient.has_value());
    if (base.entries[i].coefficient) {
      EXPECT_NEAR(*base.entries[i].coefficient, *moved.entries[i].coefficient, 1e-12);
    }
  }
}

TEST(Fit, PowerLaw) {
  std::vector<double> x{1, 2, 4, 8}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -2.0));
  EXPECT_NEAR(powerLawExponent(x, y), -2.0, 1e-12);
}

}  // namespace
}  // namespace ahsim
