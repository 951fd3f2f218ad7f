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

#include "ahsim/couplings.hpp"

#include <cmath>

#include "ahsim/common.hpp"

namespace ahsim {

void MicroscopicCouplings::validate() const {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (epsilon < 0.0) throw InvalidArgument("epsilon must be non-negative");
  if (epsilonPrime > 0.0) {
    throw InvalidArgument("epsilon' must be non-positive");
  }
  if (n0l <= 0 || n0l % 2 != 0) {
    throw InvalidArgument("N0l must be a positive even integer");
  }
  if (n0v < 1) throw InvalidArgument("N0v must be positive");
}

DerivedCouplings deriveCouplings(double lambda, double epsilon,
                                 double epsilonPrime, int n0l) {
  if (!(lambda > 0.0) || !(epsilon > 0.0)) {
    throw InvalidArgument("lambda and epsilon must be positive");
  }
  if (n0l <= 0 || n0l % 2 != 0) {
    throw InvalidArgument("N0l must be a positive even integer");
  }
  const double nn = static_cast<double>(n0l) * (n0l + 2);
  const double r = lambda / epsilon;
  const double x2 = 1.0 / (r * r);
  const double renorm = 1.0 + 4.5 * x2;
  DerivedCouplings d;
  d.g = std::pow(8.0 / (5.0 * nn) * r * r * renorm, 0.25);
  d.alpha = std::sqrt(nn / 40.0 * std::pow(lambda, 4) /
                      std::pow(epsilon, 6) / renorm);
  d.R = std::sqrt(0.4 * r * r * r) * std::sqrt(std::abs(epsilonPrime) / epsilon) /
        d.g;
  return d;
}

DerivedCouplings deriveCouplings(const MicroscopicCouplings& c) {
  return deriveCouplings(c.lambda, c.epsilon, c.epsilonPrime, c.n0l);
}

double minimalCoupling(int n0l) {
  const double nn = static_cast<double>(n0l) * (n0l + 2);
  return std::pow(7.2 / nn, 0.25);
}

InverseCouplings invertCouplings(double g, double R, int n0l) {
  if (n0l <= 0 || n0l % 2 != 0) {
    throw InvalidArgument("N0l must be a positive even integer");
  }
  if (R < 0.0) throw InvalidArgument("R must be non-negative");
  const double nn = static_cast<double>(n0l) * (n0l + 2);
  // g^4 = 8/(5 NN) (r^2 + 4.5) with r = lambda/eps.
  const double r2 = std::pow(g, 4) * 5.0 * nn / 8.0 - 4.5;
  if (!(r2 > 0.0)) {
    throw InvalidArgument("no positive solution: g must exceed " +
                          std::to_string(minimalCoupling(n0l)) +
                          " for N0l=" + std::to_string(n0l));
  }
  InverseCouplings inv;
  inv.epsilonOverLambda = 1.0 / std::sqrt(r2);
  const double x = inv.epsilonOverLambda;
  inv.epsilonPrimeOverEpsilon = -2.5 * (R * g) * (R * g) * x * x * x;
  return inv;
}

std::string toString(Regime r) {
  switch (r) {
    case Regime::Strong:
      return "strong";
    case Regime::Weak:
      return "weak";
    default:
      return "intermediate";
  }
}

RegimeReport regimeClassify(double lambda, double epsilon, int n0l,
                            double factor) {
  if (!(lambda > 0.0) || !(epsilon > 0.0)) {
    throw InvalidArgument("lambda and epsilon must be positive");
  }
  RegimeReport rep;
  rep.ratio = lambda / epsilon;
  const double r2 = rep.ratio * rep.ratio;
  const double n2 = static_cast<double>(n0l) * n0l;
  rep.strongMargin = r2 / n2;
  rep.weakMargin = n2 / r2;
  rep.expansionMargin = r2;
  if (rep.ratio < 2.0) {
    rep.perturbative = false;
    rep.warnings.push_back("perturbation theory invalid: lambda/epsilon = " +
                           std::to_string(rep.ratio));
  }
  if (rep.strongMargin >= factor) {
    rep.regime = Regime::Strong;
  } else if (rep.weakMargin >= factor) {
    rep.regime = Regime::Weak;
    if (r2 < factor) {
      rep.warnings.push_back("(lambda/epsilon)^2 is not large: " +
                             std::to_string(r2));
    }
  } else {
    rep.regime = Regime::Intermediate;
  }
  return rep;
}

}  // namespace ahsim
