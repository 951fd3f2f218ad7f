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

#include <string>
#include <vector>

namespace ahsim {

/// Knobs of the atomic model, in a common energy unit.
struct MicroscopicCouplings {
  double lambda = 1.0;        // hard-core penalty
  double epsilon = 0.1;       // auxiliary hopping
  double epsilonPrime = 0.0;  // dynamical-boson hopping, negative by convention
  double mu = 0.0;            // link energy mu E^2
  double muPrime = 0.0;       // vertex energy mu' Q^2
  int n0l = 2;
  int n0v = 1;

  void validate() const;
};

/// Couplings of the simulated lattice theory.
struct DerivedCouplings {
  double g = 0.0;
  double R = 0.0;
  double alpha = 0.0;  // overall energy rescaling of the effective model
};

DerivedCouplings deriveCouplings(double lambda, double epsilon,
                                 double epsilonPrime, int n0l);
DerivedCouplings deriveCouplings(const MicroscopicCouplings& c);

struct InverseCouplings {
  double epsilonOverLambda = 0.0;
  double epsilonPrimeOverEpsilon = 0.0;  // <= 0
};

/// Smallest g reachable for a given N0l (exclusive bound).
double minimalCoupling(int n0l);

/// Closed-form inverse of deriveCouplings. Throws InvalidArgument when g is
/// below minimalCoupling(n0l).
InverseCouplings invertCouplings(double g, double R, int n0l);

enum class Regime { Strong, Intermediate, Weak };

std::string toString(Regime r);

struct RegimeReport {
  Regime regime = Regime::Intermediate;
  bool perturbative = true;
  double ratio = 0.0;          // lambda / epsilon
  double strongMargin = 0.0;   // (lambda/eps)^2 / N0l^2
  double weakMargin = 0.0;     // N0l^2 / (lambda/eps)^2
  double expansionMargin = 0.0;  // (lambda/eps)^2
  std::vector<std::string> warnings;
};

RegimeReport regimeClassify(double lambda, double epsilon, int n0l,
                            double factor = 10.0);

}  // namespace ahsim
