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

#include "ahsim/hamiltonians.hpp"

namespace ahsim {

TargetCoefficients TargetCoefficients::abelianHiggs(double g, double R,
                                                    bool magnetic) {
  if (!(g > 0.0)) throw InvalidArgument("g must be positive");
  if (R < 0.0) throw InvalidArgument("R must be non-negative");
  TargetCoefficients c;
  c.electric = 0.5 * g * g;
  c.magnetic = magnetic ? 0.5 / (g * g) : 0.0;
  c.matter = R > 0.0;
  c.mass = c.matter ? 0.5 / (R * R) : 0.0;
  c.hopping = c.matter ? 0.5 * R * R : 0.0;
  return c;
}

TargetCoefficients TargetCoefficients::kogutSusskind(double g, bool magnetic) {
  return abelianHiggs(g, 0.0, magnetic);
}

SparseOperator electricEnergy(std::shared_ptr<const Basis> basis) {
  const Basis& b = *basis;
  std::vector<double> d(b.size(), 0.0);
  for (size_t i = 0; i < b.size(); ++i) {
    long s = 0;
    for (int l = 0; l < b.numLinks(); ++l) {
      s += static_cast<long>(b.electric(i, l)) * b.electric(i, l);
    }
    d[i] = static_cast<double>(s);
  }
  return SparseOperator::diagonal(basis, d);
}

SparseOperator chargeEnergy(std::shared_ptr<const Basis> basis) {
  const Basis& b = *basis;
  std::vector<double> d(b.size(), 0.0);
  for (size_t i = 0; i < b.size(); ++i) {
    long s = 0;
    for (int v = 0; v < b.numVertices(); ++v) {
      s += static_cast<long>(b.charge(i, v)) * b.charge(i, v);
    }
    d[i] = static_cast<double>(s);
  }
  return SparseOperator::diagonal(basis, d);
}

SparseOperator magneticSum(std::shared_ptr<const Basis> basis,
                           Variant variant) {
  std::vector<Monomial> terms;
  for (int p = 0; p < basis->geometry().numPlaquettes(); ++p) {
    terms.push_back({1.0, actions::plaquette(*basis, p, variant)});
  }
  return assemble(basis, terms, {.addConjugate = true});
}

SparseOperator hoppingSum(std::shared_ptr<const Basis> basis,
                          Variant variant) {
  std::vector<Monomial> terms;
  for (int l = 0; l < basis->numLinks(); ++l) {
    terms.push_back({1.0, actions::matterHop(*basis, l, variant)});
  }
  return assemble(basis, terms, {.addConjugate = true});
}

SparseOperator buildTarget(std::shared_ptr<const Basis> basis,
                           const TargetCoefficients& c, Variant variant) {
  SparseOperator h = electricEnergy(basis) * c.electric;
  if (c.magnetic != 0.0) h = h + magneticSum(basis, variant) * (-c.magnetic);
  if (c.matter) {
    if (c.mass != 0.0) h = h + chargeEnergy(basis) * c.mass;
    if (c.hopping != 0.0) h = h + hoppingSum(basis, variant) * (-c.hopping);
  }
  return h;
}

SparseOperator buildAbelianHiggs(std::shared_ptr<const Basis> basis, double g,
                                 double R, Variant variant, bool magnetic) {
  return buildTarget(basis, TargetCoefficients::abelianHiggs(g, R, magnetic),
                     variant);
}

SparseOperator buildKogutSusskind(std::shared_ptr<const Basis> basis, double g,
                                  Variant variant, bool magnetic) {
  return buildTarget(basis, TargetCoefficients::kogutSusskind(g, magnetic),
                     variant);
}

SparseOperator buildPenalty(std::shared_ptr<const FockBasis> basis,
                            double lambda) {
  const FockBasis& b = *basis;
  std::vector<double> d(b.size(), 0.0);
  for (size_t i = 0; i < b.size(); ++i) {
    long s = 0;
    for (int v = 0; v < b.numVertices(); ++v) {
      const long n = b.aux(i, v);
      s += n * (n - 1);
    }
    d[i] = lambda * static_cast<double>(s);
  }
  return SparseOperator::diagonal(basis, d);
}

SparseOperator buildPrimitive(std::shared_ptr<const FockBasis> basis,
                              const MicroscopicCouplings& c,
                              AuxHopping statistics) {
  c.validate();
  if (c.n0l != basis->atoms().n0l || c.n0v != basis->atoms().n0v) {
    throw InvalidArgument("couplings and Fock basis disagree on N0l/N0v");
  }
  if (c.epsilon != 0.0 && basis->atoms().auxCap < 2) {
    throw InvalidArgument(
        "auxCap < 2 forbids the virtual double occupancy behind the expansion");
  }
  SparseOperator h = buildPenalty(basis, c.lambda);
  if (c.mu != 0.0) h = h + electricEnergy(basis) * c.mu;
  if (c.muPrime != 0.0) h = h + chargeEnergy(basis) * c.muPrime;
  if (c.epsilon != 0.0) {
    std::vector<Monomial> hops;
    for (int l = 0; l < basis->numLinks(); ++l) {
      hops.push_back({c.epsilon, actions::auxHop(*basis, l, statistics)});
    }
    h = h + assemble(basis, hops, {.addConjugate = true});
  }
  if (c.epsilonPrime != 0.0) {
    std::vector<Monomial> hops;
    for (int l = 0; l < basis->numLinks(); ++l) {
      hops.push_back(
          {c.epsilonPrime, actions::matterHop(*basis, l, Variant::Atomic)});
    }
    h = h + assemble(basis, hops, {.addConjugate = true});
  }
  return h;
}

}  // namespace ahsim
