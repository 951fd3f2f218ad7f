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

#include <memory>

#include "ahsim/couplings.hpp"
#include "ahsim/hilbert.hpp"
#include "ahsim/operators.hpp"
#include "ahsim/sparse_operator.hpp"

namespace ahsim {

/// Raw coefficients of
///   H = mass sum Q^2 - hopping sum (hop + h.c.)
///     + electric sum E^2 - magnetic sum_plaq (P + P^dag).
struct TargetCoefficients {
  double electric = 0.5;
  double magnetic = 0.5;
  double mass = 0.0;
  double hopping = 0.0;
  bool matter = false;

  /// g^2/2, 1/(2g^2), 1/(2R^2), R^2/2. R = 0 removes the matter terms.
  static TargetCoefficients abelianHiggs(double g, double R,
                                         bool magnetic = true);
  static TargetCoefficients kogutSusskind(double g, bool magnetic = true);
};

SparseOperator buildTarget(std::shared_ptr<const Basis> basis,
                           const TargetCoefficients& c, Variant variant);

/// Lattice Abelian-Higgs Hamiltonian. Each geometric plaquette is summed
/// once. With R = 0 the matter terms are dropped and the result equals the
/// Kogut-Susskind operator on the same basis.
SparseOperator buildAbelianHiggs(std::shared_ptr<const Basis> basis, double g,
                                 double R, Variant variant = Variant::Ideal,
                                 bool magnetic = true);

SparseOperator buildKogutSusskind(std::shared_ptr<const Basis> basis, double g,
                                  Variant variant = Variant::Ideal,
                                  bool magnetic = true);

/// Atomic Hamiltonian with hard-core auxiliary bosons.
SparseOperator buildPrimitive(std::shared_ptr<const FockBasis> basis,
                              const MicroscopicCouplings& c,
                              AuxHopping statistics = AuxHopping::UnitAmplitude);

/// Diagonal penalty lambda sum N^chi (N^chi - 1).
SparseOperator buildPenalty(std::shared_ptr<const FockBasis> basis,
                            double lambda);

/// Sum of E^2 over links, of Q^2 over vertices, of (P + P^dag) over
/// plaquettes, and of (hop + h.c.) over links.
SparseOperator electricEnergy(std::shared_ptr<const Basis> basis);
SparseOperator chargeEnergy(std::shared_ptr<const Basis> basis);
SparseOperator magneticSum(std::shared_ptr<const Basis> basis, Variant variant);
SparseOperator hoppingSum(std::shared_ptr<const Basis> basis, Variant variant);

}  // namespace ahsim
