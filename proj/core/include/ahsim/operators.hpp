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

#include "ahsim/hilbert.hpp"
#include "ahsim/sparse_operator.hpp"

namespace ahsim {

/// Ideal: unit ladder elements that annihilate the truncation edge.
/// Atomic: square-root dressed elements of the finite-atom operators.
enum class Variant { Ideal, Atomic };

/// Statistics of the auxiliary hop chi^dag_n U^dag chi_{n+k}.
/// UnitAmplitude drops the sqrt(n) factors of the auxiliary bosons; this is
/// the convention under which the closed-form effective coefficients hold.
enum class AuxHopping { UnitAmplitude, Bosonic };

enum class BosonSpecies { LinkA, LinkB, Eta, Aux };

/// Matrix element <m+1| U^dag |m> of the dressed link raising operator.
double dressedLinkRaise(int m, int n0l);
/// Matrix element <Q+1| Phi^dag |Q>.
double dressedChargeRaise(int q, int n0v);
/// Matrix element <Q-1| Phi |Q>.
double dressedChargeLower(int q, int n0v);

namespace actions {

ConfigAction raiseLink(const Basis& basis, int link, Variant variant);
ConfigAction lowerLink(const Basis& basis, int link, Variant variant);
ConfigAction raiseCharge(const Basis& basis, int vertex, Variant variant);
ConfigAction lowerCharge(const Basis& basis, int vertex, Variant variant);
/// Moves one auxiliary boson from `from` to `to`.
ConfigAction moveAux(const FockBasis& basis, int to, int from,
                     AuxHopping statistics);
/// Multiplies by f(row) without changing the configuration.
ConfigAction diagonal(std::function<double(std::span<const std::int8_t>)> f);

/// Factors of U_{n,i} U_{n+i,k} U^dag_{n+k,i} U^dag_{n,k}, first-acting first.
std::vector<ConfigAction> plaquette(const Basis& basis, int plaquette,
                                    Variant variant);
/// Factors of phi^dag_n U^dag_{n,k} phi_{n+k}, first-acting first.
std::vector<ConfigAction> matterHop(const Basis& basis, int link,
                                    Variant variant);
/// Factors of chi^dag_n U^dag_{n,k} chi_{n+k}, first-acting first.
std::vector<ConfigAction> auxHop(const FockBasis& basis, int link,
                                 AuxHopping statistics);

}  // namespace actions

SparseOperator electricField(std::shared_ptr<const Basis> basis, int link);
SparseOperator electricPower(std::shared_ptr<const Basis> basis, int link,
                             int power);
SparseOperator chargeOperator(std::shared_ptr<const Basis> basis, int vertex);

SparseOperator linkRaise(std::shared_ptr<const Basis> basis, int link,
                         Variant variant);
SparseOperator linkLower(std::shared_ptr<const Basis> basis, int link,
                         Variant variant);
SparseOperator matterRaise(std::shared_ptr<const Basis> basis, int vertex,
                           Variant variant);
SparseOperator matterLower(std::shared_ptr<const Basis> basis, int vertex,
                           Variant variant);

/// G_n = sum_k (E_{n,k} - E_{n-k,k}) - Q_n. On a Fock basis the auxiliary
/// charge -(N^chi_n - 1) is included.
SparseOperator gaugeGenerator(std::shared_ptr<const Basis> basis, int vertex);

SparseOperator plaquetteOperator(std::shared_ptr<const Basis> basis,
                                 int plaquette, Variant variant);

/// phi^dag_n U^dag_{n,k} phi_{n+k}: creates Q=+1 at the link origin, Q=-1 at
/// its target and raises the link field by one. Not Hermitian on its own.
SparseOperator matterHopping(std::shared_ptr<const Basis> basis, int link,
                             Variant variant);

/// chi^dag_n U^dag_{n,k} chi_{n+k} on a Fock basis.
SparseOperator auxHopping(std::shared_ptr<const FockBasis> basis, int link,
                          AuxHopping statistics);

/// Canonical sqrt(n) ladder of a vertex species (Eta or Aux).
SparseOperator bosonLadder(std::shared_ptr<const FockBasis> basis, int site,
                           BosonSpecies species, bool create);

/// a^dag_l b_l with canonical elements sqrt((n_a + 1) n_b).
SparseOperator linkBilinear(std::shared_ptr<const FockBasis> basis, int link);

}  // namespace ahsim
