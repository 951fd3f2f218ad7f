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

#include <cstdint>
#include <utility>
#include <vector>

#include "ahsim/lattice.hpp"
#include "ahsim/operators.hpp"
#include "ahsim/state.hpp"

namespace ahsim {

/// Per-site mean and probability distribution of an integer field.
struct FieldDistribution {
  std::vector<double> mean;
  /// distribution[s][j] is the probability of value offset + j at site s.
  std::vector<std::vector<double>> distribution;
  int offset = 0;
};

FieldDistribution electricFieldMap(const QuantumState& psi);
FieldDistribution chargeMap(const QuantumState& psi);

/// max_n ||(G_n - q_n) psi||.
double gaussResidual(const QuantumState& psi, const StaticCharges& charges);

struct StringDiagnostics {
  double stringIntactProb = 0.0;  // flux +1 along the path on every link
  double chargePairProb = 0.0;    // Q != 0 at both vertices of a break pair
  double brokenProb = 0.0;        // path not intact and some Q != 0
  std::vector<double> fluxProfile;  // oriented <E> along the path
};

/// `path` runs from endpoints.first to endpoints.second.
StringDiagnostics stringDiagnostics(
    const QuantumState& psi, const std::vector<DirectedLink>& path,
    std::pair<int, int> endpoints,
    const std::vector<std::pair<int, int>>& breakPairs);

/// Re <P_p> = <P_p + P_p^dag>/2 per plaquette.
std::vector<double> plaquetteExpectation(const QuantumState& psi,
                                         Variant variant = Variant::Ideal);

/// Basis indices drawn from |psi|^2, reproducible for a given seed.
std::vector<size_t> sampleConfigurations(const QuantumState& psi, int shots,
                                         std::uint64_t seed);

/// Empirical per-link mean field of a sample.
std::vector<double> sampledElectricMean(const Basis& basis,
                                        const std::vector<size_t>& samples);

}  // namespace ahsim
