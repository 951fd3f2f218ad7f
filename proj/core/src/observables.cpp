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

#include "ahsim/observables.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ahsim {

namespace {

std::vector<double> probabilities(const QuantumState& psi) {
  std::vector<double> p(static_cast<size_t>(psi.amplitudes.size()));
  for (size_t i = 0; i < p.size(); ++i) {
    p[i] = std::norm(psi.amplitudes[static_cast<Eigen::Index>(i)]);
  }
  return p;
}

template <class Value>
FieldDistribution distributionOf(const QuantumState& psi, int sites, int lo,
                                 int hi, Value value) {
  FieldDistribution fd;
  fd.offset = lo;
  fd.mean.assign(static_cast<size_t>(sites), 0.0);
  fd.distribution.assign(static_cast<size_t>(sites),
                         std::vector<double>(static_cast<size_t>(hi - lo + 1), 0.0));
  const auto p = probabilities(psi);
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    for (int s = 0; s < sites; ++s) {
      const int v = value(i, s);
      fd.mean[static_cast<size_t>(s)] += p[i] * v;
      fd.distribution[static_cast<size_t>(s)][static_cast<size_t>(v - lo)] += p[i];
    }
  }
  return fd;
}

}  // namespace

FieldDistribution electricFieldMap(const QuantumState& psi) {
  const Basis& b = *psi.basis;
  const int e = b.truncation().emax;
  return distributionOf(psi, b.numLinks(), -e, e,
                        [&](size_t i, int l) { return b.electric(i, l); });
}

FieldDistribution chargeMap(const QuantumState& psi) {
  const Basis& b = *psi.basis;
  return distributionOf(psi, b.numVertices(), b.truncation().qmin(),
                        b.truncation().qmax,
                        [&](size_t i, int v) { return b.charge(i, v); });
}

double gaussResidual(const QuantumState& psi, const StaticCharges& charges) {
  const Basis& b = *psi.basis;
  if (static_cast<int>(charges.size()) != b.numVertices()) {
    throw InvalidArgument("one static charge per vertex required");
  }
  const auto* fock = dynamic_cast<const FockBasis*>(&b);
  const auto p = probabilities(psi);
  double worst = 0.0;
  for (int v = 0; v < b.numVertices(); ++v) {
    double acc = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0.0) continue;
      int g = b.gaussValue(i, v);
      if (fock) g -= fock->aux(i, v) - 1;
      const double d = g - charges[static_cast<size_t>(v)];
      acc += p[i] * d * d;
    }
    worst = std::max(worst, std::sqrt(acc));
  }
  return worst;
}

StringDiagnostics stringDiagnostics(
    const QuantumState& psi, const std::vector<DirectedLink>& path,
    std::pair<int, int> endpoints,
    const std::vector<std::pair<int, int>>& breakPairs) {
  const Basis& b = *psi.basis;
  const LatticeGeometry& geom = b.geometry();
  if (path.empty()) throw InvalidArgument("empty string path");
  int at = endpoints.first;
  for (const auto& d : path) {
    if (d.link < 0 || d.link >= geom.numLinks() || (d.sign != 1 && d.sign != -1)) {
      throw InvalidArgument("invalid directed link in path");
    }
    if (geom.tail(d) != at) {
      throw InvalidArgument("path is not connected at link " +
                            geom.describeLink(d.link));
    }
    at = geom.head(d);
  }
  if (at != endpoints.second) {
    throw InvalidArgument("path does not end at the second endpoint");
  }
  for (const auto& [u, v] : breakPairs) {
    if (u < 0 || v < 0 || u >= b.numVertices() || v >= b.numVertices()) {
      throw InvalidArgument("break pair vertex out of range");
    }
  }

  StringDiagnostics sd;
  sd.fluxProfile.assign(path.size(), 0.0);
  const auto p = probabilities(psi);
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    bool intact = true;
    for (size_t k = 0; k < path.size(); ++k) {
      const int m = path[k].sign * b.electric(i, path[k].link);
      sd.fluxProfile[k] += p[i] * m;
      intact = intact && m == 1;
    }
    bool charged = false;
    for (int v = 0; v < b.numVertices(); ++v) charged = charged || b.charge(i, v) != 0;
    bool pair = false;
    for (const auto& [u, v] : breakPairs) {
      pair = pair || (b.charge(i, u) != 0 && b.charge(i, v) != 0);
    }
    if (intact) sd.stringIntactProb += p[i];
    if (pair) sd.chargePairProb += p[i];
    if (!intact && charged) sd.brokenProb += p[i];
  }
  return sd;
}

std::vector<double> plaquetteExpectation(const QuantumState& psi,
                                         Variant variant) {
  std::vector<double> out;
  for (int q = 0; q < psi.basis->geometry().numPlaquettes(); ++q) {
    const SparseOperator op = plaquetteOperator(psi.basis, q, variant);
    out.push_back(op.expectation(psi.amplitudes).real());
  }
  return out;
}

std::vector<size_t> sampleConfigurations(const QuantumState& psi, int shots,
                                         std::uint64_t seed) {
  if (shots < 0) throw InvalidArgument("shots must be non-negative");
  const auto p = probabilities(psi);
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (size_t i = 0; i < p.size(); ++i) cdf[i] = acc += p[i];
  if (!(acc > 0.0)) throw InvalidArgument("cannot sample the zero state");
  std::mt19937_64 rng(seed);
  std::vector<size_t> out;
  out.reserve(static_cast<size_t>(shots));
  for (int s = 0; s < shots; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    // Skip zero-weight entries that share the cumulative value.
    size_t idx = static_cast<size_t>(it - cdf.begin());
    while (p[idx] == 0.0 && idx + 1 < p.size()) ++idx;
    out.push_back(idx);
  }
  return out;
}

std::vector<double> sampledElectricMean(const Basis& basis,
                                        const std::vector<size_t>& samples) {
  std::vector<double> mean(static_cast<size_t>(basis.numLinks()), 0.0);
  if (samples.empty()) return mean;
  for (size_t i : samples) {
    for (int l = 0; l < basis.numLinks(); ++l) {
      mean[static_cast<size_t>(l)] += basis.electric(i, l);
    }
  }
  for (auto& m : mean) m /= static_cast<double>(samples.size());
  return mean;
}

}  // namespace ahsim
