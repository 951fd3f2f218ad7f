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

#include "ahsim/operators.hpp"

#include <cmath>

namespace ahsim {

namespace {

const AtomicOccupancy& requireAtomic(const Basis& basis) {
  if (!basis.truncation().atomic) {
    throw InvalidArgument("atomic variant needs N0l and N0v");
  }
  return *basis.truncation().atomic;
}

void checkLink(const Basis& basis, int link) {
  if (link < 0 || link >= basis.numLinks()) {
    throw InvalidArgument("unknown link " + std::to_string(link));
  }
}

void checkVertex(const Basis& basis, int vertex) {
  if (vertex < 0 || vertex >= basis.numVertices()) {
    throw InvalidArgument("unknown vertex " + std::to_string(vertex));
  }
}

}  // namespace

double dressedLinkRaise(int m, int n0l) {
  const long nn = static_cast<long>(n0l) * (n0l + 2);
  const long num = nn - 4L * m * (m + 1);
  if (num <= 0) return 0.0;
  return std::sqrt(static_cast<double>(num) / static_cast<double>(nn));
}

double dressedChargeRaise(int q, int n0v) {
  const long num = static_cast<long>(n0v) + q + 1;
  if (num <= 0) return 0.0;
  return std::sqrt(static_cast<double>(num) / n0v);
}

double dressedChargeLower(int q, int n0v) {
  const long num = static_cast<long>(n0v) + q;
  if (num <= 0) return 0.0;
  return std::sqrt(static_cast<double>(num) / n0v);
}

namespace actions {

ConfigAction raiseLink(const Basis& basis, int link, Variant variant) {
  checkLink(basis, link);
  const int emax = basis.truncation().emax;
  if (variant == Variant::Atomic) {
    const int n0l = requireAtomic(basis).n0l;
    return [=](std::span<std::int8_t> r) {
      const int m = r[link];
      if (m >= emax) return 0.0;
      r[link] = static_cast<std::int8_t>(m + 1);
      return dressedLinkRaise(m, n0l);
    };
  }
  return [=](std::span<std::int8_t> r) {
    const int m = r[link];
    if (m >= emax) return 0.0;
    r[link] = static_cast<std::int8_t>(m + 1);
    return 1.0;
  };
}

ConfigAction lowerLink(const Basis& basis, int link, Variant variant) {
  checkLink(basis, link);
  const int emax = basis.truncation().emax;
  if (variant == Variant::Atomic) {
    const int n0l = requireAtomic(basis).n0l;
    return [=](std::span<std::int8_t> r) {
      const int m = r[link];
      if (m <= -emax) return 0.0;
      r[link] = static_cast<std::int8_t>(m - 1);
      return dressedLinkRaise(m - 1, n0l);
    };
  }
  return [=](std::span<std::int8_t> r) {
    const int m = r[link];
    if (m <= -emax) return 0.0;
    r[link] = static_cast<std::int8_t>(m - 1);
    return 1.0;
  };
}

ConfigAction raiseCharge(const Basis& basis, int vertex, Variant variant) {
  checkVertex(basis, vertex);
  const int col = basis.numLinks() + vertex;
  const int qmax = basis.truncation().qmax;
  const int n0v = variant == Variant::Atomic ? requireAtomic(basis).n0v : 0;
  return [=](std::span<std::int8_t> r) {
    const int q = r[col];
    if (q >= qmax) return 0.0;
    r[col] = static_cast<std::int8_t>(q + 1);
    return variant == Variant::Atomic ? dressedChargeRaise(q, n0v) : 1.0;
  };
}

ConfigAction lowerCharge(const Basis& basis, int vertex, Variant variant) {
  checkVertex(basis, vertex);
  const int col = basis.numLinks() + vertex;
  const int qmin = basis.truncation().qmin();
  const int n0v = variant == Variant::Atomic ? requireAtomic(basis).n0v : 0;
  return [=](std::span<std::int8_t> r) {
    const int q = r[col];
    if (q <= qmin) return 0.0;
    r[col] = static_cast<std::int8_t>(q - 1);
    return variant == Variant::Atomic ? dressedChargeLower(q, n0v) : 1.0;
  };
}

ConfigAction moveAux(const FockBasis& basis, int to, int from,
                     AuxHopping statistics) {
  checkVertex(basis, to);
  checkVertex(basis, from);
  const int base = basis.numLinks() + basis.numVertices();
  const int cap = basis.atoms().auxCap;
  return [=](std::span<std::int8_t> r) {
    const int nf = r[base + from];
    if (nf <= 0) return 0.0;
    r[base + from] = static_cast<std::int8_t>(nf - 1);
    const int nt = r[base + to];
    if (nt >= cap) return 0.0;
    r[base + to] = static_cast<std::int8_t>(nt + 1);
    if (statistics == AuxHopping::Bosonic) {
      return std::sqrt(static_cast<double>(nf) * (nt + 1));
    }
    return 1.0;
  };
}

ConfigAction diagonal(std::function<double(std::span<const std::int8_t>)> f) {
  return [f = std::move(f)](std::span<std::int8_t> r) {
    return f(std::span<const std::int8_t>(r.data(), r.size()));
  };
}

std::vector<ConfigAction> plaquette(const Basis& basis, int plaquette,
                                    Variant variant) {
  const auto& plaqs = basis.geometry().plaquettes();
  if (plaquette < 0 || plaquette >= static_cast<int>(plaqs.size())) {
    throw InvalidArgument("unknown plaquette " + std::to_string(plaquette));
  }
  // Rightmost factor acts first: U^dag_{n,k}, U^dag_{n+k,i}, U_{n+i,k}, U_{n,i}.
  std::vector<ConfigAction> out;
  const auto& e = plaqs[plaquette].edges;
  for (int s = 3; s >= 0; --s) {
    out.push_back(e[s].sign > 0 ? lowerLink(basis, e[s].link, variant)
                                : raiseLink(basis, e[s].link, variant));
  }
  return out;
}

std::vector<ConfigAction> matterHop(const Basis& basis, int link,
                                    Variant variant) {
  checkLink(basis, link);
  const Link& l = basis.geometry().links()[link];
  return {lowerCharge(basis, l.target, variant),
          raiseLink(basis, link, variant),
          raiseCharge(basis, l.origin, variant)};
}

std::vector<ConfigAction> auxHop(const FockBasis& basis, int link,
                                 AuxHopping statistics) {
  checkLink(basis, link);
  const Link& l = basis.geometry().links()[link];
  return {moveAux(basis, l.origin, l.target, statistics),
          raiseLink(basis, link, Variant::Atomic)};
}

}  // namespace actions

namespace {

SparseOperator diagonalOf(std::shared_ptr<const Basis> basis,
                          const std::function<double(size_t)>& f) {
  std::vector<double> d(basis->size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = f(i);
  return SparseOperator::diagonal(basis, d);
}

SparseOperator single(std::shared_ptr<const Basis> basis, ConfigAction a) {
  return assemble(basis, {Monomial{1.0, {std::move(a)}}});
}

}  // namespace

SparseOperator electricField(std::shared_ptr<const Basis> basis, int link) {
  return electricPower(basis, link, 1);
}

SparseOperator electricPower(std::shared_ptr<const Basis> basis, int link,
                             int power) {
  checkLink(*basis, link);
  const Basis& b = *basis;
  return diagonalOf(basis, [&](size_t i) {
    return std::pow(static_cast<double>(b.electric(i, link)), power);
  });
}

SparseOperator chargeOperator(std::shared_ptr<const Basis> basis, int vertex) {
  checkVertex(*basis, vertex);
  const Basis& b = *basis;
  return diagonalOf(basis, [&](size_t i) { return b.charge(i, vertex); });
}

SparseOperator linkRaise(std::shared_ptr<const Basis> basis, int link,
                         Variant variant) {
  return single(basis, actions::raiseLink(*basis, link, variant));
}

SparseOperator linkLower(std::shared_ptr<const Basis> basis, int link,
                         Variant variant) {
  return single(basis, actions::lowerLink(*basis, link, variant));
}

SparseOperator matterRaise(std::shared_ptr<const Basis> basis, int vertex,
                           Variant variant) {
  return single(basis, actions::raiseCharge(*basis, vertex, variant));
}

SparseOperator matterLower(std::shared_ptr<const Basis> basis, int vertex,
                           Variant variant) {
  return single(basis, actions::lowerCharge(*basis, vertex, variant));
}

SparseOperator gaugeGenerator(std::shared_ptr<const Basis> basis, int vertex) {
  checkVertex(*basis, vertex);
  const Basis& b = *basis;
  const auto* fock = dynamic_cast<const FockBasis*>(basis.get());
  return diagonalOf(basis, [&](size_t i) {
    int g = b.gaussValue(i, vertex);
    if (fock) g -= fock->aux(i, vertex) - 1;
    return static_cast<double>(g);
  });
}

SparseOperator plaquetteOperator(std::shared_ptr<const Basis> basis,
                                 int plaquette, Variant variant) {
  return assemble(basis,
                  {Monomial{1.0, actions::plaquette(*basis, plaquette, variant)}});
}

SparseOperator matterHopping(std::shared_ptr<const Basis> basis, int link,
                             Variant variant) {
  if (basis->truncation().qmax == 0 && variant == Variant::Ideal) {
    throw InvalidArgument("matter hopping needs qmax >= 1");
  }
  return assemble(basis,
                  {Monomial{1.0, actions::matterHop(*basis, link, variant)}});
}

SparseOperator auxHopping(std::shared_ptr<const FockBasis> basis, int link,
                          AuxHopping statistics) {
  return assemble(basis,
                  {Monomial{1.0, actions::auxHop(*basis, link, statistics)}});
}

SparseOperator bosonLadder(std::shared_ptr<const FockBasis> basis, int site,
                           BosonSpecies species, bool create) {
  const FockBasis& b = *basis;
  if (species == BosonSpecies::LinkA || species == BosonSpecies::LinkB) {
    throw InvalidArgument(
        "a single link boson changes N0l; use linkBilinear for a^dag b");
  }
  checkVertex(b, site);
  ConfigAction act;
  if (species == BosonSpecies::Aux) {
    const int col = b.numLinks() + b.numVertices() + site;
    const int cap = b.atoms().auxCap;
    act = [=](std::span<std::int8_t> r) {
      const int n = r[col];
      if (create) {
        if (n >= cap) return 0.0;
        r[col] = static_cast<std::int8_t>(n + 1);
        return std::sqrt(n + 1.0);
      }
      if (n <= 0) return 0.0;
      r[col] = static_cast<std::int8_t>(n - 1);
      return std::sqrt(static_cast<double>(n));
    };
  } else {
    const int col = b.numLinks() + site;
    const int n0v = b.atoms().n0v;
    const int qmax = b.truncation().qmax;
    const int qmin = b.truncation().qmin();
    act = [=](std::span<std::int8_t> r) {
      const int q = r[col];
      const int n = q + n0v;
      if (create) {
        if (q >= qmax) return 0.0;
        r[col] = static_cast<std::int8_t>(q + 1);
        return std::sqrt(n + 1.0);
      }
      if (q <= qmin || n <= 0) return 0.0;
      r[col] = static_cast<std::int8_t>(q - 1);
      return std::sqrt(static_cast<double>(n));
    };
  }
  return single(basis, std::move(act));
}

SparseOperator linkBilinear(std::shared_ptr<const FockBasis> basis, int link) {
  checkLink(*basis, link);
  const int n0l = basis->atoms().n0l;
  ConfigAction act = [=](std::span<std::int8_t> r) {
    const auto [na, nb] = occupancyFromElectric(r[link], n0l);
    if (nb <= 0) return 0.0;
    r[link] = static_cast<std::int8_t>(r[link] + 1);
    return std::sqrt(static_cast<double>(na + 1) * nb);
  };
  return single(basis, std::move(act));
}

}  // namespace ahsim
