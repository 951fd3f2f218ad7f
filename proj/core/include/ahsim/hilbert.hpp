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
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ahsim/lattice.hpp"

namespace ahsim {

/// Atom numbers of the cold-atom realization.
struct AtomicOccupancy {
  int n0l = 2;     // bosons per link, a + b
  int n0v = 1;     // reference dynamical bosons per vertex
  int auxCap = 3;  // maximal auxiliary occupancy per vertex
};

struct TruncationSpec {
  int emax = 1;
  int qmax = 0;
  std::optional<AtomicOccupancy> atomic;

  /// Lowest admissible charge; bounded by -N0v in atomic mode.
  int qmin() const;
  void validate() const;
};

/// Static charge q_n per vertex, canonical vertex order.
using StaticCharges = std::vector<int>;

struct EnumerationLimits {
  double maxDimension = 2.0e7;
};

enum class BasisKind { Sector, Full, Subset, Fock };

/// Configurations stored as packed int8 rows with a hash index.
///
/// Row layout: m per link, then Q per vertex, then (Fock only) the
/// auxiliary occupancy per vertex.
class Basis {
 public:
  virtual ~Basis() = default;
  Basis(const Basis&) = delete;
  Basis& operator=(const Basis&) = delete;

  virtual BasisKind kind() const = 0;

  size_t size() const { return size_; }
  int width() const { return width_; }
  int numLinks() const { return geom_->numLinks(); }
  int numVertices() const { return geom_->numVertices(); }

  std::span<const std::int8_t> row(size_t i) const {
    return {data_.data() + i * width_, static_cast<size_t>(width_)};
  }
  int electric(size_t i, int link) const { return data_[i * width_ + link]; }
  int charge(size_t i, int vertex) const {
    return data_[i * width_ + numLinks() + vertex];
  }
  std::optional<size_t> find(std::span<const std::int8_t> cfg) const;

  const LatticeGeometry& geometry() const { return *geom_; }
  const std::shared_ptr<const LatticeGeometry>& geometryPtr() const {
    return geom_;
  }
  const TruncationSpec& truncation() const { return trunc_; }

  /// Integer divergence minus charge at a vertex for row i.
  int gaussValue(size_t i, int vertex) const;

  std::string describe(size_t i) const;
  /// One configuration per line in canonical order; for debugging only.
  void exportText(std::ostream& os) const;

 protected:
  Basis(std::shared_ptr<const LatticeGeometry> geom, TruncationSpec trunc,
        std::vector<int> lo, std::vector<int> hi);
  void setRows(std::vector<std::int8_t> rows);

 private:
  std::uint64_t key(std::span<const std::int8_t> cfg) const;

  std::shared_ptr<const LatticeGeometry> geom_;
  TruncationSpec trunc_;
  int width_;
  size_t size_ = 0;
  std::vector<int> lo_;
  std::vector<int> hi_;
  std::vector<std::uint64_t> stride_;
  std::vector<std::int8_t> data_;
  std::unordered_map<std::uint64_t, size_t> index_;
};

/// Gauge and matter configurations (m per link, Q per vertex).
class ConfigBasis : public Basis {
 public:
  BasisKind kind() const override { return kind_; }
  /// Static charges when every row lies in one Gauss sector.
  const std::optional<StaticCharges>& charges() const { return charges_; }

  /// Basis made of explicit rows, sorted canonically.
  static std::shared_ptr<const ConfigBasis> fromRows(
      std::shared_ptr<const LatticeGeometry> geom, TruncationSpec trunc,
      std::vector<std::int8_t> rows, std::optional<StaticCharges> charges,
      BasisKind kind = BasisKind::Subset);

 private:
  ConfigBasis(std::shared_ptr<const LatticeGeometry> geom, TruncationSpec trunc,
              BasisKind kind, std::optional<StaticCharges> charges);

  friend std::shared_ptr<const ConfigBasis> enumerateSector(
      std::shared_ptr<const LatticeGeometry>, const TruncationSpec&,
      const StaticCharges&, const EnumerationLimits&);
  friend std::shared_ptr<const ConfigBasis> enumerateFull(
      std::shared_ptr<const LatticeGeometry>, const TruncationSpec&,
      const EnumerationLimits&);

  BasisKind kind_;
  std::optional<StaticCharges> charges_;
};

struct FockConstraints {
  /// Conserved auxiliary total; unconstrained when empty.
  std::optional<int> auxTotal;
  /// Sector of the extended generator div - Q - (N^chi - 1).
  std::optional<StaticCharges> extendedGauss;
};

/// Occupancy basis of the atomic model. Link occupancies are stored as
/// m = (n_a - n_b)/2 with n_a + n_b = N0l, vertex dynamical occupancy as
/// Q = n_eta - N0v.
class FockBasis : public Basis {
 public:
  BasisKind kind() const override { return BasisKind::Fock; }
  const AtomicOccupancy& atoms() const { return *truncation().atomic; }
  const FockConstraints& constraints() const { return constraints_; }

  int aux(size_t i, int vertex) const {
    return row(i)[numLinks() + numVertices() + vertex];
  }
  int occupancyA(size_t i, int link) const;
  int occupancyB(size_t i, int link) const;
  int occupancyEta(size_t i, int vertex) const;

 private:
  FockBasis(std::shared_ptr<const LatticeGeometry> geom, TruncationSpec trunc,
            FockConstraints constraints);
  friend std::shared_ptr<const FockBasis> enumerateFock(
      std::shared_ptr<const LatticeGeometry>, const TruncationSpec&,
      const FockConstraints&, const EnumerationLimits&);

  FockConstraints constraints_;
};

struct Feasibility {
  bool feasible = true;
  std::string reason;
};

std::shared_ptr<const ConfigBasis> enumerateSector(
    std::shared_ptr<const LatticeGeometry> geom, const TruncationSpec& trunc,
    const StaticCharges& charges, const EnumerationLimits& limits = {});

/// Every configuration within the truncation, Gauss law unconstrained.
std::shared_ptr<const ConfigBasis> enumerateFull(
    std::shared_ptr<const LatticeGeometry> geom, const TruncationSpec& trunc,
    const EnumerationLimits& limits = {});

/// Necessary condition only; enumerateSector remains authoritative.
Feasibility sectorFeasible(const LatticeGeometry& geom,
                           const TruncationSpec& trunc,
                           const StaticCharges& charges);

std::shared_ptr<const FockBasis> enumerateFock(
    std::shared_ptr<const LatticeGeometry> geom, const TruncationSpec& trunc,
    const FockConstraints& constraints, const EnumerationLimits& limits = {});

/// Upper bound on the sector dimension from a spanning-tree count.
double sectorDimensionBound(const LatticeGeometry& geom,
                            const TruncationSpec& trunc);

struct GaugeConfig {
  std::vector<int> electric;
  std::vector<int> charge;
  bool operator==(const GaugeConfig&) const = default;
};

GaugeConfig mapFockToGauge(const FockBasis& basis, size_t index);
GaugeConfig configOf(const Basis& basis, size_t index);

int electricFromOccupancy(int na, int nb);
int chargeFromOccupancy(int neta, int n0v);
std::pair<int, int> occupancyFromElectric(int m, int n0l);
int occupancyFromCharge(int q, int n0v);

/// Row indices whose dynamical charges all vanish.
std::vector<size_t> neutralIndices(const Basis& basis);

/// Packs a gauge configuration into a row of the given basis layout.
std::vector<std::int8_t> packRow(const GaugeConfig& cfg);

}  // namespace ahsim
