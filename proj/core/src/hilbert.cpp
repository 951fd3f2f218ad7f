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

#include "ahsim/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ahsim/common.hpp"

namespace ahsim {

int TruncationSpec::qmin() const {
  if (atomic) return -std::min(qmax, atomic->n0v);
  return -qmax;
}

void TruncationSpec::validate() const {
  if (emax < 0) throw InvalidArgument("emax must be non-negative");
  if (qmax < 0) throw InvalidArgument("qmax must be non-negative");
  if (emax > 100 || qmax > 100) {
    throw InvalidArgument("truncation exceeds the packed int8 range");
  }
  if (atomic) {
    if (atomic->n0l <= 0 || atomic->n0l % 2 != 0) {
      throw InvalidArgument("N0l must be a positive even integer");
    }
    if (emax != atomic->n0l / 2) {
      throw InvalidArgument("atomic mode requires emax = N0l/2");
    }
    if (atomic->n0v < 1) throw InvalidArgument("N0v must be positive");
    if (atomic->auxCap < 0 || atomic->auxCap > 100) {
      throw InvalidArgument("auxCap out of range");
    }
  }
}

// --- Basis -------------------------------------------------------------------

Basis::Basis(std::shared_ptr<const LatticeGeometry> geom, TruncationSpec trunc,
             std::vector<int> lo, std::vector<int> hi)
    : geom_(std::move(geom)),
      trunc_(std::move(trunc)),
      width_(static_cast<int>(lo.size())),
      lo_(std::move(lo)),
      hi_(std::move(hi)) {
  stride_.resize(width_);
  long double total = 1;
  std::uint64_t s = 1;
  for (int c = width_ - 1; c >= 0; --c) {
    stride_[c] = s;
    const std::uint64_t radix = static_cast<std::uint64_t>(hi_[c] - lo_[c] + 1);
    total *= radix;
    s *= radix;
  }
  if (total > 9.0e18L) {
    throw ResourceLimit("configuration key space exceeds 64 bits",
                        static_cast<double>(total));
  }
}

std::uint64_t Basis::key(std::span<const std::int8_t> cfg) const {
  std::uint64_t k = 0;
  for (int c = 0; c < width_; ++c) {
    k += static_cast<std::uint64_t>(cfg[c] - lo_[c]) * stride_[c];
  }
  return k;
}

void Basis::setRows(std::vector<std::int8_t> rows) {
  data_ = std::move(rows);
  size_ = width_ == 0 ? (data_.empty() ? 0 : 1) : data_.size() / width_;
  index_.clear();
  index_.reserve(size_);
  for (size_t i = 0; i < size_; ++i) index_.emplace(key(row(i)), i);
}

std::optional<size_t> Basis::find(std::span<const std::int8_t> cfg) const {
  for (int c = 0; c < width_; ++c) {
    if (cfg[c] < lo_[c] || cfg[c] > hi_[c]) return std::nullopt;
  }
  auto it = index_.find(key(cfg));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Basis::gaussValue(size_t i, int vertex) const {
  int div = 0;
  for (const Incidence& inc : geom_->incidentLinks(vertex)) {
    div += inc.sign * electric(i, inc.link);
  }
  return div - charge(i, vertex);
}

std::string Basis::describe(size_t i) const {
  std::ostringstream os;
  const auto r = row(i);
  os << "m=[";
  for (int l = 0; l < numLinks(); ++l) os << (l ? "," : "") << int(r[l]);
  os << "] Q=[";
  for (int v = 0; v < numVertices(); ++v) {
    os << (v ? "," : "") << int(r[numLinks() + v]);
  }
  os << "]";
  if (width_ > numLinks() + numVertices()) {
    os << " aux=[";
    for (int v = 0; v < numVertices(); ++v) {
      os << (v ? "," : "") << int(r[numLinks() + numVertices() + v]);
    }
    os << "]";
  }
  return os.str();
}

void Basis::exportText(std::ostream& os) const {
  for (size_t i = 0; i < size_; ++i) os << describe(i) << "\n";
}

// --- ConfigBasis -------------------------------------------------------------

namespace {

std::vector<int> gaugeLo(const LatticeGeometry& g, const TruncationSpec& t) {
  std::vector<int> lo(g.numLinks(), -t.emax);
  lo.insert(lo.end(), g.numVertices(), t.qmin());
  return lo;
}

std::vector<int> gaugeHi(const LatticeGeometry& g, const TruncationSpec& t) {
  std::vector<int> hi(g.numLinks(), t.emax);
  hi.insert(hi.end(), g.numVertices(), t.qmax);
  return hi;
}

void sortRows(std::vector<std::int8_t>& rows, int width) {
  if (width == 0) return;
  const size_t n = rows.size() / width;
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return std::lexicographical_compare(
        rows.begin() + a * width, rows.begin() + (a + 1) * width,
        rows.begin() + b * width, rows.begin() + (b + 1) * width);
  });
  std::vector<std::int8_t> out;
  out.reserve(rows.size());
  for (size_t k = 0; k < n; ++k) {
    if (k > 0 && std::equal(rows.begin() + order[k] * width,
                            rows.begin() + (order[k] + 1) * width,
                            rows.begin() + order[k - 1] * width)) {
      continue;  // drop duplicates
    }
    out.insert(out.end(), rows.begin() + order[k] * width,
               rows.begin() + (order[k] + 1) * width);
  }
  rows.swap(out);
}

// Depth-first solve of the Gauss law over links in canonical order. Each
// vertex closes when its last incident link is assigned; the charge is then
// fixed by Q = div - q and must fall inside [qmin, qmax].
class SectorSolver {
 public:
  SectorSolver(const LatticeGeometry& g, const TruncationSpec& t,
               const StaticCharges& q)
      : g_(g), emax_(t.emax), qmin_(t.qmin()), qmax_(t.qmax), q_(q) {
    const int nl = g.numLinks();
    const int nv = g.numVertices();
    remaining_.assign(nv, 0);
    closing_.assign(nl, {});
    for (int v = 0; v < nv; ++v) {
      int last = -1;
      for (const Incidence& inc : g.incidentLinks(v)) {
        ++remaining_[v];
        last = std::max(last, inc.link);
      }
      if (last >= 0) closing_[last].push_back(v);
    }
    div_.assign(nv, 0);
    m_.assign(nl, 0);
  }

  std::vector<std::int8_t> solve() {
    const int nv = g_.numVertices();
    for (int v = 0; v < nv; ++v) {
      if (remaining_[v] == 0 && !chargeOk(v)) return {};
    }
    recurse(0);
    return std::move(out_);
  }

 private:
  bool chargeOk(int v) const {
    const int Q = div_[v] - q_[v];
    return Q >= qmin_ && Q <= qmax_;
  }

  bool reachable(int v) const {
    const int lo = q_[v] + qmin_;
    const int hi = q_[v] + qmax_;
    const int slack = remaining_[v] * emax_;
    return div_[v] + slack >= lo && div_[v] - slack <= hi;
  }

  void recurse(int l) {
    if (l == g_.numLinks()) {
      for (int x : m_) out_.push_back(static_cast<std::int8_t>(x));
      for (int v = 0; v < g_.numVertices(); ++v) {
        out_.push_back(static_cast<std::int8_t>(div_[v] - q_[v]));
      }
      return;
    }
    const Link& link = g_.links()[l];
    for (int m = -emax_; m <= emax_; ++m) {
      m_[l] = m;
      div_[link.origin] += m;
      div_[link.target] -= m;
      --remaining_[link.origin];
      --remaining_[link.target];
      bool ok = reachable(link.origin) && reachable(link.target);
      if (ok) {
        for (int v : closing_[l]) {
          if (!chargeOk(v)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) recurse(l + 1);
      div_[link.origin] -= m;
      div_[link.target] += m;
      ++remaining_[link.origin];
      ++remaining_[link.target];
    }
  }

  const LatticeGeometry& g_;
  int emax_, qmin_, qmax_;
  const StaticCharges& q_;
  std::vector<int> remaining_;
  std::vector<std::vector<int>> closing_;
  std::vector<int> div_;
  std::vector<int> m_;
  std::vector<std::int8_t> out_;
};

std::vector<std::int8_t> productRows(const std::vector<int>& lo,
                                     const std::vector<int>& hi) {
  std::vector<std::int8_t> rows;
  const int w = static_cast<int>(lo.size());
  std::vector<int> cur(lo);
  while (true) {
    for (int x : cur) rows.push_back(static_cast<std::int8_t>(x));
    int c = w - 1;
    while (c >= 0 && cur[c] == hi[c]) {
      cur[c] = lo[c];
      --c;
    }
    if (c < 0) break;
    ++cur[c];
  }
  return rows;
}

void checkCharges(const LatticeGeometry& g, const StaticCharges& q) {
  if (static_cast<int>(q.size()) != g.numVertices()) {
    throw InvalidArgument("static charge vector has " +
                          std::to_string(q.size()) + " entries, lattice has " +
                          std::to_string(g.numVertices()) + " vertices");
  }
}

}  // namespace

ConfigBasis::ConfigBasis(std::shared_ptr<const LatticeGeometry> geom,
                         TruncationSpec trunc, BasisKind kind,
                         std::optional<StaticCharges> charges)
    : Basis(geom, trunc, gaugeLo(*geom, trunc), gaugeHi(*geom, trunc)),
      kind_(kind),
      charges_(std::move(charges)) {}

std::shared_ptr<const ConfigBasis> ConfigBasis::fromRows(
    std::shared_ptr<const LatticeGeometry> geom, TruncationSpec trunc,
    std::vector<std::int8_t> rows, std::optional<StaticCharges> charges,
    BasisKind kind) {
  trunc.validate();
  std::shared_ptr<ConfigBasis> b(
      new ConfigBasis(geom, trunc, kind, std::move(charges)));
  sortRows(rows, b->width());
  b->setRows(std::move(rows));
  return b;
}

double sectorDimensionBound(const LatticeGeometry& geom,
                            const TruncationSpec& trunc) {
  const double nm = 2.0 * trunc.emax + 1;
  const double nq = trunc.qmax - trunc.qmin() + 1;
  const int loops = std::max(0, geom.numLinks() - geom.numVertices() + 1);
  return std::pow(nm, loops) * std::pow(nq, geom.numVertices() - 1);
}

std::shared_ptr<const ConfigBasis> enumerateSector(
    std::shared_ptr<const LatticeGeometry> geom, const TruncationSpec& trunc,
    const StaticCharges& charges, const EnumerationLimits& limits) {
  trunc.validate();
  checkCharges(*geom, charges);
  const double bound = sectorDimensionBound(*geom, trunc);
  if (bound > limits.maxDimension) {
    throw ResourceLimit("sector dimension bound " + std::to_string(bound) +
                            " exceeds cap " +
                            std::to_string(limits.maxDimension),
                        bound);
  }
  std::shared_ptr<ConfigBasis> b(
      new ConfigBasis(geom, trunc, BasisKind::Sector, charges));
  SectorSolver solver(*geom, trunc, charges);
  b->setRows(solver.solve());
  return b;
}

std::shared_ptr<const ConfigBasis> enumerateFull(
    std::shared_ptr<const LatticeGeometry> geom, const TruncationSpec& trunc,
    const EnumerationLimits& limits) {
  trunc.validate();
  const double bound =
      std::pow(2.0 * trunc.emax + 1, geom->numLinks()) *
      std::pow(trunc.qmax - trunc.qmin() + 1.0, geom->numVertices());
  if (bound > limits.maxDimension) {
    throw ResourceLimit("full basis dimension " + std::to_string(bound) +
                            " exceeds cap",
                        bound);
  }
  std::shared_ptr<ConfigBasis> b(
      new ConfigBasis(geom, trunc, BasisKind::Full, std::nullopt));
  b->setRows(productRows(gaugeLo(*geom, trunc), gaugeHi(*geom, trunc)));
  return b;
}

Feasibility sectorFeasible(const LatticeGeometry& geom,
                           const TruncationSpec& trunc,
                           const StaticCharges& charges) {
  checkCharges(geom, charges);
  // Summing the generator over all vertices telescopes the divergence away:
  // sum_n q_n = -sum_n Q_n.
  const long total = std::accumulate(charges.begin(), charges.end(), 0L);
  const long lo = static_cast<long>(geom.numVertices()) * trunc.qmin();
  const long hi = static_cast<long>(geom.numVertices()) * trunc.qmax;
  if (-total < lo || -total > hi) {
    return {false, "global charge"};
  }
  return {true, ""};
}

// --- FockBasis ---------------------------------------------------------------

namespace {

std::vector<int> fockLo(const LatticeGeometry& g, const TruncationSpec& t) {
  auto lo = gaugeLo(g, t);
  lo.insert(lo.end(), g.numVertices(), 0);
  return lo;
}

std::vector<int> fockHi(const LatticeGeometry& g, const TruncationSpec& t) {
  auto hi = gaugeHi(g, t);
  hi.insert(hi.end(), g.numVertices(), t.atomic->auxCap);
  return hi;
}

void compositions(int sites, int cap, std::optional<int> total,
                  std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  const int k = static_cast<int>(cur.size());
  if (k == sites) {
    if (!total || std::accumulate(cur.begin(), cur.end(), 0) == *total) {
      out.push_back(cur);
    }
    return;
  }
  const int used = std::accumulate(cur.begin(), cur.end(), 0);
  for (int n = 0; n <= cap; ++n) {
    if (total && used + n > *total) break;
    cur.push_back(n);
    compositions(sites, cap, total, cur, out);
    cur.pop_back();
  }
}

}  // namespace

FockBasis::FockBasis(std::shared_ptr<const LatticeGeometry> geom,
                     TruncationSpec trunc, FockConstraints constraints)
    : Basis(geom, trunc, fockLo(*geom, trunc), fockHi(*geom, trunc)),
      constraints_(std::move(constraints)) {}

int FockBasis::occupancyA(size_t i, int link) const {
  return occupancyFromElectric(electric(i, link), atoms().n0l).first;
}

int FockBasis::occupancyB(size_t i, int link) const {
  return occupancyFromElectric(electric(i, link), atoms().n0l).second;
}

int FockBasis::occupancyEta(size_t i, int vertex) const {
  return occupancyFromCharge(charge(i, vertex), atoms().n0v);
}

std::shared_ptr<const FockBasis> enumerateFock(
    std::shared_ptr<const LatticeGeometry> geom, const TruncationSpec& trunc,
    const FockConstraints& constraints, const EnumerationLimits& limits) {
  trunc.validate();
  if (!trunc.atomic) {
    throw InvalidArgument("Fock basis requires atomic occupancy parameters");
  }
  const int nv = geom->numVertices();
  const int cap = trunc.atomic->auxCap;
  if (constraints.auxTotal && (*constraints.auxTotal < 0 ||
                               *constraints.auxTotal > cap * nv)) {
    throw InvalidArgument("auxiliary total incompatible with auxCap");
  }
  if (constraints.extendedGauss) checkCharges(*geom, *constraints.extendedGauss);

  std::vector<std::vector<int>> auxes;
  std::vector<int> cur;
  compositions(nv, cap, constraints.auxTotal, cur, auxes);

  const double gaugeBound =
      constraints.extendedGauss
          ? sectorDimensionBound(*geom, trunc)
          : std::pow(2.0 * trunc.emax + 1, geom->numLinks()) *
                std::pow(trunc.qmax - trunc.qmin() + 1.0, nv);
  const double bound = gaugeBound * static_cast<double>(auxes.size());
  if (bound > limits.maxDimension) {
    throw ResourceLimit("Fock dimension bound " + std::to_string(bound) +
                            " exceeds cap",
                        bound);
  }

  std::shared_ptr<FockBasis> b(new FockBasis(geom, trunc, constraints));
  const int gw = geom->numLinks() + nv;
  std::vector<std::int8_t> fullGauge;
  if (!constraints.extendedGauss) {
    fullGauge = productRows(gaugeLo(*geom, trunc), gaugeHi(*geom, trunc));
  }
  std::vector<std::int8_t> rows;
  for (const auto& a : auxes) {
    std::vector<std::int8_t> gauge;
    if (constraints.extendedGauss) {
      StaticCharges shifted = *constraints.extendedGauss;
      for (int v = 0; v < nv; ++v) shifted[v] += a[v] - 1;
      gauge = SectorSolver(*geom, trunc, shifted).solve();
    }
    const auto& g = constraints.extendedGauss ? gauge : fullGauge;
    const size_t n = gw == 0 ? 1 : g.size() / gw;
    for (size_t i = 0; i < n; ++i) {
      rows.insert(rows.end(), g.begin() + i * gw, g.begin() + (i + 1) * gw);
      for (int x : a) rows.push_back(static_cast<std::int8_t>(x));
    }
  }
  sortRows(rows, b->width());
  b->setRows(std::move(rows));
  return b;
}

// --- occupancy maps ----------------------------------------------------------

int electricFromOccupancy(int na, int nb) {
  if ((na - nb) % 2 != 0) {
    throw InvalidArgument("odd link occupancy difference");
  }
  return (na - nb) / 2;
}

int chargeFromOccupancy(int neta, int n0v) { return neta - n0v; }

std::pair<int, int> occupancyFromElectric(int m, int n0l) {
  return {n0l / 2 + m, n0l / 2 - m};
}

int occupancyFromCharge(int q, int n0v) { return q + n0v; }

GaugeConfig configOf(const Basis& basis, size_t index) {
  GaugeConfig c;
  for (int l = 0; l < basis.numLinks(); ++l) {
    c.electric.push_back(basis.electric(index, l));
  }
  for (int v = 0; v < basis.numVertices(); ++v) {
    c.charge.push_back(basis.charge(index, v));
  }
  return c;
}

GaugeConfig mapFockToGauge(const FockBasis& basis, size_t index) {
  GaugeConfig c;
  for (int l = 0; l < basis.numLinks(); ++l) {
    c.electric.push_back(electricFromOccupancy(basis.occupancyA(index, l),
                                               basis.occupancyB(index, l)));
  }
  for (int v = 0; v < basis.numVertices(); ++v) {
    c.charge.push_back(
        chargeFromOccupancy(basis.occupancyEta(index, v), basis.atoms().n0v));
  }
  return c;
}

std::vector<size_t> neutralIndices(const Basis& basis) {
  std::vector<size_t> out;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool neutral = true;
    for (int v = 0; v < basis.numVertices() && neutral; ++v) {
      neutral = basis.charge(i, v) == 0;
    }
    if (neutral) out.push_back(i);
  }
  return out;
}

std::vector<std::int8_t> packRow(const GaugeConfig& cfg) {
  std::vector<std::int8_t> r;
  for (int m : cfg.electric) r.push_back(static_cast<std::int8_t>(m));
  for (int q : cfg.charge) r.push_back(static_cast<std::int8_t>(q));
  return r;
}

}  // namespace ahsim
