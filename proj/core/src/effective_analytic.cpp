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

#include <cmath>
#include <functional>

#include "ahsim/effective.hpp"
#include "ahsim/hamiltonians.hpp"

namespace ahsim {

namespace {

constexpr const char* kExact = "exact";
constexpr const char* kTruncated = "truncated";

using RowFn = std::function<double(size_t)>;

class TermBuilder {
 public:
  explicit TermBuilder(std::shared_ptr<const ConfigBasis> basis)
      : basis_(std::move(basis)), b_(*basis_) {
    for (int l = 0; l < b_.numLinks(); ++l) {
      hops_.push_back(matterHopping(basis_, l, Variant::Atomic));
    }
  }

  SparseOperator diag(const RowFn& f) const {
    std::vector<double> d(b_.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = f(i);
    return SparseOperator::diagonal(basis_, d);
  }

  /// sum_l E_l^k
  SparseOperator electricSum(int k) const {
    return diag([&](size_t i) {
      double s = 0.0;
      for (int l = 0; l < b_.numLinks(); ++l) {
        s += std::pow(static_cast<double>(b_.electric(i, l)), k);
      }
      return s;
    });
  }

  /// sum_l [f_l(E, Q) h_l + h.c.], with f evaluated after the hop.
  SparseOperator dressedHopping(
      const std::function<double(double e, double qo, double qt)>& f,
      int power = 1) const {
    SparseOperator sum = SparseOperator::zero(basis_);
    const auto& links = b_.geometry().links();
    for (int l = 0; l < b_.numLinks(); ++l) {
      const Link& lk = links[static_cast<size_t>(l)];
      const SparseOperator fl = diag([&](size_t i) {
        return f(b_.electric(i, l), b_.charge(i, lk.origin),
                 b_.charge(i, lk.target));
      });
      SparseOperator h = hops_[static_cast<size_t>(l)];
      for (int k = 1; k < power; ++k) h = h * hops_[static_cast<size_t>(l)];
      const SparseOperator x = fl * h;
      sum += x + x.adjoint();
    }
    return sum;
  }

  const SparseOperator& hop(int l) const { return hops_[static_cast<size_t>(l)]; }
  const Basis& basis() const { return b_; }
  const std::shared_ptr<const ConfigBasis>& basisPtr() const { return basis_; }

 private:
  std::shared_ptr<const ConfigBasis> basis_;
  const Basis& b_;
  std::vector<SparseOperator> hops_;
};

}  // namespace

EffectiveExpansion effectiveAnalytic(const MicroscopicCouplings& c,
                                     std::shared_ptr<const ConfigBasis> basis,
                                     int order) {
  c.validate();
  if (order < 1 || order > 4) {
    throw InvalidArgument("effective order must be in 1..4");
  }
  const auto& atomic = basis->truncation().atomic;
  if (!atomic || atomic->n0l != c.n0l || atomic->n0v != c.n0v) {
    throw InvalidArgument(
        "analytic terms need a basis with the couplings' N0l and N0v");
  }
  const TermBuilder tb(basis);
  const Basis& b = tb.basis();
  const auto& geom = b.geometry();

  const double lam = c.lambda;
  const double eps = c.epsilon;
  const double ep = c.epsilonPrime;
  const double mu = c.mu;
  const double mup = c.muPrime;
  const double n = c.n0l;
  const double nv = c.n0v;
  const double nn = n * (n + 2.0);
  const double l2 = lam * lam;
  const double l3 = l2 * lam;

  EffectiveExpansion out;
  out.basis = basis;
  auto add = [&](std::string name, int k, double coeff, std::string tag,
                 SparseOperator unit) {
    out.terms.push_back(
        {std::move(name), k, coeff, std::move(tag), std::move(unit)});
  };

  const SparseOperator e2 = tb.electricSum(2);
  add("electric_mu", 1, mu, kExact, e2);
  add("mass_mu_prime", 1, mup, kExact, chargeEnergy(basis));
  add("matter_hopping", 1, ep, kExact,
      tb.dressedHopping([](double, double, double) { return 1.0; }));

  if (order >= 2) {
    add("electric_renorm_2", 2, eps * eps / lam * 4.0 / nn, kExact, e2);
  }

  if (order >= 3) {
    add("dressed_hopping_3", 3, -eps * eps * ep / l2 * 2.0 / (n * n),
        kTruncated, tb.dressedHopping([n](double e, double, double) {
          return (1.0 - 2.0 * e + 2.0 * e * e) / (n * n);
        }));
    add("electric_renorm_3", 3, -mu * eps * eps / l2 * 2.0 / nn, kExact, e2);
  }

  if (order >= 4) {
    const double e4 = std::pow(eps, 4);
    add("plaquette", 4, -2.5 * e4 / l3, kExact,
        magneticSum(basis, Variant::Atomic));

    const auto pairs = geom.adjacentLinkPairs();
    add("nn_electric", 4, -e4 / l3 * (2.0 / 3.0) / (nn * nn), kExact,
        tb.diag([&](size_t i) {
          double s = 0.0;
          for (const auto& [l1, l2p] : pairs) {
            const double a = b.electric(i, l1);
            const double d = b.electric(i, l2p);
            s += a * d - 11.0 * a * a * d * d;
          }
          return s;
        }));

    add("electric_renorm_4", 4,
        mu * mu * eps * eps / l3 * (-1.0 + 9.0 / nn) + e4 / l3 * 18.0 / nn,
        kExact, e2);
    add("electric_cubic", 4, eps * eps * mu * mu / l3 * 8.0 / nn, kExact,
        tb.electricSum(3));
    add("electric_linear", 4, eps * eps * mu * mu / l3 * 6.0 / nn, kExact,
        tb.electricSum(1));
    add("electric_quartic", 4,
        4.0 / nn * (mu * mu * eps * eps / l3 + 2.0 * e4 / (l3 * nn)), kExact,
        tb.electricSum(4));

    const auto& links = geom.links();
    add("electric_charge", 4, eps * eps * ep * ep / l3 / (n * n), kTruncated,
        tb.diag([&](size_t i) {
          double s = 0.0;
          for (int l = 0; l < b.numLinks(); ++l) {
            const Link& lk = links[static_cast<size_t>(l)];
            const double e = b.electric(i, l);
            const double qo = b.charge(i, lk.origin);
            const double qt = b.charge(i, lk.target);
            s += 16.0 / (n * n) * e * e * (1.0 + (qo + qt + 1.0) / nv) +
                 2.0 / (nv * nv) * (e * (qo - qt) - qo * qt);
          }
          return s;
        }));

    add("dressed_hopping_mu", 4, eps * eps * ep * mu / l3 / (2.0 * n * n),
        kTruncated, tb.dressedHopping([n](double e, double, double) {
          return (-3.0 + 4.0 * e - 4.0 * e * e) +
                 (6.0 - 8.0 * e + 8.0 * e * e) / n +
                 (-4.0 - 4.0 * e + 8.0 * e * e) / (n * n);
        }));
    add("dressed_hopping_mu_prime", 4, eps * eps * ep * mup / l3 / n, kExact,
        tb.dressedHopping([n](double e, double qo, double qt) {
          return (-1.0 + 2.0 * e) * (qo - qt + 1.0) / (n + 2.0);
        }));
    add("squared_hopping", 4, eps * eps * ep * ep / l3 / (n * n), kTruncated,
        tb.dressedHopping(
            [n](double e, double, double) {
              return 1.0 - 2.0 / n + 4.0 / (n * n) * (2.0 - 2.0 * e + e * e);
            },
            2));

    SparseOperator comm = SparseOperator::zero(basis);
    for (const auto& [l1, l2p] : pairs) {
      const SparseOperator f = tb.diag(
          [&, l1 = l1](size_t i) { return 1.0 - 2.0 * b.electric(i, l1); });
      const SparseOperator& h1 = tb.hop(l1);
      const SparseOperator x = f * commutator(h1 + h1.adjoint(), tb.hop(l2p));
      comm += x + x.adjoint();
    }
    add("nn_hopping_commutator", 4, eps * eps * ep * ep / l3 / (2.0 * nn),
        kExact, comm);
  }

  for (int k = 1; k <= order; ++k) {
    SparseOperator sum = SparseOperator::zero(basis);
    for (const auto& t : out.terms) {
      if (t.order == k && t.coefficient != 0.0) sum += t.unit * t.coefficient;
    }
    out.orders.push_back(std::move(sum));
  }
  return out;
}

EffectiveExpansion effectiveAnalytic(const MicroscopicCouplings& c,
                                     std::shared_ptr<const LatticeGeometry> geom,
                                     const TruncationSpec& trunc,
                                     const std::optional<StaticCharges>& charges,
                                     int order) {
  auto basis = charges ? enumerateSector(std::move(geom), trunc, *charges)
                       : enumerateFull(std::move(geom), trunc);
  return effectiveAnalytic(c, basis, order);
}

}  // namespace ahsim
