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

#include <algorithm>
#include <cmath>

#include "ahsim/solvers.hpp"

namespace ahsim {

namespace {

double lerp(double a, double b, double s) { return a + (b - a) * s; }

}  // namespace

void Schedule::validate() const {
  if (points.empty()) throw InvalidArgument("schedule has no breakpoints");
  if (points.front().t != 0.0) {
    throw InvalidArgument("schedule must start at t = 0");
  }
  for (size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].t > points[i - 1].t)) {
      throw InvalidArgument("breakpoint times must increase strictly");
    }
  }
  if (tEnd < points.back().t) {
    throw InvalidArgument("tEnd precedes the last breakpoint");
  }
  for (const auto& p : points) {
    if (space == RampSpace::Target) {
      if (!(p.g > 0.0) || p.R < 0.0) {
        throw InvalidArgument("breakpoints need g > 0 and R >= 0");
      }
    } else {
      p.micro.validate();
    }
  }
}

std::pair<double, double> Schedule::couplingsAt(double t) const {
  size_t i = 0;
  while (i + 1 < points.size() && points[i + 1].t <= t) ++i;
  const SchedulePoint& a = points[i];
  const bool linear = a.next == Interpolation::Linear && i + 1 < points.size();
  if (space == RampSpace::Target) {
    if (!linear) return {a.g, a.R};
    const SchedulePoint& b = points[i + 1];
    const double s = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
    return {lerp(a.g, b.g, s), lerp(a.R, b.R, s)};
  }
  MicroscopicCouplings m = a.micro;
  if (linear) {
    const SchedulePoint& b = points[i + 1];
    const double s = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
    m.lambda = lerp(a.micro.lambda, b.micro.lambda, s);
    m.epsilon = lerp(a.micro.epsilon, b.micro.epsilon, s);
    m.epsilonPrime = lerp(a.micro.epsilonPrime, b.micro.epsilonPrime, s);
  }
  const DerivedCouplings d = deriveCouplings(m);
  return {d.g, d.R};
}

TargetCoefficients Schedule::coefficientsAt(double t) const {
  const auto [g, R] = couplingsAt(t);
  return TargetCoefficients::abelianHiggs(g, R, magnetic);
}

EvolveResult runSchedule(const Schedule& schedule, const QuantumState& psi0,
                         Variant variant, double dt,
                         const ScheduleOptions& options,
                         const Observer& observer) {
  schedule.validate();
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (options.recordEvery < 1) {
    throw InvalidArgument("recordEvery must be >= 1");
  }
  const auto basis = psi0.basis;
  EvolveResult res;
  res.final = psi0;
  if (observer) observer(0.0, res.final);

  std::vector<double> edges;
  for (const auto& p : schedule.points) edges.push_back(p.t);
  if (schedule.tEnd > edges.back()) edges.push_back(schedule.tEnd);

  long step = 0;
  for (size_t seg = 0; seg + 1 < edges.size(); ++seg) {
    const double a = edges[seg];
    const double b = edges[seg + 1];
    const long n = std::max(1L, static_cast<long>(std::ceil((b - a) / dt - 1e-9)));
    const double h = (b - a) / static_cast<double>(n);
    const bool linear = schedule.points[seg].next == Interpolation::Linear &&
                        seg + 1 < schedule.points.size();
    SparseOperator H;
    if (!linear) {
      H = buildTarget(basis, schedule.coefficientsAt(a), variant);
    }
    for (long j = 0; j < n; ++j) {
      if (linear) {
        const double mid = a + (static_cast<double>(j) + 0.5) * h;
        H = buildTarget(basis, schedule.coefficientsAt(mid), variant);
      }
      if (H.domain() != basis) {
        throw BasisMismatch("segment Hamiltonian left the state basis");
      }
      StepStats st;
      res.final.amplitudes =
          krylovStep(H, res.final.amplitudes, h, options.krylov, &st);
      res.substeps += st.substeps;
      res.maxNormDrift =
          std::max(res.maxNormDrift, std::abs(res.final.norm() - 1.0));
      res.final.normalize();
      ++step;
      const bool last = seg + 2 == edges.size() && j + 1 == n;
      if (observer && (step % options.recordEvery == 0 || last)) {
        const double t = j + 1 == n ? b : a + static_cast<double>(j + 1) * h;
        observer(t, res.final);
      }
    }
  }
  return res;
}

}  // namespace ahsim
