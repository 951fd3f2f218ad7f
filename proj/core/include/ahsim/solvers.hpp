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
#include <functional>
#include <vector>

#include "ahsim/couplings.hpp"
#include "ahsim/hamiltonians.hpp"
#include "ahsim/sparse_operator.hpp"
#include "ahsim/state.hpp"

namespace ahsim {

// --- eigensolver -------------------------------------------------------------

struct LanczosOptions {
  double tol = 1e-11;        // residual bound relative to ||H||_inf
  int maxKrylov = 120;       // vectors per restart cycle
  int maxRestarts = 400;
  std::uint64_t seed = 0x5eed;
  bool completeClusters = true;  // extend past k to finish the last cluster
};

struct Cluster {
  double value = 0.0;
  std::vector<int> members;  // indices into Spectrum::values
};

/// Lowest eigenpairs in ascending order. Degenerate eigenvalues come as a
/// cluster with an orthonormal span; no representative is singled out.
struct Spectrum {
  std::vector<double> values;
  std::vector<Vector> vectors;
  std::vector<int> clusterOf;
  double clusterThreshold = 0.0;
  double maxResidual = 0.0;
  int matrixVectorProducts = 0;

  std::vector<Cluster> clusters() const;
};

Spectrum groundStates(const SparseOperator& H, int k,
                      const LanczosOptions& options = {});

// --- propagator --------------------------------------------------------------

struct KrylovOptions {
  double tol = 1e-12;  // a posteriori error bound per substep
  int maxDim = 40;
  int maxHalvings = 30;
};

struct StepStats {
  int substeps = 0;
  int maxKrylov = 0;
  double errorEstimate = 0.0;
  double normDrift = 0.0;
};

/// exp(-i H dt) psi with adaptive substeps. The norm is not renormalized.
Vector krylovStep(const SparseOperator& H, const Vector& psi, double dt,
                  const KrylovOptions& options = {},
                  StepStats* stats = nullptr);

using Observer = std::function<void(double t, const QuantumState& psi)>;

struct EvolveResult {
  QuantumState final;
  double maxNormDrift = 0.0;
  int substeps = 0;
};

/// nSteps steps of size dt; the observer sees t = 0 and every step.
EvolveResult evolve(const SparseOperator& H, QuantumState psi0, double dt,
                    int nSteps, const Observer& observer = nullptr,
                    const KrylovOptions& options = {});

// --- schedules ---------------------------------------------------------------

enum class Interpolation { Hold, Linear };
enum class RampSpace { Microscopic, Target };

struct SchedulePoint {
  double t = 0.0;
  double g = 1.0;
  double R = 0.0;
  MicroscopicCouplings micro;         // used in RampSpace::Microscopic
  Interpolation next = Interpolation::Hold;  // mode of the following segment
};

struct Schedule {
  std::vector<SchedulePoint> points;
  double tEnd = 0.0;
  RampSpace space = RampSpace::Target;
  bool magnetic = true;

  void validate() const;
  /// (g, R) at time t. Linear segments interpolate the microscopic knobs
  /// and re-derive (g, R) unless the ramp is in target space.
  std::pair<double, double> couplingsAt(double t) const;
  TargetCoefficients coefficientsAt(double t) const;
};

struct ScheduleOptions {
  int recordEvery = 1;
  KrylovOptions krylov;
};

EvolveResult runSchedule(const Schedule& schedule, const QuantumState& psi0,
                         Variant variant, double dt,
                         const ScheduleOptions& options,
                         const Observer& observer);

/// Step bound so that dt times the spectral-radius estimate is <= 0.5.
double defaultTimeStep(const SparseOperator& H);

/// Lowest eigenpairs restricted to rows with Q = 0 everywhere, embedded back
/// into the full basis. Used for R = 0 where matter is frozen.
Spectrum neutralGroundStates(const SparseOperator& H, int k,
                             const LanczosOptions& options = {});

}  // namespace ahsim
