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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ahsim/couplings.hpp"
#include "ahsim/fit.hpp"
#include "ahsim/hilbert.hpp"
#include "ahsim/operators.hpp"
#include "ahsim/sparse_operator.hpp"

namespace ahsim {

/// Ground sector of the diagonal penalty and the resolvent on its
/// complement, K = sum_{phi outside} |phi><phi| / (E_phi - E_0).
struct ProjectorPair {
  std::vector<size_t> ground;   // Fock indices spanning P0
  std::vector<double> resolvent;  // diagonal of K, zero on P0
  double groundEnergy = 0.0;
  double gap = 0.0;  // smallest excitation energy of the penalty

  static ProjectorPair fromPenalty(const SparseOperator& penalty);
};

/// One named closed-form contribution.
struct EffectiveTerm {
  std::string name;
  int order = 0;
  double coefficient = 0.0;
  std::string tag;  // "exact" or "truncated"
  SparseOperator unit;  // operator multiplying the coefficient
};

struct EffectiveExpansion {
  std::shared_ptr<const ConfigBasis> basis;
  std::vector<SparseOperator> orders;  // orders[k-1] is the order-k part
  std::vector<EffectiveTerm> terms;    // analytic expansions only
  std::vector<std::string> warnings;

  int maxOrder() const { return static_cast<int>(orders.size()); }
  const SparseOperator& order(int k) const;
  /// Sum of orders 1..k (all orders when k <= 0).
  SparseOperator total(int k = 0) const;
};

struct NumericOptions {
  double dominanceWarning = 0.3;
  double memoryCapBytes = 4.0e9;
};

/// Order-by-order effective Hamiltonian on the penalty ground sector, from
/// the hermitian (des Cloizeaux) projector expansion with the exact
/// resolvent. The auxiliary bosons are traced out; the result lives on a
/// gauge/matter basis.
EffectiveExpansion effectiveNumeric(const SparseOperator& primitive,
                                    const SparseOperator& penalty, int order,
                                    const NumericOptions& options = {});

/// Closed-form terms with their printed coefficients on the given basis.
EffectiveExpansion effectiveAnalytic(const MicroscopicCouplings& c,
                                     std::shared_ptr<const ConfigBasis> basis,
                                     int order);
/// Same, on the sector basis of `charges` (every configuration when empty).
EffectiveExpansion effectiveAnalytic(const MicroscopicCouplings& c,
                                     std::shared_ptr<const LatticeGeometry> geom,
                                     const TruncationSpec& trunc,
                                     const std::optional<StaticCharges>& charges,
                                     int order);

struct TermComparison {
  std::string name;
  std::string tag;
  double analytic = 0.0;
  std::optional<double> fitted;
  std::string note;
  double absError = 0.0;
  double relError = 0.0;
};

struct OrderComparison {
  int order = 0;
  double frobenius = 0.0;  // ||numeric - analytic||_F
  double maxAbs = 0.0;
  double constantShift = 0.0;  // best identity shift of the difference
  double residualNorm = 0.0;   // ||numeric - analytic - shift||_F
  double fitResidualNorm = 0.0;
  double numericNorm = 0.0;
  std::vector<TermComparison> terms;
};

struct ComparisonReport {
  std::vector<OrderComparison> orders;
  nlohmann::json toJson() const;
};

ComparisonReport compareExpansions(const EffectiveExpansion& numeric,
                                   const EffectiveExpansion& analytic,
                                   int order);

struct SpectrumComparison {
  std::vector<double> primitive;
  std::vector<double> effective;
  std::vector<double> gapErrors;  // |(E_i - E_0)_prim - (E_i - E_0)_eff|
  double maxGapError = 0.0;
  double alpha = 1.0;
  bool ambiguous = false;
  std::string note;
};

/// Lowest nLevels of the primitive against the effective total; gaps are
/// compared because the expansion drops constant shifts.
SpectrumComparison spectrumValidate(const SparseOperator& primitive,
                                    const SparseOperator& effectiveTotal,
                                    double alpha, int nLevels,
                                    double penaltyGap = 0.0);

enum class EffectiveSource { Numeric, Analytic };

struct SweepSetup {
  std::shared_ptr<const LatticeGeometry> geometry;
  TruncationSpec truncation;  // atomic parameters required
  FockConstraints constraints;
  MicroscopicCouplings couplings;  // epsilon is overwritten by the sweep
  AuxHopping statistics = AuxHopping::UnitAmplitude;
  EffectiveSource source = EffectiveSource::Analytic;
  int order = 4;
  int levels = 3;
  std::vector<double> ratios{0.05, 0.1, 0.2};  // epsilon / lambda
};

struct ScalingReport {
  std::vector<double> ratios;
  std::vector<SpectrumComparison> points;
  std::vector<double> errors;        // raw gap error
  std::vector<double> scaledErrors;  // alpha times raw gap error
  double exponent = 0.0;             // fitted on raw errors
  nlohmann::json toJson() const;
};

ScalingReport spectrumSweep(const SweepSetup& setup);

struct BudgetRow {
  std::string name;
  double magnitude = 0.0;  // alpha-scaled coefficient
  double relative = 0.0;   // magnitude / (1/(2 g^2))
  std::string scaling;
};

struct CorrectionBudget {
  double g = 0.0;
  double R = 0.0;
  int n0l = 0;
  double epsilonOverLambda = 0.0;
  std::vector<BudgetRow> rows;
  int links = 0;
  int plaquettes = 0;
  int neighbourPairs = 0;
  nlohmann::json toJson() const;
  const BudgetRow& row(const std::string& name) const;
};

/// Magnitude table of the alpha-scaled corrections (mu = 0).
CorrectionBudget correctionBudget(double g, double R, int n0l,
                                  const LatticeGeometry* geom = nullptr);

/// Builds the Fock basis, primitive and penalty, then runs the numeric
/// expansion; convenience for tools and tests.
struct EffectiveProblem {
  std::shared_ptr<const FockBasis> fock;
  SparseOperator primitive;
  SparseOperator penalty;
};

EffectiveProblem buildEffectiveProblem(
    std::shared_ptr<const LatticeGeometry> geom, const TruncationSpec& trunc,
    const FockConstraints& constraints, const MicroscopicCouplings& c,
    AuxHopping statistics = AuxHopping::UnitAmplitude);

}  // namespace ahsim
