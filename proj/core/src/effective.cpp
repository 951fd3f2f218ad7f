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

#include "ahsim/effective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ahsim/hamiltonians.hpp"
#include "ahsim/solvers.hpp"

namespace ahsim {

namespace {

constexpr const char* kReportSchema = "ahsim.effective.v1";

std::vector<double> diagonalOf(const SparseOperator& op) {
  const SparseMatrix& m = op.matrix();
  std::vector<double> d(static_cast<size_t>(m.rows()), 0.0);
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.col() != r) {
        throw InvalidArgument("penalty must be diagonal in the Fock basis");
      }
      if (it.value().imag() != 0.0) {
        throw InvalidArgument("penalty must be real");
      }
      d[static_cast<size_t>(r)] = it.value().real();
    }
  }
  return d;
}

std::shared_ptr<const FockBasis> fockOf(const SparseOperator& op) {
  auto fock = std::dynamic_pointer_cast<const FockBasis>(op.domain());
  if (!fock || op.codomain() != op.domain()) {
    throw BasisMismatch("effective expansion needs an operator on a Fock basis");
  }
  return fock;
}

DenseMatrix hermitianPart(const DenseMatrix& h) {
  return 0.5 * (h + h.adjoint());
}

SparseOperator toSparse(std::shared_ptr<const Basis> basis,
                        const std::vector<size_t>& perm, const DenseMatrix& h) {
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      if (h(i, j) != cplx(0.0)) {
        trip.emplace_back(static_cast<Eigen::Index>(perm[i]),
                          static_cast<Eigen::Index>(perm[j]), h(i, j));
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(basis->size());
  SparseMatrix m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return SparseOperator(basis, basis, std::move(m), true);
}

bool sameRows(const Basis& a, const Basis& b) {
  if (a.size() != b.size() || a.width() != b.width()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    const auto ra = a.row(i);
    const auto rb = b.row(i);
    if (!std::equal(ra.begin(), ra.end(), rb.begin())) return false;
  }
  return true;
}

std::vector<double> lowestEigenvalues(const SparseOperator& h, int n) {
  const auto dim = h.rows();
  if (dim <= 2000) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h.toDense(),
                                                  Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(n, dim); ++i) {
      out.push_back(es.eigenvalues()[i]);
    }
    return out;
  }
  const Spectrum s = groundStates(h, n);
  return {s.values.begin(), s.values.begin() + std::min<size_t>(n, s.values.size())};
}

}  // namespace

ProjectorPair ProjectorPair::fromPenalty(const SparseOperator& penalty) {
  const std::vector<double> d = diagonalOf(penalty);
  if (d.empty()) throw InvalidArgument("empty penalty");
  ProjectorPair pp;
  pp.groundEnergy = *std::min_element(d.begin(), d.end());
  const double scale = std::max(1.0, std::abs(pp.groundEnergy));
  pp.gap = std::numeric_limits<double>::infinity();
  pp.resolvent.assign(d.size(), 0.0);
  for (size_t i = 0; i < d.size(); ++i) {
    const double e = d[i] - pp.groundEnergy;
    if (e <= 1e-12 * scale) {
      pp.ground.push_back(i);
    } else {
      pp.resolvent[i] = 1.0 / e;
      pp.gap = std::min(pp.gap, e);
    }
  }
  return pp;
}

const SparseOperator& EffectiveExpansion::order(int k) const {
  if (k < 1 || k > maxOrder()) {
    throw InvalidArgument("order " + std::to_string(k) + " not computed");
  }
  return orders[static_cast<size_t>(k - 1)];
}

SparseOperator EffectiveExpansion::total(int k) const {
  if (k <= 0) k = maxOrder();
  SparseOperator sum = SparseOperator::zero(basis);
  for (int j = 1; j <= k; ++j) sum += order(j);
  return sum;
}

EffectiveExpansion effectiveNumeric(const SparseOperator& primitive,
                                    const SparseOperator& penalty, int order,
                                    const NumericOptions& options) {
  if (order < 1 || order > 4) {
    throw InvalidArgument("effective order must be in 1..4");
  }
  const auto fock = fockOf(primitive);
  if (penalty.domain() != primitive.domain()) {
    throw BasisMismatch("primitive and penalty live on different bases");
  }
  const AtomicOccupancy& atoms = fock->atoms();
  if (order >= 2 && atoms.auxCap < 2) {
    throw InvalidArgument("order >= 2 needs auxCap >= 2");
  }
  if (order >= 4 && atoms.auxCap < 3) {
    throw InvalidArgument("order 4 needs auxCap >= 3");
  }

  const ProjectorPair pp = ProjectorPair::fromPenalty(penalty);
  const auto dim = static_cast<Eigen::Index>(fock->size());
  const auto p = static_cast<Eigen::Index>(pp.ground.size());
  const double bytes = 16.0 * static_cast<double>(dim) * p * (order + 1);
  if (bytes > options.memoryCapBytes) {
    throw ResourceLimit("wave-operator storage of " + std::to_string(bytes) +
                            " bytes exceeds the cap",
                        bytes);
  }

  // Traced-out sector: every ground state must carry one auxiliary boson
  // per vertex so that the auxiliary factor is a single product state.
  const int links = fock->numLinks();
  const int verts = fock->numVertices();
  std::vector<std::int8_t> rows;
  rows.reserve(static_cast<size_t>(p) * (links + verts));
  for (size_t i : pp.ground) {
    for (int v = 0; v < verts; ++v) {
      if (fock->aux(i, v) != 1) {
        throw InvalidArgument(
            "penalty ground sector is not one auxiliary boson per vertex; pin "
            "the auxiliary total to the number of vertices");
      }
    }
    const auto r = fock->row(i);
    rows.insert(rows.end(), r.begin(), r.begin() + links + verts);
  }
  const auto& ext = fock->constraints().extendedGauss;
  TruncationSpec trunc = fock->truncation();
  auto basis = ConfigBasis::fromRows(
      fock->geometryPtr(), trunc, rows, ext,
      ext ? BasisKind::Sector : BasisKind::Subset);
  std::vector<size_t> perm(static_cast<size_t>(p));
  for (Eigen::Index k = 0; k < p; ++k) {
    const auto r = fock->row(pp.ground[static_cast<size_t>(k)]);
    perm[static_cast<size_t>(k)] =
        *basis->find(std::span<const std::int8_t>(r.data(), links + verts));
  }

  EffectiveExpansion out;
  out.basis = basis;

  const SparseOperator w = primitive - penalty;
  const SparseMatrix& W = w.matrix();
  const std::vector<double> pen = diagonalOf(penalty);

  // Dominance check on the couplings between penalty levels.
  double maxCross = 0.0;
  for (Eigen::Index r = 0; r < W.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(W, r); it; ++it) {
      if (pen[static_cast<size_t>(r)] != pen[static_cast<size_t>(it.col())]) {
        maxCross = std::max(maxCross, std::abs(it.value()));
      }
    }
  }
  if (std::isfinite(pp.gap) && maxCross / pp.gap > options.dominanceWarning) {
    std::ostringstream os;
    os << "penalty not dominant: max coupling / gap = " << maxCross / pp.gap;
    out.warnings.push_back(os.str());
  }

  // Wave operator Omega = sum_n Omega^n with Omega^0 = P and
  //   Omega^n = S (W Omega^{n-1} - sum_k Omega^k B_{n-k}),
  //   B_n = P W Omega^{n-1},  S = sum_excited |phi><phi| / (E0 - E_phi).
  std::vector<DenseMatrix> omega;
  std::vector<DenseMatrix> b(static_cast<size_t>(order) + 1);
  DenseMatrix o0 = DenseMatrix::Zero(dim, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    o0(static_cast<Eigen::Index>(pp.ground[static_cast<size_t>(k)]), k) = 1.0;
  }
  omega.push_back(std::move(o0));
  auto projectRows = [&](const DenseMatrix& y) {
    DenseMatrix r(p, y.cols());
    for (Eigen::Index k = 0; k < p; ++k) {
      r.row(k) = y.row(static_cast<Eigen::Index>(pp.ground[static_cast<size_t>(k)]));
    }
    return r;
  };
  for (int n = 1; n <= order; ++n) {
    DenseMatrix y = W * omega[static_cast<size_t>(n - 1)];
    b[static_cast<size_t>(n)] = projectRows(y);
    if (n == order) break;
    for (int k = 1; k < n; ++k) {
      y.noalias() -= omega[static_cast<size_t>(k)] * b[static_cast<size_t>(n - k)];
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
      y.row(i) *= -pp.resolvent[static_cast<size_t>(i)];
    }
    omega.push_back(std::move(y));
  }

  // Hermitian (des Cloizeaux) form: S^{1/2} B S^{-1/2} with
  // S = 1 + sum_n N_n and N_n = sum_a Omega^a^dag Omega^{n-a}.
  auto overlap = [&](int n) {
    DenseMatrix acc = DenseMatrix::Zero(p, p);
    for (int a = 1; a < n; ++a) {
      acc.noalias() += omega[static_cast<size_t>(a)].adjoint() *
                       omega[static_cast<size_t>(n - a)];
    }
    return acc;
  };
  std::vector<DenseMatrix> h;
  h.push_back(b[1]);
  if (order >= 2) h.push_back(b[2]);
  if (order >= 3) {
    const DenseMatrix n2 = overlap(2);
    h.push_back(b[3] + 0.5 * (n2 * b[1] - b[1] * n2));
    if (order >= 4) {
      const DenseMatrix n3 = overlap(3);
      h.push_back(b[4] + 0.5 * (n2 * b[2] - b[2] * n2) +
                  0.5 * (n3 * b[1] - b[1] * n3));
    }
  }

  for (size_t k = 0; k < h.size(); ++k) {
    const double scale = std::max(1e-300, h[k].cwiseAbs().maxCoeff());
    const double defect = (h[k] - h[k].adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-8 * scale) {
      std::ostringstream os;
      os << "order " << k + 1 << " hermiticity defect " << defect;
      out.warnings.push_back(os.str());
    }
    out.orders.push_back(toSparse(basis, perm, hermitianPart(h[k])));
  }
  return out;
}

nlohmann::json ComparisonReport::toJson() const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["kind"] = "comparison";
  j["orders"] = nlohmann::json::array();
  for (const auto& o : orders) {
    nlohmann::json jo{{"order", o.order},
                      {"frobenius", o.frobenius},
                      {"max_abs", o.maxAbs},
                      {"constant_shift", o.constantShift},
                      {"residual_norm", o.residualNorm},
                      {"fit_residual_norm", o.fitResidualNorm},
                      {"numeric_norm", o.numericNorm}};
    jo["terms"] = nlohmann::json::array();
    for (const auto& t : o.terms) {
      nlohmann::json jt{{"name", t.name},
                        {"tag", t.tag},
                        {"analytic", t.analytic},
                        {"abs_error", t.absError},
                        {"rel_error", t.relError},
                        {"note", t.note}};
      jt["fitted"] = t.fitted ? nlohmann::json(*t.fitted) : nlohmann::json();
      jo["terms"].push_back(std::move(jt));
    }
    j["orders"].push_back(std::move(jo));
  }
  return j;
}

ComparisonReport compareExpansions(const EffectiveExpansion& numeric,
                                   const EffectiveExpansion& analytic,
                                   int order) {
  if (!numeric.basis || !analytic.basis ||
      !sameRows(*numeric.basis, *analytic.basis)) {
    throw BasisMismatch("expansions live on different bases");
  }
  if (order < 1 || order > std::min(numeric.maxOrder(), analytic.maxOrder())) {
    throw InvalidArgument("order not available in both expansions");
  }
  const auto p = static_cast<Eigen::Index>(numeric.basis->size());
  const DenseMatrix id = DenseMatrix::Identity(p, p);

  ComparisonReport rep;
  for (int k = 1; k <= order; ++k) {
    const DenseMatrix num = numeric.order(k).toDense();
    const DenseMatrix ana = analytic.order(k).toDense();
    OrderComparison oc;
    oc.order = k;
    const DenseMatrix diff = num - ana;
    oc.frobenius = diff.norm();
    oc.maxAbs = p > 0 ? diff.cwiseAbs().maxCoeff() : 0.0;
    oc.numericNorm = num.norm();
    oc.constantShift = p > 0 ? diff.trace().real() / static_cast<double>(p) : 0.0;
    oc.residualNorm = (diff - oc.constantShift * id).norm();

    std::vector<DictionaryEntry> dict{{"constant", id}};
    std::vector<const EffectiveTerm*> terms;
    for (const auto& t : analytic.terms) {
      if (t.order != k) continue;
      terms.push_back(&t);
      dict.push_back({t.name, t.unit.toDense()});
    }
    const FitResult fit = fitCoefficients(num, dict);
    oc.fitResidualNorm = fit.residualNorm;
    for (size_t i = 0; i < terms.size(); ++i) {
      const auto& e = fit.entries[i + 1];
      TermComparison tc{terms[i]->name, terms[i]->tag, terms[i]->coefficient,
                        e.coefficient, e.note};
      if (e.coefficient) {
        tc.absError = std::abs(*e.coefficient - tc.analytic);
        tc.relError = tc.analytic != 0.0 ? tc.absError / std::abs(tc.analytic)
                                         : tc.absError;
      }
      oc.terms.push_back(std::move(tc));
    }
    rep.orders.push_back(std::move(oc));
  }
  return rep;
}

SpectrumComparison spectrumValidate(const SparseOperator& primitive,
                                    const SparseOperator& effectiveTotal,
                                    double alpha, int nLevels,
                                    double penaltyGap) {
  if (nLevels < 1) throw InvalidArgument("nLevels must be >= 1");
  SpectrumComparison sc;
  sc.alpha = alpha;
  sc.primitive = lowestEigenvalues(primitive, nLevels);
  sc.effective = lowestEigenvalues(effectiveTotal, nLevels);
  const size_t n = std::min(sc.primitive.size(), sc.effective.size());
  if (n < static_cast<size_t>(nLevels)) {
    sc.ambiguous = true;
    sc.note = "fewer levels available than requested";
  }
  if (penaltyGap > 0.0 && !sc.primitive.empty() &&
      sc.primitive.back() - sc.primitive.front() > 0.5 * penaltyGap) {
    sc.ambiguous = true;
    sc.note = "primitive levels from an excited penalty sector enter the window";
  }
  for (size_t i = 0; i < n; ++i) {
    const double e = std::abs((sc.primitive[i] - sc.primitive[0]) -
                              (sc.effective[i] - sc.effective[0]));
    sc.gapErrors.push_back(e);
    sc.maxGapError = std::max(sc.maxGapError, e);
  }
  return sc;
}

EffectiveProblem buildEffectiveProblem(
    std::shared_ptr<const LatticeGeometry> geom, const TruncationSpec& trunc,
    const FockConstraints& constraints, const MicroscopicCouplings& c,
    AuxHopping statistics) {
  EffectiveProblem prob;
  prob.fock = enumerateFock(std::move(geom), trunc, constraints);
  prob.primitive = buildPrimitive(prob.fock, c, statistics);
  prob.penalty = buildPenalty(prob.fock, c.lambda);
  return prob;
}

nlohmann::json ScalingReport::toJson() const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["kind"] = "spectrum_scaling";
  j["ratios"] = ratios;
  j["errors"] = errors;
  j["scaled_errors"] = scaledErrors;
  j["exponent"] = exponent;
  j["points"] = nlohmann::json::array();
  for (const auto& pt : points) {
    j["points"].push_back({{"primitive", pt.primitive},
                           {"effective", pt.effective},
                           {"gap_errors", pt.gapErrors},
                           {"alpha", pt.alpha},
                           {"ambiguous", pt.ambiguous},
                           {"note", pt.note}});
  }
  return j;
}

ScalingReport spectrumSweep(const SweepSetup& setup) {
  if (setup.ratios.size() < 2) {
    throw InvalidArgument("a sweep needs at least two ratios");
  }
  ScalingReport rep;
  for (double r : setup.ratios) {
    if (!(r > 0.0)) throw InvalidArgument("ratios must be positive");
    MicroscopicCouplings c = setup.couplings;
    c.epsilon = r * c.lambda;
    const EffectiveProblem prob = buildEffectiveProblem(
        setup.geometry, setup.truncation, setup.constraints, c,
        setup.statistics);
    EffectiveExpansion num =
        effectiveNumeric(prob.primitive, prob.penalty, setup.order);
    SparseOperator eff = num.total();
    if (setup.source == EffectiveSource::Analytic) {
      eff = effectiveAnalytic(c, num.basis, setup.order).total();
    }
    const double alpha = deriveCouplings(c).alpha;
    const ProjectorPair pp = ProjectorPair::fromPenalty(prob.penalty);
    SpectrumComparison sc =
        spectrumValidate(prob.primitive, eff, alpha, setup.levels, pp.gap);
    rep.ratios.push_back(r);
    rep.errors.push_back(sc.maxGapError);
    rep.scaledErrors.push_back(alpha * sc.maxGapError);
    rep.points.push_back(std::move(sc));
  }
  rep.exponent = powerLawExponent(rep.ratios, rep.errors);
  return rep;
}

const BudgetRow& CorrectionBudget::row(const std::string& name) const {
  for (const auto& r : rows) {
    if (r.name == name) return r;
  }
  throw InvalidArgument("no budget row '" + name + "'");
}

nlohmann::json CorrectionBudget::toJson() const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["kind"] = "correction_budget";
  j["g"] = g;
  j["R"] = R;
  j["n0l"] = n0l;
  j["epsilon_over_lambda"] = epsilonOverLambda;
  j["links"] = links;
  j["plaquettes"] = plaquettes;
  j["neighbour_pairs"] = neighbourPairs;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"name", r.name},
                         {"magnitude", r.magnitude},
                         {"relative", r.relative},
                         {"scaling", r.scaling}});
  }
  return j;
}

CorrectionBudget correctionBudget(double g, double R, int n0l,
                                  const LatticeGeometry* geom) {
  if (!(g > 0.0)) throw InvalidArgument("g must be positive");
  if (R < 0.0) throw InvalidArgument("R must be non-negative");
  if (n0l < 2 || n0l % 2 != 0) throw InvalidArgument("N0l must be even, >= 2");
  const InverseCouplings inv = invertCouplings(g, R, n0l);
  const double x = inv.epsilonOverLambda;
  const double n = n0l;
  const double nn = n * (n + 2.0);
  const double plaq = 0.5 / (g * g);

  CorrectionBudget cb;
  cb.g = g;
  cb.R = R;
  cb.n0l = n0l;
  cb.epsilonOverLambda = x;
  if (geom) {
    cb.links = geom->numLinks();
    cb.plaquettes = geom->numPlaquettes();
    cb.neighbourPairs = static_cast<int>(geom->adjacentLinkPairs().size());
  }
  auto add = [&](std::string name, double mag, std::string scaling) {
    cb.rows.push_back({std::move(name), mag, mag / plaq, std::move(scaling)});
  };
  const double x2 = x * x;
  const double x6 = x2 * x2 * x2;
  add("plaquette", plaq, "1/(2 g^2)");
  add("nn_electric", -2.0 / (15.0 * g * g) / (nn * nn),
      "(eps/lambda)^4, N0l^-4");
  add("electric_quartic", 8.0 / (5.0 * g * g) / (nn * nn),
      "(eps/lambda)^4, N0l^-4");
  add("dressed_hopping", R * R / (n * n) * x2, "R^2 (eps/lambda)^2 / N0l^2");
  add("squared_hopping", 5.0 * std::pow(R, 4) * g * g / (n * n) * x6,
      "R^4 g^2 (eps/lambda)^6 / N0l^2");
  // eps' vanishes with R, and so does this weight.
  add("dressed_hopping_mu_prime", R > 0.0 ? -1.25 * g * g / n * x6 : 0.0,
      "g^2 (eps/lambda)^6 / N0l");
  return cb;
}

}  // namespace ahsim
