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
#include <map>
#include <random>
#include <set>

#include "ahsim/app.hpp"
#include "ahsim/effective.hpp"
#include "ahsim/hamiltonians.hpp"
#include "ahsim/observables.hpp"
#include "ahsim/solvers.hpp"
#include "ahsim/timeseries.hpp"

namespace ahsim::app {

using nlohmann::json;

namespace {

constexpr const char* kReportSchema = "ahsim.report.v1";

struct Setup {
  std::shared_ptr<const LatticeGeometry> geom;
  TruncationSpec trunc;
  StaticCharges charges;
  Variant variant = Variant::Ideal;
  std::uint64_t seed = 0;
};

Setup setupFrom(const json& cfg) {
  Setup s;
  const json& lat = cfg.at("lattice");
  s.geom = std::make_shared<const LatticeGeometry>(
      lat.at("lx").get<int>(), lat.at("ly").get<int>(),
      lat.at("boundary") == "periodic" ? Boundary::Periodic : Boundary::Open);
  s.trunc.emax = cfg.at("truncation").at("emax");
  s.trunc.qmax = cfg.at("truncation").at("qmax");
  if (cfg.contains("atomic")) {
    const json& a = cfg.at("atomic");
    s.trunc.atomic = AtomicOccupancy{a.at("n0l"), a.at("n0v"), a.at("aux_cap")};
  }
  s.charges = cfg.at("charges").get<StaticCharges>();
  s.variant = cfg.at("variant") == "atomic" ? Variant::Atomic : Variant::Ideal;
  s.seed = cfg.at("seed").get<std::uint64_t>();
  return s;
}

LanczosOptions lanczosFrom(const json& cfg) {
  const json& s = cfg.at("solver");
  LanczosOptions o;
  o.tol = s.at("tol");
  o.maxKrylov = s.at("max_krylov");
  o.maxRestarts = s.at("max_restarts");
  o.seed = cfg.at("seed").get<std::uint64_t>();
  return o;
}

KrylovOptions krylovFrom(const json& cfg) {
  const json& s = cfg.at("solver");
  KrylovOptions o;
  o.tol = s.at("krylov_tol");
  o.maxDim = s.at("krylov_dim");
  return o;
}

std::shared_ptr<const ConfigBasis> sectorOf(const Setup& s) {
  auto basis = enumerateSector(s.geom, s.trunc, s.charges);
  if (basis->size() == 0) {
    const Feasibility f = sectorFeasible(*s.geom, s.trunc, s.charges);
    throw InfeasibleSector("static-charge sector is empty under the truncation" +
                           (f.feasible ? std::string() : " (" + f.reason + ")"));
  }
  return basis;
}

json configJson(const Basis& b, size_t i) {
  const GaugeConfig c = configOf(b, i);
  return {{"electric", c.electric}, {"charge", c.charge}};
}

std::string dump(const json& j) { return canonicalText(j); }

/// Observables averaged over an orthonormal set (the projector onto a
/// degenerate cluster); independent of the chosen span.
json clusterObservables(const std::shared_ptr<const Basis>& basis,
                        const std::vector<Vector>& members, Variant variant,
                        const json& obsCfg) {
  const double w = 1.0 / static_cast<double>(members.size());
  std::vector<double> e(static_cast<size_t>(basis->numLinks()), 0.0);
  std::vector<double> q(static_cast<size_t>(basis->numVertices()), 0.0);
  std::vector<double> p(static_cast<size_t>(basis->geometry().numPlaquettes()), 0.0);
  json strings = json::array();
  double intact = 0.0, pair = 0.0, broken = 0.0;
  std::vector<double> flux;
  for (const auto& v : members) {
    const QuantumState st(basis, v);
    const auto em = electricFieldMap(st);
    const auto qm = chargeMap(st);
    const auto pm = plaquetteExpectation(st, variant);
    for (size_t i = 0; i < e.size(); ++i) e[i] += w * em.mean[i];
    for (size_t i = 0; i < q.size(); ++i) q[i] += w * qm.mean[i];
    for (size_t i = 0; i < p.size(); ++i) p[i] += w * pm[i];
    if (obsCfg.contains("string_path")) {
      std::vector<DirectedLink> path;
      for (const auto& d : obsCfg.at("string_path")) path.push_back({d[0], d[1]});
      std::vector<std::pair<int, int>> pairs;
      if (obsCfg.contains("break_pairs")) {
        for (const auto& d : obsCfg.at("break_pairs")) pairs.emplace_back(d[0], d[1]);
      }
      const auto sd = stringDiagnostics(
          st, path, {obsCfg.at("endpoints")[0], obsCfg.at("endpoints")[1]}, pairs);
      intact += w * sd.stringIntactProb;
      pair += w * sd.chargePairProb;
      broken += w * sd.brokenProb;
      if (flux.empty()) flux.assign(sd.fluxProfile.size(), 0.0);
      for (size_t i = 0; i < flux.size(); ++i) flux[i] += w * sd.fluxProfile[i];
    }
  }
  json out{{"electric_mean", e}, {"charge_mean", q}, {"plaquette", p}};
  if (obsCfg.contains("string_path")) {
    out["string"] = {{"intact", intact},
                     {"charge_pair", pair},
                     {"broken", broken},
                     {"flux_profile", flux}};
  }
  return out;
}

Spectrum lowest(const SparseOperator& H, double R, int k,
                const LanczosOptions& opt) {
  k = std::min<int>(k, static_cast<int>(H.rows()));
  if (R > 0.0) return groundStates(H, k, opt);
  return neutralGroundStates(H, k, opt);
}

// --- modes -------------------------------------------------------------------

std::vector<Artifact> sectorInfo(const json& cfg) {
  const Setup s = setupFrom(cfg);
  const Feasibility f = sectorFeasible(*s.geom, s.trunc, s.charges);
  json rep{{"schema", kReportSchema},
           {"mode", "sector_info"},
           {"feasible", f.feasible},
           {"reason", f.reason},
           {"dimension_bound", sectorDimensionBound(*s.geom, s.trunc)}};
  auto basis = enumerateSector(s.geom, s.trunc, s.charges);
  rep["dimension"] = basis->size();
  if (basis->size() == 0) {
    rep["feasible"] = false;
    if (f.feasible) rep["reason"] = "no configuration within the truncation";
  }
  std::set<size_t> picks;
  std::mt19937_64 rng(s.seed);
  const size_t want = std::min<size_t>(10, basis->size());
  while (picks.size() < want) picks.insert(rng() % basis->size());
  rep["samples"] = json::array();
  for (size_t i : picks) rep["samples"].push_back(configJson(*basis, i));
  return {{"sector.json", dump(rep)}};
}

std::vector<Artifact> ground(const json& cfg) {
  const Setup s = setupFrom(cfg);
  const json& h = cfg.at("hamiltonian");
  const double g = h.at("g");
  const double R = h.at("R");
  const bool magnetic = h.at("magnetic");
  const int levels = cfg.at("solver").at("levels");
  const LanczosOptions opt = lanczosFrom(cfg);

  auto basis = sectorOf(s);
  const SparseOperator H = buildAbelianHiggs(basis, g, R, s.variant, magnetic);
  const Spectrum sp = lowest(H, R, levels, opt);

  json rep{{"schema", kReportSchema}, {"mode", "ground"},
           {"dimension", basis->size()}, {"eigenvalues", sp.values},
           {"max_residual", sp.maxResidual},
           {"matrix_vector_products", sp.matrixVectorProducts},
           {"cluster_threshold", sp.clusterThreshold},
           {"neutral_subspace", !(R > 0.0)}};
  rep["clusters"] = json::array();
  for (const auto& c : sp.clusters()) {
    rep["clusters"].push_back({{"value", c.value}, {"size", c.members.size()}});
  }
  const auto clusters = sp.clusters();
  std::vector<Vector> members;
  for (int i : clusters.front().members) members.push_back(sp.vectors[static_cast<size_t>(i)]);
  rep["ground_cluster"] =
      clusterObservables(basis, members, s.variant, cfg.at("observables"));

  // Truncation convergence: rerun one step higher in Emax.
  if (h.at("convergence_check").get<bool>()) {
    json conv;
    if (s.trunc.atomic) {
      conv["skipped"] = "Emax is pinned to N0l/2 in atomic mode";
    } else {
      try {
        Setup up = s;
        up.trunc.emax += 1;
        auto b2 = sectorOf(up);
        const SparseOperator H2 = buildAbelianHiggs(b2, g, R, s.variant, magnetic);
        const Spectrum sp2 = lowest(H2, R, 1, opt);
        std::vector<Vector> m2;
        const auto c2 = sp2.clusters();
        for (int i : c2.front().members) {
          m2.push_back(sp2.vectors[static_cast<size_t>(i)]);
        }
        const json o2 = clusterObservables(b2, m2, s.variant, json::object());
        double de = 0.0;
        for (size_t l = 0; l < o2["electric_mean"].size(); ++l) {
          de = std::max(de, std::abs(o2["electric_mean"][l].get<double>() -
                                     rep["ground_cluster"]["electric_mean"][l].get<double>()));
        }
        conv = {{"emax", up.trunc.emax},
                {"dimension", b2->size()},
                {"e0", sp2.values.front()},
                {"delta_e0", sp2.values.front() - sp.values.front()},
                {"max_delta_electric_mean", de}};
      } catch (const ResourceLimit& e) {
        conv["skipped"] = e.what();
      }
    }
    rep["convergence"] = conv;
  }
  return {{"ground.json", dump(rep)}};
}

std::vector<Artifact> timed(const json& cfg, const std::string& mode) {
  const Setup s = setupFrom(cfg);
  const json& sc = cfg.at("schedule");
  const json& obs = cfg.at("observables");
  const LanczosOptions lopt = lanczosFrom(cfg);

  Schedule sched;
  sched.space = sc.at("space") == "microscopic" ? RampSpace::Microscopic
                                                : RampSpace::Target;
  sched.tEnd = sc.at("t_end");
  sched.magnetic = sc.at("magnetic");
  const int n0l = s.trunc.atomic ? s.trunc.atomic->n0l : 2;
  for (const auto& p : sc.at("points")) {
    SchedulePoint sp;
    sp.t = p.at("t");
    if (sched.space == RampSpace::Target) {
      sp.g = p.at("g");
      sp.R = p.at("R");
    } else {
      sp.micro.lambda = p.at("lambda");
      sp.micro.epsilon = p.at("epsilon");
      sp.micro.epsilonPrime = p.at("epsilon_prime");
      sp.micro.n0l = n0l;
    }
    sp.next = p.at("next") == "linear" ? Interpolation::Linear : Interpolation::Hold;
    sched.points.push_back(sp);
  }
  sched.validate();

  auto basis = sectorOf(s);
  std::shared_ptr<const Basis> bptr = basis;

  // Initial state.
  const json& ini = cfg.at("initial");
  QuantumState psi0;
  if (ini.at("kind") == "config") {
    GaugeConfig gc{ini.at("electric").get<std::vector<int>>(),
                   ini.at("charge").get<std::vector<int>>()};
    if (static_cast<int>(gc.electric.size()) != basis->numLinks() ||
        static_cast<int>(gc.charge.size()) != basis->numVertices()) {
      throw ConfigError({"config.initial has the wrong number of entries"});
    }
    const auto row = packRow(gc);
    const auto idx = basis->find(row);
    if (!idx) {
      throw ConfigError({"config.initial is not in the static-charge sector"});
    }
    psi0 = QuantumState::basisState(bptr, *idx);
  } else {
    auto [g0, r0] = sched.couplingsAt(0.0);
    if (ini.contains("g")) g0 = ini.at("g");
    if (ini.contains("R")) r0 = ini.at("R");
    const SparseOperator H0 =
        buildAbelianHiggs(basis, g0, r0, s.variant, sched.magnetic);
    const Spectrum sp = lowest(H0, r0, 1, lopt);
    if (sp.clusters().front().members.size() > 1) {
      throw ConfigError({"config.initial ground state is degenerate (cluster of " +
                         std::to_string(sp.clusters().front().members.size()) +
                         "); give an explicit initial configuration"});
    }
    psi0 = QuantumState(bptr, sp.vectors.front());
  }

  // Time step.
  double dt = 0.0;
  if (cfg.at("solver").contains("dt")) {
    dt = cfg.at("solver").at("dt");
  } else {
    dt = std::numeric_limits<double>::infinity();
    for (const auto& p : sched.points) {
      dt = std::min(dt, defaultTimeStep(buildTarget(
                            basis, sched.coefficientsAt(p.t), s.variant)));
    }
  }

  // Channels.
  std::vector<std::string> names{"energy", "gauss_residual"};
  for (int l = 0; l < basis->numLinks(); ++l) names.push_back("E_l" + std::to_string(l));
  for (int v = 0; v < basis->numVertices(); ++v) names.push_back("Q_v" + std::to_string(v));
  for (int p = 0; p < basis->geometry().numPlaquettes(); ++p) {
    names.push_back("P_p" + std::to_string(p));
  }
  std::vector<DirectedLink> path;
  std::vector<std::pair<int, int>> pairs;
  std::pair<int, int> ends{0, 0};
  const bool strings = obs.contains("string_path");
  if (strings) {
    for (const auto& d : obs.at("string_path")) path.push_back({d[0], d[1]});
    if (obs.contains("break_pairs")) {
      for (const auto& d : obs.at("break_pairs")) pairs.emplace_back(d[0], d[1]);
    }
    ends = {obs.at("endpoints")[0], obs.at("endpoints")[1]};
    for (const char* n : {"string_intact", "charge_pair", "broken"}) names.push_back(n);
  }
  json meta{{"mode", mode},
            {"schedule", sc},
            {"charges", s.charges},
            {"truncation", cfg.at("truncation")},
            {"lattice", cfg.at("lattice")},
            {"variant", cfg.at("variant")},
            {"dt", dt}};
  TimeSeries ts(names, meta);

  std::map<std::tuple<double, double, double, double>, SparseOperator> cache;
  auto hamAt = [&](double t) -> const SparseOperator& {
    const TargetCoefficients c = sched.coefficientsAt(t);
    const auto key = std::make_tuple(c.electric, c.magnetic, c.mass, c.hopping);
    auto it = cache.find(key);
    if (it == cache.end()) {
      if (cache.size() > 64) cache.clear();
      it = cache.emplace(key, buildTarget(basis, c, s.variant)).first;
    }
    return it->second;
  };

  Observer observer = [&](double t, const QuantumState& psi) {
    std::vector<double> row;
    row.push_back(hamAt(t).expectation(psi.amplitudes).real());
    row.push_back(gaussResidual(psi, s.charges));
    const auto em = electricFieldMap(psi);
    const auto qm = chargeMap(psi);
    const auto pm = plaquetteExpectation(psi, s.variant);
    row.insert(row.end(), em.mean.begin(), em.mean.end());
    row.insert(row.end(), qm.mean.begin(), qm.mean.end());
    row.insert(row.end(), pm.begin(), pm.end());
    if (strings) {
      const auto sd = stringDiagnostics(psi, path, ends, pairs);
      row.push_back(sd.stringIntactProb);
      row.push_back(sd.chargePairProb);
      row.push_back(sd.brokenProb);
    }
    ts.append(t, row);
  };

  ScheduleOptions so;
  so.recordEvery = sc.at("record_every");
  so.krylov = krylovFrom(cfg);
  const EvolveResult res = runSchedule(sched, psi0, s.variant, dt, so, observer);

  json fin = clusterObservables(bptr, {res.final.amplitudes}, s.variant, obs);
  fin["schema"] = kReportSchema;
  fin["mode"] = mode;
  fin["t_end"] = sched.tEnd;
  fin["dt"] = dt;
  fin["substeps"] = res.substeps;
  fin["max_norm_drift"] = res.maxNormDrift;
  const int shots = obs.at("samples");
  if (shots > 0) {
    const auto idx = sampleConfigurations(res.final, shots, s.seed);
    fin["samples"] = {{"shots", shots},
                      {"electric_mean", sampledElectricMean(*basis, idx)}};
  }
  return {{"timeseries.csv", ts.toCsv()},
          {"timeseries.json", dump(ts.toJson())},
          {"final.json", dump(fin)}};
}

std::vector<Artifact> effectiveValidate(const json& cfg) {
  const Setup s = setupFrom(cfg);
  const json& e = cfg.at("effective");
  MicroscopicCouplings c;
  c.lambda = e.at("lambda");
  c.epsilon = e.at("epsilon");
  c.epsilonPrime = e.at("epsilon_prime");
  c.mu = e.at("mu");
  c.muPrime = e.at("mu_prime");
  c.n0l = s.trunc.atomic->n0l;
  c.n0v = s.trunc.atomic->n0v;
  const int order = e.at("order");
  const AuxHopping stats =
      e.at("statistics") == "bosonic" ? AuxHopping::Bosonic : AuxHopping::UnitAmplitude;
  FockConstraints fc;
  fc.auxTotal = s.geom->numVertices();
  if (e.at("gauss").get<bool>()) fc.extendedGauss = s.charges;

  const EffectiveProblem prob = buildEffectiveProblem(s.geom, s.trunc, fc, c, stats);
  const EffectiveExpansion num = effectiveNumeric(prob.primitive, prob.penalty, order);
  const EffectiveExpansion ana = effectiveAnalytic(c, num.basis, order);
  const ComparisonReport cmp = compareExpansions(num, ana, order);
  const DerivedCouplings d = deriveCouplings(c);
  const ProjectorPair pp = ProjectorPair::fromPenalty(prob.penalty);
  const int levels = std::min<int>(e.at("levels").get<int>(),
                                   static_cast<int>(num.basis->size()));

  json rep = cmp.toJson();
  rep["mode"] = "effective_validate";
  rep["fock_dimension"] = prob.fock->size();
  rep["sector_dimension"] = num.basis->size();
  rep["warnings"] = num.warnings;
  rep["derived"] = {{"g", d.g}, {"R", d.R}, {"alpha", d.alpha}};
  for (auto& o : rep["orders"]) {
    o["alpha_scaled_numeric_norm"] = d.alpha * o["numeric_norm"].get<double>();
  }
  rep["terms"] = json::array();
  for (const auto& t : ana.terms) {
    rep["terms"].push_back({{"name", t.name},
                            {"order", t.order},
                            {"coefficient", t.coefficient},
                            {"alpha_scaled", d.alpha * t.coefficient},
                            {"tag", t.tag}});
  }
  auto spec = [&](const SparseOperator& eff) {
    const SpectrumComparison sc =
        spectrumValidate(prob.primitive, eff, d.alpha, levels, pp.gap);
    return json{{"primitive", sc.primitive}, {"effective", sc.effective},
                {"gap_errors", sc.gapErrors}, {"max_gap_error", sc.maxGapError},
                {"ambiguous", sc.ambiguous}, {"note", sc.note}};
  };
  rep["spectrum"] = {{"numeric", spec(num.total())}, {"analytic", spec(ana.total())}};

  std::vector<Artifact> out{{"comparison.json", dump(rep)}};
  if (e.contains("ratios") && e.at("ratios").size() >= 2) {
    SweepSetup sw;
    sw.geometry = s.geom;
    sw.truncation = s.trunc;
    sw.constraints = fc;
    sw.couplings = c;
    sw.statistics = stats;
    sw.source = e.at("source") == "numeric" ? EffectiveSource::Numeric
                                            : EffectiveSource::Analytic;
    sw.order = order;
    sw.levels = levels;
    sw.ratios = e.at("ratios").get<std::vector<double>>();
    json sj = spectrumSweep(sw).toJson();
    sj["mode"] = "effective_validate";
    out.push_back({"scaling.json", dump(sj)});
  }
  return out;
}

std::vector<Artifact> budget(const json& cfg) {
  const json& b = cfg.at("budget");
  std::shared_ptr<const LatticeGeometry> geom;
  if (cfg.contains("lattice")) geom = setupFrom(cfg).geom;
  const CorrectionBudget cb =
      correctionBudget(b.at("g"), b.at("R"), b.at("n0l"), geom.get());
  json rep = cb.toJson();
  rep["mode"] = "correction_budget";
  std::string csv = "term,magnitude,relative,scaling\r\n";
  for (const auto& r : cb.rows) {
    csv += csvField(r.name) + "," + formatNumber(r.magnitude) + "," +
           formatNumber(r.relative) + "," + csvField(r.scaling) + "\r\n";
  }
  return {{"budget.json", dump(rep)}, {"budget.csv", csv}};
}

}  // namespace

std::vector<Artifact> executeMode(const json& config) {
  const std::string mode = config.at("mode");
  if (mode == "sector_info") return sectorInfo(config);
  if (mode == "ground") return ground(config);
  if (mode == "quench" || mode == "adiabatic") return timed(config, mode);
  if (mode == "effective_validate") return effectiveValidate(config);
  if (mode == "correction_budget") return budget(config);
  throw ConfigError({"config.mode unknown: " + mode});
}

}  // namespace ahsim::app
