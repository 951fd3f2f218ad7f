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

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "ahsim/app.hpp"
#include "ahsim/couplings.hpp"

namespace ahsim::app {

using nlohmann::json;

ConfigError::ConfigError(std::vector<std::string> errors)
    : Error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& e : errors) msg += "\n  " + e;
        return msg;
      }()),
      errors_(std::move(errors)) {}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// One JSON object being normalized. Reads keys, records errors and
/// finally reports keys that were never read.
class Section {
 public:
  Section(const json& src, std::string path, std::vector<std::string>& errs)
      : src_(src), path_(std::move(path)), errs_(errs) {
    if (!src_.is_null() && !src_.is_object()) {
      error("", "must be an object");
    }
  }

  bool has(const std::string& key) const {
    return src_.is_object() && src_.contains(key);
  }

  const json* raw(const std::string& key) {
    seen_.insert(key);
    if (!src_.is_object() || !src_.contains(key)) return nullptr;
    return &src_.at(key);
  }

  void integer(const std::string& key, std::optional<long> def,
               long lo = std::numeric_limits<long>::min(),
               long hi = std::numeric_limits<long>::max()) {
    const json* v = raw(key);
    if (!v) {
      if (def) out[key] = *def;
      else error(key, "is required");
      return;
    }
    if (!v->is_number_integer()) return error(key, "must be an integer");
    const long x = v->get<long>();
    if (x < lo || x > hi) {
      return error(key, "must be in [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
    }
    out[key] = x;
  }

  void number(const std::string& key, std::optional<double> def,
              double lo = -kInf, double hi = kInf, bool openLo = false) {
    const json* v = raw(key);
    if (!v) {
      if (def) out[key] = *def;
      else error(key, "is required");
      return;
    }
    if (!v->is_number()) return error(key, "must be a number");
    const double x = v->get<double>();
    if (x < lo || x > hi || (openLo && x == lo)) {
      std::ostringstream os;
      os << "must be in " << (openLo ? "(" : "[") << lo << ", " << hi << "]";
      return error(key, os.str());
    }
    out[key] = x;
  }

  void boolean(const std::string& key, bool def) {
    const json* v = raw(key);
    if (!v) {
      out[key] = def;
      return;
    }
    if (!v->is_boolean()) return error(key, "must be true or false");
    out[key] = v->get<bool>();
  }

  void choice(const std::string& key, const std::vector<std::string>& options,
              std::optional<std::string> def) {
    const json* v = raw(key);
    if (!v) {
      if (def) out[key] = *def;
      else error(key, "is required");
      return;
    }
    if (!v->is_string()) return error(key, "must be a string");
    const auto s = v->get<std::string>();
    for (const auto& o : options) {
      if (o == s) {
        out[key] = s;
        return;
      }
    }
    std::string list;
    for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
    error(key, "must be one of: " + list);
  }

  void text(const std::string& key) {
    const json* v = raw(key);
    if (!v) return;
    if (!v->is_string() || v->get<std::string>().empty()) {
      return error(key, "must be a non-empty string");
    }
    out[key] = *v;
  }

  void intList(const std::string& key) {
    const json* v = raw(key);
    if (!v) return;
    if (!v->is_array()) return error(key, "must be an array of integers");
    for (const auto& e : *v) {
      if (!e.is_number_integer()) return error(key, "must be an array of integers");
    }
    out[key] = *v;
  }

  void numberList(const std::string& key, double lo, double hi) {
    const json* v = raw(key);
    if (!v) return;
    if (!v->is_array()) return error(key, "must be an array of numbers");
    for (const auto& e : *v) {
      if (!e.is_number() || e.get<double>() <= lo || e.get<double>() > hi) {
        std::ostringstream os;
        os << "entries must be numbers in (" << lo << ", " << hi << "]";
        return error(key, os.str());
      }
    }
    out[key] = *v;
  }

  /// Array of integer tuples of a fixed length.
  void tupleList(const std::string& key, size_t width) {
    const json* v = raw(key);
    if (!v) return;
    const std::string msg =
        "must be an array of " + std::to_string(width) + "-integer arrays";
    if (!v->is_array()) return error(key, msg);
    for (const auto& e : *v) {
      if (!e.is_array() || e.size() != width) return error(key, msg);
      for (const auto& x : e) {
        if (!x.is_number_integer()) return error(key, msg);
      }
    }
    out[key] = *v;
  }

  void finish() {
    if (!src_.is_object()) return;
    for (const auto& [k, _] : src_.items()) {
      if (!seen_.count(k)) error(k, "is not a recognized key");
    }
  }

  void error(const std::string& key, const std::string& what) {
    errs_.push_back(path_ + (key.empty() ? "" : "." + key) + " " + what);
  }

  json out = json::object();

 private:
  json src_;
  std::string path_;
  std::vector<std::string>& errs_;
  std::set<std::string> seen_;
};

const std::vector<std::string> kModes{"sector_info",       "ground",
                                      "quench",            "adiabatic",
                                      "effective_validate", "correction_budget"};

json sub(const json& doc, const char* key) {
  return doc.is_object() && doc.contains(key) ? doc.at(key) : json();
}

}  // namespace

json validateConfig(const json& doc) {
  std::vector<std::string> errs;
  if (!doc.is_object()) throw ConfigError({"configuration must be a JSON object"});
  Section top(doc, "config", errs);
  top.choice("mode", kModes, std::nullopt);
  const std::string mode =
      top.out.contains("mode") ? top.out["mode"].get<std::string>() : "";
  top.integer("seed", 0L, 0);
  top.text("output");
  if (top.has("threads")) top.integer("threads", std::nullopt, 1, 4096);
  else top.raw("threads");
  top.raw("schema");  // echoed by normalization
  top.choice("variant", {"ideal", "atomic"}, "ideal");

  // Lattice.
  const bool needLattice = mode != "correction_budget";
  long nv = 0;
  if (top.raw("lattice") || needLattice) {
    const json src = sub(doc, "lattice");
    if (src.is_null() && needLattice) {
      top.error("lattice", "is required");
    } else {
      Section s(src, "config.lattice", errs);
      s.integer("lx", std::nullopt, 1, 64);
      s.integer("ly", 1L, 1, 64);
      s.choice("boundary", {"open", "periodic"}, "open");
      s.finish();
      if (s.out.contains("lx") && s.out.contains("ly")) {
        nv = s.out["lx"].get<long>() * s.out["ly"].get<long>();
        if (s.out["boundary"] == "periodic" &&
            ((s.out["lx"].get<long>() % 2) || (s.out["ly"].get<long>() % 2))) {
          s.error("boundary", "periodic needs even extents");
        }
      }
      top.out["lattice"] = s.out;
    }
  }

  // Atomic occupancies.
  const bool needAtomic = mode == "effective_validate" ||
                          top.out.value("variant", "") == "atomic";
  {
    const json src = sub(doc, "atomic");
    top.raw("atomic");
    if (!src.is_null() || needAtomic) {
      Section s(src, "config.atomic", errs);
      s.integer("n0l", 2L, 2, 126);
      s.integer("n0v", 1L, 1, 126);
      s.integer("aux_cap", 3L, 1, 126);
      s.finish();
      if (s.out.contains("n0l") && s.out["n0l"].get<long>() % 2) {
        s.error("n0l", "must be even");
      }
      top.out["atomic"] = s.out;
    }
  }

  // Truncation.
  {
    Section s(sub(doc, "truncation"), "config.truncation", errs);
    top.raw("truncation");
    std::optional<long> emaxDefault = 1L;
    if (top.out.contains("atomic") && top.out["atomic"].contains("n0l")) {
      emaxDefault = top.out["atomic"]["n0l"].get<long>() / 2;
    }
    s.integer("emax", emaxDefault, 0, 60);
    s.integer("qmax", 0L, 0, 60);
    s.finish();
    if (top.out.contains("atomic") && s.out.contains("emax") &&
        top.out["atomic"].contains("n0l") &&
        s.out["emax"].get<long>() * 2 != top.out["atomic"]["n0l"].get<long>()) {
      s.error("emax", "must equal n0l/2 in atomic mode");
    }
    top.out["truncation"] = s.out;
  }

  // Static charges.
  if (const json* c = top.raw("charges")) {
    bool ok = c->is_array();
    if (ok) {
      for (const auto& e : *c) ok = ok && e.is_number_integer();
    }
    if (!ok) {
      top.error("charges", "must be an array of integers");
    } else if (nv > 0 && static_cast<long>(c->size()) != nv) {
      top.error("charges", "needs one entry per vertex (" + std::to_string(nv) + ")");
    } else {
      top.out["charges"] = *c;
    }
  } else if (nv > 0) {
    top.out["charges"] = std::vector<int>(static_cast<size_t>(nv), 0);
  }

  // Solver tolerances.
  {
    Section s(sub(doc, "solver"), "config.solver", errs);
    top.raw("solver");
    s.number("tol", 1e-11, 0.0, 1e-2, true);
    s.integer("max_krylov", 120L, 4, 10000);
    s.integer("max_restarts", 400L, 1, 100000);
    s.number("krylov_tol", 1e-12, 0.0, 1e-2, true);
    s.integer("krylov_dim", 40L, 2, 1000);
    s.integer("levels", 3L, 1, 1000);
    if (s.has("dt")) s.number("dt", std::nullopt, 0.0, kInf, true);
    else s.raw("dt");
    s.finish();
    top.out["solver"] = s.out;
  }

  // Ground-state couplings.
  if (top.raw("hamiltonian") || mode == "ground") {
    const json src = sub(doc, "hamiltonian");
    if (src.is_null()) {
      top.error("hamiltonian", "is required for mode ground");
    } else {
      Section s(src, "config.hamiltonian", errs);
      s.number("g", std::nullopt, 0.0, kInf, true);
      s.number("R", 0.0, 0.0);
      s.boolean("magnetic", true);
      s.boolean("convergence_check", true);
      s.finish();
      top.out["hamiltonian"] = s.out;
    }
  }

  // Schedule and initial state.
  const bool timed = mode == "quench" || mode == "adiabatic";
  if (top.raw("schedule") || timed) {
    const json src = sub(doc, "schedule");
    if (src.is_null()) {
      top.error("schedule", "is required for mode " + mode);
    } else {
      Section s(src, "config.schedule", errs);
      s.choice("space", {"target", "microscopic"}, "target");
      s.number("t_end", std::nullopt, 0.0, kInf, true);
      s.boolean("magnetic", true);
      s.integer("record_every", 1L, 1);
      const bool micro = s.out.value("space", "") == "microscopic";
      const json* pts = s.raw("points");
      json normPts = json::array();
      if (!pts || !pts->is_array() || pts->empty()) {
        s.error("points", "must be a non-empty array");
      } else {
        for (size_t i = 0; i < pts->size(); ++i) {
          Section p((*pts)[i], "config.schedule.points[" + std::to_string(i) + "]",
                    errs);
          p.number("t", std::nullopt, 0.0);
          if (micro) {
            p.number("lambda", std::nullopt, 0.0, kInf, true);
            p.number("epsilon", std::nullopt, 0.0, kInf, true);
            p.number("epsilon_prime", 0.0, -kInf, 0.0);
          } else {
            p.number("g", std::nullopt, 0.0, kInf, true);
            p.number("R", 0.0, 0.0);
          }
          p.choice("next", {"hold", "linear"},
                   mode == "adiabatic" ? "linear" : "hold");
          p.finish();
          normPts.push_back(p.out);
        }
        for (size_t i = 0; i < normPts.size(); ++i) {
          if (!normPts[i].contains("t")) continue;
          const double t = normPts[i]["t"].get<double>();
          if (i == 0 && t != 0.0) s.error("points", "must start at t = 0");
          if (i > 0 && normPts[i - 1].contains("t") &&
              !(t > normPts[i - 1]["t"].get<double>())) {
            s.error("points", "times must increase strictly");
          }
          if (s.out.contains("t_end") && t > s.out["t_end"].get<double>()) {
            s.error("t_end", "precedes a breakpoint");
          }
        }
      }
      s.out["points"] = normPts;
      s.finish();
      top.out["schedule"] = s.out;
    }

    Section ini(sub(doc, "initial"), "config.initial", errs);
    top.raw("initial");
    ini.choice("kind", {"ground", "config"}, "ground");
    if (ini.out.value("kind", "") == "config") {
      ini.intList("electric");
      ini.intList("charge");
      if (!ini.out.contains("electric")) ini.error("electric", "is required");
      if (!ini.out.contains("charge")) ini.error("charge", "is required");
      ini.raw("g");
      ini.raw("R");
    } else {
      if (ini.has("g")) ini.number("g", std::nullopt, 0.0, kInf, true);
      else ini.raw("g");
      if (ini.has("R")) ini.number("R", std::nullopt, 0.0);
      else ini.raw("R");
      ini.raw("electric");
      ini.raw("charge");
    }
    ini.finish();
    top.out["initial"] = ini.out;
  }

  // Observables.
  {
    Section s(sub(doc, "observables"), "config.observables", errs);
    top.raw("observables");
    s.tupleList("string_path", 2);
    s.intList("endpoints");
    s.tupleList("break_pairs", 2);
    s.integer("samples", 0L, 0, 100000000);
    s.finish();
    if (s.out.contains("string_path") != s.out.contains("endpoints")) {
      s.error("string_path", "and endpoints go together");
    }
    if (s.out.contains("endpoints") && s.out["endpoints"].size() != 2) {
      s.error("endpoints", "must hold two vertices");
    }
    top.out["observables"] = s.out;
  }

  // Effective validation.
  if (top.raw("effective") || mode == "effective_validate") {
    const json src = sub(doc, "effective");
    if (src.is_null()) {
      top.error("effective", "is required for mode effective_validate");
    } else {
      Section s(src, "config.effective", errs);
      s.number("lambda", 1.0, 0.0, kInf, true);
      s.number("epsilon", std::nullopt, 0.0, kInf, true);
      s.number("epsilon_prime", 0.0, -kInf, 0.0);
      s.number("mu", 0.0);
      s.number("mu_prime", 0.0);
      s.integer("order", 4L, 1, 4);
      s.boolean("gauss", true);
      s.choice("statistics", {"unit", "bosonic"}, "unit");
      s.choice("source", {"analytic", "numeric"}, "analytic");
      s.numberList("ratios", 0.0, 1.0);
      s.integer("levels", 3L, 1, 100);
      s.raw("derived");  // recomputed below
      s.finish();
      if (s.out.contains("lambda") && s.out.contains("epsilon") &&
          top.out.contains("atomic") && top.out["atomic"].contains("n0l")) {
        MicroscopicCouplings c;
        c.lambda = s.out["lambda"];
        c.epsilon = s.out["epsilon"];
        c.epsilonPrime = s.out.value("epsilon_prime", 0.0);
        c.n0l = top.out["atomic"]["n0l"].get<int>();
        const DerivedCouplings d = deriveCouplings(c);
        const RegimeReport r = regimeClassify(c.lambda, c.epsilon, c.n0l);
        s.out["derived"] = {{"g", d.g}, {"R", d.R}, {"alpha", d.alpha},
                            {"regime", toString(r.regime)},
                            {"perturbative", r.perturbative}};
      }
      top.out["effective"] = s.out;
    }
  }

  // Correction budget.
  if (top.raw("budget") || mode == "correction_budget") {
    const json src = sub(doc, "budget");
    if (src.is_null()) {
      top.error("budget", "is required for mode correction_budget");
    } else {
      Section s(src, "config.budget", errs);
      s.number("g", std::nullopt, 0.0, kInf, true);
      s.number("R", 0.0, 0.0);
      s.integer("n0l", 2L, 2, 1000000);
      s.finish();
      if (s.out.contains("n0l") && s.out["n0l"].get<long>() % 2) {
        s.error("n0l", "must be even");
      }
      if (s.out.contains("g") && s.out.contains("n0l") &&
          !(s.out["g"].get<double>() > minimalCoupling(s.out["n0l"].get<int>()))) {
        s.error("g", "is below the smallest reachable coupling for this n0l");
      }
      top.out["budget"] = s.out;
    }
  }

  top.finish();
  if (!errs.empty()) throw ConfigError(errs);
  top.out["schema"] = "ahsim.config.v1";
  return top.out;
}

json loadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open " + path});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({path + ": " + e.what()});
  }
  if (doc.is_object() && doc.contains("ahsim_manifest")) {
    if (!doc.contains("config")) {
      throw ConfigError({path + ": manifest without an embedded config"});
    }
    doc = doc.at("config");
  }
  if (doc.is_object()) doc.erase("schema");
  return doc;
}

}  // namespace ahsim::app
