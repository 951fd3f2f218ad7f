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

#include "ahsim/collisions.hpp"

#include <cmath>
#include <sstream>

#include "ahsim/common.hpp"

namespace ahsim {

char speciesLetter(Species s) { return "abcdef"[static_cast<int>(s)]; }

std::string CollisionTerm::str() const {
  std::ostringstream os;
  for (const auto& f : factors) {
    os << speciesLetter(f.species) << (f.dagger ? "^dag" : "") << "_"
       << f.site << " ";
  }
  std::string s = os.str();
  if (!s.empty()) s.pop_back();
  return s;
}

FockHamiltonianSpec speciesChangingCollisions(const LatticeGeometry& geom) {
  FockHamiltonianSpec spec;
  for (int l = 0; l < geom.numLinks(); ++l) {
    const Link& link = geom.links()[l];
    CollisionTerm t;
    t.label = "species-changing " + geom.describeLink(l);
    t.link = l;
    if (geom.parity(link.origin) == 0) {
      t.factors = {{Species::D, link.origin, true},
                   {Species::A, l, true},
                   {Species::B, l, false},
                   {Species::C, link.target, false}};
    } else {
      t.factors = {{Species::C, link.origin, true},
                   {Species::B, l, true},
                   {Species::A, l, false},
                   {Species::D, link.target, false}};
    }
    spec.terms.push_back(std::move(t));
  }
  return spec;
}

FockHamiltonianSpec canonicalTransform(const LatticeGeometry& geom,
                                       const FockHamiltonianSpec& spec) {
  FockHamiltonianSpec out = spec;
  for (auto& t : out.terms) {
    if (t.link < 0 || t.link >= geom.numLinks()) {
      throw InvalidArgument("collision term without a valid link");
    }
    if (geom.parity(geom.links()[t.link].origin) == 0) continue;
    for (auto& f : t.factors) {
      if (f.species == Species::A) {
        f.species = Species::B;
      } else if (f.species == Species::B) {
        f.species = Species::A;
      }
    }
  }
  return out;
}

bool hasUniformLinkForm(const CollisionTerm& term) {
  std::vector<BosonFactor> link;
  for (const auto& f : term.factors) {
    if (f.species == Species::A || f.species == Species::B) link.push_back(f);
  }
  return link.size() == 2 && link[0].species == Species::A && link[0].dagger &&
         link[1].species == Species::B && !link[1].dagger;
}

HyperfineAssignment patternAssignment(double delta) {
  return {{Species::A, delta},       {Species::B, 0.0},
          {Species::C, 1.0 + delta}, {Species::D, 1.0},
          {Species::E, 2.0 + delta}, {Species::F, 2.0}};
}

bool hyperfineAllowed(const CollisionTerm& term,
                      const HyperfineAssignment& assignment) {
  double created = 0.0;
  double annihilated = 0.0;
  for (const auto& f : term.factors) {
    auto it = assignment.find(f.species);
    if (it == assignment.end()) {
      throw InvalidArgument(std::string("no m_F assigned to species ") +
                            speciesLetter(f.species));
    }
    (f.dagger ? created : annihilated) += it->second;
  }
  return std::abs(created - annihilated) <= 1e-12;
}

}  // namespace ahsim
