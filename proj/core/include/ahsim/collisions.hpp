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

#include <map>
#include <string>
#include <vector>

#include "ahsim/lattice.hpp"

namespace ahsim {

/// Atomic species: a, b on links; c, d dynamical and e, f auxiliary on
/// vertices (c, e on odd vertices, d, f on even ones).
enum class Species { A, B, C, D, E, F };

char speciesLetter(Species s);

struct BosonFactor {
  Species species;
  int site = 0;       // link index for a/b, vertex index otherwise
  bool dagger = false;
};

/// Four-boson collision, written left to right as in the Hamiltonian.
struct CollisionTerm {
  std::string label;
  int link = -1;  // link the collision is attached to
  std::vector<BosonFactor> factors;

  std::string str() const;
};

struct FockHamiltonianSpec {
  std::vector<CollisionTerm> terms;
};

/// Species-changing link-vertex collisions before the canonical
/// transformation. On a link leaving an even vertex the term reads
/// d^dag a^dag b c; on a link leaving an odd vertex c^dag b^dag a d.
FockHamiltonianSpec speciesChangingCollisions(const LatticeGeometry& geom);

/// Swaps a and b on every link whose origin vertex is odd.
FockHamiltonianSpec canonicalTransform(const LatticeGeometry& geom,
                                       const FockHamiltonianSpec& spec);

/// True when the link part of the term reads a^dag b.
bool hasUniformLinkForm(const CollisionTerm& term);

using HyperfineAssignment = std::map<Species, double>;

/// Level scheme in which a-b and c-d (and e-f) differ by the same
/// magnetic quantum number step.
HyperfineAssignment patternAssignment(double delta);

/// Conservation of total m_F: created sum equals annihilated sum.
bool hyperfineAllowed(const CollisionTerm& term,
                      const HyperfineAssignment& assignment);

}  // namespace ahsim
