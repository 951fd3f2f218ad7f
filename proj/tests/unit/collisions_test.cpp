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

#include <gtest/gtest.h>

#include "ahsim/collisions.hpp"
#include "ahsim/common.hpp"

namespace ahsim {
namespace {

std::string speciesString(const CollisionTerm& t) {
  std::string s;
  for (const auto& f : t.factors) {
    s += speciesLetter(f.species);
    if (f.dagger) s += '+';
  }
  return s;
}

TEST(Collisions, EvenAndOddLinkForms) {
  const LatticeGeometry g(3, 1, Boundary::Open);
  const auto spec = speciesChangingCollisions(g);
  ASSERT_EQ(spec.terms.size(), 2u);
  EXPECT_EQ(speciesString(spec.terms[0]), "d+a+bc");
  EXPECT_EQ(speciesString(spec.terms[1]), "c+b+ad");
}

TEST(Collisions, CanonicalTransformSwapsOnOddLinksOnly) {
  const LatticeGeometry g(3, 1, Boundary::Open);
  const auto spec = speciesChangingCollisions(g);
  const auto t = canonicalTransform(g, spec);
  EXPECT_EQ(speciesString(t.terms[0]), "d+a+bc");
  EXPECT_EQ(speciesString(t.terms[1]), "c+a+bd");

  // The even-link term moved to an odd link reads d^dag b^dag a c.
  FockHamiltonianSpec moved;
  CollisionTerm odd = spec.terms[0];
  odd.link = 1;
  moved.terms.push_back(odd);
  EXPECT_EQ(speciesString(canonicalTransform(g, moved).terms[0]), "d+b+ac");
}

TEST(Collisions, TransformIsAnInvolution) {
  const LatticeGeometry g(4, 2, Boundary::Open);
  const auto spec = speciesChangingCollisions(g);
  const auto twice = canonicalTransform(g, canonicalTransform(g, spec));
  ASSERT_EQ(twice.terms.size(), spec.terms.size());
  for (size_t i = 0; i < spec.terms.size(); ++i) {
    EXPECT_EQ(twice.terms[i].str(), spec.terms[i].str());
  }
}

TEST(Collisions, TransformedLinkPartIsUniform) {
  const LatticeGeometry g(4, 2, Boundary::Open);
  const auto spec = speciesChangingCollisions(g);
  bool anyRaw = false;
  for (const auto& t : spec.terms) anyRaw |= !hasUniformLinkForm(t);
  EXPECT_TRUE(anyRaw);
  for (const auto& t : canonicalTransform(g, spec).terms) {
    EXPECT_TRUE(hasUniformLinkForm(t)) << t.str();
  }
}

TEST(Collisions, InvalidLinkRejected) {
  const LatticeGeometry g(2, 1, Boundary::Open);
  FockHamiltonianSpec s;
  s.terms.push_back({"bad", 5, {}});
  EXPECT_THROW(canonicalTransform(g, s), InvalidArgument);
}

TEST(Hyperfine, SelectionRule) {
  const auto m = patternAssignment(0.5);
  // m_F(a) - m_F(b) = m_F(c) - m_F(d) = m_F(e) - m_F(f).
  EXPECT_DOUBLE_EQ(m.at(Species::A) - m.at(Species::B), m.at(Species::C) - m.at(Species::D));
  EXPECT_DOUBLE_EQ(m.at(Species::C) - m.at(Species::D), m.at(Species::E) - m.at(Species::F));

  const LatticeGeometry g(3, 1, Boundary::Open);
  for (const auto& t : speciesChangingCollisions(g).terms) EXPECT_TRUE(hyperfineAllowed(t, m));

  CollisionTerm bad{"", 0,
                    {{Species::D, 0, true}, {Species::A, 0, true},
                     {Species::A, 0, false}, {Species::C, 1, false}}};
  EXPECT_FALSE(hyperfineAllowed(bad, m));

  CollisionTerm same{"", 0,
                     {{Species::E, 0, true}, {Species::E, 0, true},
                      {Species::E, 0, false}, {Species::E, 0, false}}};
  EXPECT_TRUE(hyperfineAllowed(same, m));
  EXPECT_THROW(hyperfineAllowed(same, {{Species::A, 0.0}}), InvalidArgument);
}

}  // namespace
}  // namespace ahsim
