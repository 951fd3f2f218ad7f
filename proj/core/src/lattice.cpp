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

#include "ahsim/lattice.hpp"

#include <algorithm>
#include <set>

#include "ahsim/common.hpp"

namespace ahsim {

std::string toString(Boundary b) {
  return b == Boundary::Open ? "open" : "periodic";
}

std::string toString(Direction d) { return d == Direction::X ? "x" : "y"; }

LatticeGeometry::LatticeGeometry(int lx, int ly, Boundary boundary)
    : lx_(lx), ly_(ly), boundary_(boundary) {
  if (lx < 1 || ly < 1) {
    throw InvalidArgument("lattice extents must be positive");
  }
  if (boundary == Boundary::Periodic) {
    if (lx < 2 || ly < 2) {
      throw InvalidArgument("periodic lattice needs both extents >= 2");
    }
    if (lx % 2 != 0 || ly % 2 != 0) {
      throw InvalidArgument(
          "periodic lattice needs even extents for a consistent even/odd "
          "vertex bipartition");
    }
  }
  const bool periodic = boundary == Boundary::Periodic;

  vertices_.reserve(static_cast<size_t>(lx) * ly);
  for (int y = 0; y < ly; ++y) {
    for (int x = 0; x < lx; ++x) vertices_.push_back({x, y});
  }

  link_of_.assign(vertices_.size(), {-1, -1});
  for (int v = 0; v < numVertices(); ++v) {
    const auto [x, y] = vertices_[v];
    if (x + 1 < lx || periodic) {
      link_of_[v][0] = numLinks();
      links_.push_back({v, Direction::X, vertexIndex((x + 1) % lx, y)});
    }
    if (y + 1 < ly || periodic) {
      link_of_[v][1] = numLinks();
      links_.push_back({v, Direction::Y, vertexIndex(x, (y + 1) % ly)});
    }
  }

  incidence_.assign(vertices_.size(), {});
  for (int l = 0; l < numLinks(); ++l) {
    incidence_[links_[l].origin].push_back({l, +1});
    incidence_[links_[l].target].push_back({l, -1});
  }
  for (auto& inc : incidence_) {
    std::sort(inc.begin(), inc.end(), [](const Incidence& a, const Incidence& b) {
      return a.link < b.link;
    });
  }

  for (int v = 0; v < numVertices(); ++v) {
    const auto [x, y] = vertices_[v];
    if (!periodic && (x + 1 >= lx || y + 1 >= ly)) continue;
    const int right = vertexIndex((x + 1) % lx, y);
    const int up = vertexIndex(x, (y + 1) % ly);
    Plaquette p;
    p.origin = v;
    p.edges[0] = {link_of_[v][0], +1};
    p.edges[1] = {link_of_[right][1], +1};
    p.edges[2] = {link_of_[up][0], -1};
    p.edges[3] = {link_of_[v][1], -1};
    plaquettes_.push_back(p);
  }
}

int LatticeGeometry::vertexIndex(int x, int y) const {
  if (x < 0 || x >= lx_ || y < 0 || y >= ly_) {
    throw InvalidArgument("vertex (" + std::to_string(x) + "," +
                          std::to_string(y) + ") outside the lattice");
  }
  return y * lx_ + x;
}

void LatticeGeometry::checkVertex(int vertex) const {
  if (vertex < 0 || vertex >= numVertices()) {
    throw InvalidArgument("unknown vertex " + std::to_string(vertex));
  }
}

std::optional<int> LatticeGeometry::linkIndex(int vertex, Direction dir) const {
  checkVertex(vertex);
  const int l = link_of_[vertex][static_cast<int>(dir)];
  if (l < 0) return std::nullopt;
  return l;
}

const std::vector<Incidence>& LatticeGeometry::incidentLinks(int vertex) const {
  checkVertex(vertex);
  return incidence_[vertex];
}

int LatticeGeometry::parity(int vertex) const {
  checkVertex(vertex);
  return (vertices_[vertex].x + vertices_[vertex].y) % 2;
}

int LatticeGeometry::tail(const DirectedLink& d) const {
  const Link& l = links_.at(d.link);
  return d.sign > 0 ? l.origin : l.target;
}

int LatticeGeometry::head(const DirectedLink& d) const {
  const Link& l = links_.at(d.link);
  return d.sign > 0 ? l.target : l.origin;
}

std::vector<std::pair<int, int>> LatticeGeometry::adjacentLinkPairs() const {
  std::set<std::pair<int, int>> pairs;
  for (const auto& inc : incidence_) {
    for (size_t i = 0; i < inc.size(); ++i) {
      for (size_t j = i + 1; j < inc.size(); ++j) {
        const int a = std::min(inc[i].link, inc[j].link);
        const int b = std::max(inc[i].link, inc[j].link);
        if (a != b) pairs.insert({a, b});
      }
    }
  }
  return {pairs.begin(), pairs.end()};
}

std::string LatticeGeometry::describeLink(int link) const {
  const Link& l = links_.at(link);
  const Vertex& v = vertices_[l.origin];
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")" +
         toString(l.dir);
}

LatticeGeometry buildLattice(int lx, int ly, Boundary boundary) {
  return LatticeGeometry(lx, ly, boundary);
}

}  // namespace ahsim
