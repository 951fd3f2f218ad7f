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

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ahsim {

enum class Boundary { Open, Periodic };
enum class Direction : int { X = 0, Y = 1 };

std::string toString(Boundary b);
std::string toString(Direction d);

struct Vertex {
  int x = 0;
  int y = 0;
};

/// Oriented link (n, k): leaves `origin` along `dir` and enters `target`.
struct Link {
  int origin = 0;
  Direction dir = Direction::X;
  int target = 0;
};

/// A link traversed along (+1) or against (-1) its orientation.
struct DirectedLink {
  int link = 0;
  int sign = +1;
};

/// Entry of the divergence stencil at a vertex.
struct Incidence {
  int link = 0;
  int sign = +1;  // +1 leaves the vertex, -1 enters it
};

/// Elementary square anchored at `origin`, walked bottom, right, top, left.
struct Plaquette {
  int origin = 0;
  std::array<DirectedLink, 4> edges{};
};

class LatticeGeometry {
 public:
  LatticeGeometry(int lx, int ly, Boundary boundary);

  int lx() const { return lx_; }
  int ly() const { return ly_; }
  Boundary boundary() const { return boundary_; }

  int numVertices() const { return static_cast<int>(vertices_.size()); }
  int numLinks() const { return static_cast<int>(links_.size()); }
  int numPlaquettes() const { return static_cast<int>(plaquettes_.size()); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  /// Row-major index of (x, y); throws for points outside the grid.
  int vertexIndex(int x, int y) const;
  std::optional<int> linkIndex(int vertex, Direction dir) const;
  const std::vector<Incidence>& incidentLinks(int vertex) const;

  /// (x + y) mod 2.
  int parity(int vertex) const;

  int tail(const DirectedLink& d) const;
  int head(const DirectedLink& d) const;

  /// Unordered pairs (l, l') with l < l' sharing at least one vertex.
  std::vector<std::pair<int, int>> adjacentLinkPairs() const;

  std::string describeLink(int link) const;

 private:
  void checkVertex(int vertex) const;

  int lx_;
  int ly_;
  Boundary boundary_;
  std::vector<Vertex> vertices_;
  std::vector<Link> links_;
  std::vector<Plaquette> plaquettes_;
  std::vector<std::array<int, 2>> link_of_;
  std::vector<std::vector<Incidence>> incidence_;
};

LatticeGeometry buildLattice(int lx, int ly, Boundary boundary);

}  // namespace ahsim
