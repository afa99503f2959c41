// Copyright 2026 The Anyonic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "anyonic/errors.hpp"

namespace anyonic {

enum class Topology { torus, planar };

struct LatticeSpec {
  Topology topology = Topology::torus;
  int size = 2;

  static LatticeSpec torus(int n) { return {Topology::torus, n}; }
  static LatticeSpec planar(int d) { return {Topology::planar, d}; }
};

struct LatticeLimits {
  int max_torus = 32;
  int max_planar = 7;
};

/// z-strings live on the lattice (endpoints are vertices); x-strings live on
/// the dual lattice (endpoints are faces).
enum class StringKind { z, x };

enum class BoundaryClass { even_rough, odd_rough, even_smooth, odd_smooth };

/// A string operator's support. `edges` is ordered as a walk whenever the edge
/// set forms a single trail; `endpoints` are the cells touched an odd number
/// of times. `closed` is true exactly when the string commutes with every
/// stabilizer, i.e. when it has no endpoints.
struct StringPath {
  StringKind kind = StringKind::z;
  std::vector<int> edges;
  std::vector<int> endpoints;
  bool closed = true;

  bool operator==(const StringPath&) const = default;
  std::size_t length() const { return edges.size(); }
};

/// Square-lattice code geometry.
///
/// Indexing is row-major and stable:
///
///  torus(N):  vertex (r,c) = r*N + c, face (r,c) = r*N + c with corners
///             (r,c),(r,c+1),(r+1,c),(r+1,c+1); horizontal edge h(r,c) = r*N + c
///             joins (r,c)-(r,c+1); vertical edge v(r,c) = N*N + r*N + c joins
///             (r,c)-(r+1,c). All coordinates are taken mod N.
///
///  planar(d): vertices form d rows x (d-1) columns, vertex (r,c) = r*(d-1) + c.
///             Horizontal edges h(r,c) = r*d + c for r,c in [0,d) join
///             (r,c-1)-(r,c); the c = 0 and c = d-1 edges protrude through the
///             left/right rough boundaries and touch a single vertex. Vertical
///             edges v(r,c) = d*d + r*(d-1) + c for r,c in [0,d-1) join
///             (r,c)-(r+1,c). Faces form (d-1) rows x d columns,
///             face (r,c) = r*d + c, bounded by h(r,c), h(r+1,c) and the
///             vertical edges on either side that exist. Top and bottom rows
///             are smooth: their vertex stars and the edges there touch a
///             single face.
class Lattice {
 public:
  explicit Lattice(LatticeSpec spec, LatticeLimits limits = {}) : spec_(spec) {
    const int n = spec.size;
    if (spec.topology == Topology::torus) {
      if (n < 2 || n > limits.max_torus) {
        throw ConfigError("torus size " + std::to_string(n) + " outside [2, " +
                          std::to_string(limits.max_torus) + "]");
      }
      build_torus();
    } else {
      if (n < 2 || n > limits.max_planar) {
        throw ConfigError("planar distance " + std::to_string(n) + " outside [2, " +
                          std::to_string(limits.max_planar) + "]");
      }
      build_planar();
    }
  }

  const LatticeSpec& spec() const { return spec_; }
  Topology topology() const { return spec_.topology; }
  bool is_torus() const { return spec_.topology == Topology::torus; }
  int size() const { return spec_.size; }

  int num_edges() const { return static_cast<int>(edge_vertices_.size()); }
  int num_qubits() const { return num_edges(); }
  int num_vertices() const { return static_cast<int>(star_.size()); }
  int num_faces() const { return static_cast<int>(boundary_.size()); }

  int vertex_rows() const { return is_torus() ? size() : size(); }
  int vertex_cols() const { return is_torus() ? size() : size() - 1; }
  int face_rows() const { return is_torus() ? size() : size() - 1; }
  int face_cols() const { return size(); }

  /// Number of cells a string of `kind` can end on.
  int num_cells(StringKind kind) const {
    return kind == StringKind::z ? num_vertices() : num_faces();
  }

  const std::vector<int>& star(int v) const { return star_.at(v); }
  const std::vector<int>& boundary(int f) const { return boundary_.at(f); }
  const std::vector<int>& edge_vertices(int e) const { return edge_vertices_.at(e); }
  const std::vector<int>& edge_faces(int e) const { return edge_faces_.at(e); }

  /// Cells joined by edge `e` in the graph a `kind` string walks on.
  const std::vector<int>& incident_cells(StringKind kind, int e) const {
    return kind == StringKind::z ? edge_vertices(e) : edge_faces(e);
  }

  /// Stabilizer support used to deform a `kind` string around `cell`
  /// (a face for z-strings, a vertex for x-strings).
  const std::vector<int>& deformation_support(StringKind kind, int cell) const {
    return kind == StringKind::z ? boundary(cell) : star(cell);
  }

  int vertex_at(int r, int c) const {
    if (is_torus()) return wrap(r) * size() + wrap(c);
    check_range(r, vertex_rows(), c, vertex_cols(), "vertex");
    return r * vertex_cols() + c;
  }
  int face_at(int r, int c) const {
    if (is_torus()) return wrap(r) * size() + wrap(c);
    check_range(r, face_rows(), c, face_cols(), "face");
    return r * face_cols() + c;
  }
  int horizontal_edge(int r, int c) const {
    if (is_torus()) return wrap(r) * size() + wrap(c);
    check_range(r, size(), c, size(), "horizontal edge");
    return r * size() + c;
  }
  int vertical_edge(int r, int c) const {
    const int n = size();
    if (is_torus()) return n * n + wrap(r) * n + wrap(c);
    check_range(r, n - 1, c, n - 1, "vertical edge");
    return n * n + r * (n - 1) + c;
  }
  std::pair<int, int> vertex_coords(int v) const { return {v / vertex_cols(), v % vertex_cols()}; }
  std::pair<int, int> face_coords(int f) const { return {f / face_cols(), f % face_cols()}; }

  /// Rough-boundary class of a protruding edge (planar only).
  std::optional<BoundaryClass> rough_class(int e) const { return rough_class_.at(e); }
  /// Smooth-boundary class of a top/bottom edge (planar only).
  std::optional<BoundaryClass> smooth_class(int e) const { return smooth_class_.at(e); }

  std::vector<int> boundary_edges(BoundaryClass cls) const {
    std::vector<int> out;
    for (int e = 0; e < num_edges(); ++e) {
      if (rough_class_[e] == cls || smooth_class_[e] == cls) out.push_back(e);
    }
    return out;
  }

  /// Rank of the stabilizer group (GF(2) rank of stars plus faces).
  int independent_stabilizer_count() const {
    return gf2_rank(star_) + gf2_rank(boundary_);
  }
  int logical_qubit_count() const { return num_qubits() - independent_stabilizer_count(); }

  /// Plain-text listing: one line per edge with its incident vertices and faces.
  void dump(std::ostream& out) const {
    out << "# lattice " << (is_torus() ? "torus " : "planar ") << size() << "\n";
    out << "# edges " << num_edges() << " vertices " << num_vertices() << " faces " << num_faces()
        << "\n";
    for (int e = 0; e < num_edges(); ++e) {
      out << "edge " << e << " vertices";
      for (int v : edge_vertices_[e]) out << ' ' << v;
      out << " faces";
      for (int f : edge_faces_[e]) out << ' ' << f;
      if (auto rc = rough_class_[e]) out << " rough " << (*rc == BoundaryClass::even_rough ? "even" : "odd");
      if (auto sc = smooth_class_[e]) out << " smooth " << (*sc == BoundaryClass::even_smooth ? "even" : "odd");
      out << "\n";
    }
  }

 private:
  int wrap(int x) const { return ((x % size()) + size()) % size(); }

  static void check_range(int r, int rows, int c, int cols, const char* what) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) {
      throw UsageError(std::string(what) + " coordinate (" + std::to_string(r) + "," +
                       std::to_string(c) + ") out of range");
    }
  }

  void allocate(int edges, int vertices, int faces) {
    edge_vertices_.assign(edges, {});
    edge_faces_.assign(edges, {});
    star_.assign(vertices, {});
    boundary_.assign(faces, {});
    rough_class_.assign(edges, std::nullopt);
    smooth_class_.assign(edges, std::nullopt);
  }

  void link_vertex(int e, int v) {
    edge_vertices_[e].push_back(v);
    star_[v].push_back(e);
  }
  void link_face(int e, int f) {
    edge_faces_[e].push_back(f);
    boundary_[f].push_back(e);
  }

  void finish() {
    for (auto& s : star_) std::sort(s.begin(), s.end());
    for (auto& b : boundary_) std::sort(b.begin(), b.end());
    for (auto& v : edge_vertices_) std::sort(v.begin(), v.end());
    for (auto& f : edge_faces_) std::sort(f.begin(), f.end());
  }

  void build_torus() {
    const int n = size();
    allocate(2 * n * n, n * n, n * n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        const int h = horizontal_edge(r, c);
        link_vertex(h, vertex_at(r, c));
        link_vertex(h, vertex_at(r, c + 1));
        link_face(h, face_at(r, c));
        link_face(h, face_at(r - 1, c));
        const int v = vertical_edge(r, c);
        link_vertex(v, vertex_at(r, c));
        link_vertex(v, vertex_at(r + 1, c));
        link_face(v, face_at(r, c));
        link_face(v, face_at(r, c - 1));
      }
    }
    finish();
  }

  void build_planar() {
    const int d = size();
    allocate(d * d + (d - 1) * (d - 1), d * (d - 1), d * (d - 1));
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        const int h = horizontal_edge(r, c);
        if (c >= 1) link_vertex(h, vertex_at(r, c - 1));
        if (c <= d - 2) link_vertex(h, vertex_at(r, c));
        if (r >= 1) link_face(h, face_at(r - 1, c));
        if (r <= d - 2) link_face(h, face_at(r, c));
        if (c == 0 || c == d - 1) {
          rough_class_[h] = (r % 2 == 0) ? BoundaryClass::even_rough : BoundaryClass::odd_rough;
        }
        if (r == 0 || r == d - 1) {
          smooth_class_[h] = (c % 2 == 0) ? BoundaryClass::even_smooth : BoundaryClass::odd_smooth;
        }
      }
    }
    for (int r = 0; r < d - 1; ++r) {
      for (int c = 0; c < d - 1; ++c) {
        const int v = vertical_edge(r, c);
        link_vertex(v, vertex_at(r, c));
        link_vertex(v, vertex_at(r + 1, c));
        link_face(v, face_at(r, c));
        link_face(v, face_at(r, c + 1));
      }
    }
    finish();
  }

  int gf2_rank(const std::vector<std::vector<int>>& supports) const {
    const std::size_t words = (static_cast<std::size_t>(num_edges()) + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows;
    rows.reserve(supports.size());
    for (const auto& s : supports) {
      std::vector<std::uint64_t> row(words, 0);
      for (int e : s) row[e / 64] ^= std::uint64_t{1} << (e % 64);
      rows.push_back(std::move(row));
    }
    int rank = 0;
    for (int col = 0; col < num_edges() && rank < static_cast<int>(rows.size()); ++col) {
      const std::uint64_t bit = std::uint64_t{1} << (col % 64);
      const std::size_t w = col / 64;
      auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                                [&](const auto& row) { return (row[w] & bit) != 0; });
      if (pivot == rows.end()) continue;
      std::iter_swap(rows.begin() + rank, pivot);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(i) != rank && (rows[i][w] & bit)) {
          for (std::size_t k = 0; k < words; ++k) rows[i][k] ^= rows[rank][k];
        }
      }
      ++rank;
    }
    return rank;
  }

  LatticeSpec spec_;
  std::vector<std::vector<int>> edge_vertices_;
  std::vector<std::vector<int>> edge_faces_;
  std::vector<std::vector<int>> star_;
  std::vector<std::vector<int>> boundary_;
  std::vector<std::optional<BoundaryClass>> rough_class_;
  std::vector<std::optional<BoundaryClass>> smooth_class_;
};

inline Lattice build_lattice(LatticeSpec spec, LatticeLimits limits = {}) {
  return Lattice(spec, limits);
}

namespace detail {

/// Orders an edge set as a sequence of trails (Hierholzer per connected
/// component). Edges touching a single cell are joined to one virtual
/// boundary node so boundary-terminated strings still walk end to end.
inline std::vector<int> order_as_trails(const Lattice& lat, StringKind kind,
                                        const std::vector<int>& edge_set) {
  const int boundary_node = lat.num_cells(kind);
  const int nodes = boundary_node + 1;
  std::vector<std::vector<std::pair<int, int>>> adj(nodes);  // (edge, other node)
  auto ends = [&](int e) {
    const auto& cells = lat.incident_cells(kind, e);
    int a = cells.at(0);
    int b = cells.size() > 1 ? cells[1] : boundary_node;
    return std::pair{a, b};
  };
  for (int e : edge_set) {
    auto [a, b] = ends(e);
    adj[a].push_back({e, b});
    adj[b].push_back({e, a});
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  std::vector<char> used_edge(static_cast<std::size_t>(lat.num_edges()), 0);
  std::vector<std::size_t> cursor(nodes, 0);
  std::vector<int> out;
  out.reserve(edge_set.size());

  std::vector<int> sorted = edge_set;
  std::sort(sorted.begin(), sorted.end());
  while (true) {
    auto first = std::find_if(sorted.begin(), sorted.end(), [&](int e) { return !used_edge[e]; });
    if (first == sorted.end()) break;
    // Component of `*first`: prefer starting at an odd-degree real cell.
    std::vector<int> comp_nodes;
    {
      std::vector<char> seen(nodes, 0);
      std::deque<int> queue{ends(*first).first};
      seen[queue.front()] = 1;
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        comp_nodes.push_back(u);
        for (auto [e, w] : adj[u]) {
          if (!used_edge[e] && !seen[w]) {
            seen[w] = 1;
            queue.push_back(w);
          }
        }
      }
    }
    std::sort(comp_nodes.begin(), comp_nodes.end());
    int start = ends(*first).first;
    for (int u : comp_nodes) {
      if (u != boundary_node && adj[u].size() % 2 == 1) {
        start = u;
        break;
      }
    }
    // Iterative Hierholzer.
    std::vector<std::pair<int, int>> stack{{start, -1}};
    std::vector<int> trail;
    while (!stack.empty()) {
      int u = stack.back().first;
      auto& cur = cursor[u];
      while (cur < adj[u].size() && used_edge[adj[u][cur].first]) ++cur;
      if (cur == adj[u].size()) {
        if (stack.back().second >= 0) trail.push_back(stack.back().second);
        stack.pop_back();
      } else {
        auto [e, w] = adj[u][cur];
        used_edge[e] = 1;
        stack.push_back({w, e});
      }
    }
    std::reverse(trail.begin(), trail.end());
    out.insert(out.end(), trail.begin(), trail.end());
  }
  return out;
}

}  // namespace detail

/// Builds a string from an edge multiset; repeated edges cancel in pairs.
inline StringPath make_string(const Lattice& lat, StringKind kind, const std::vector<int>& edges) {
  std::vector<char> odd(static_cast<std::size_t>(lat.num_edges()), 0);
  for (int e : edges) {
    if (e < 0 || e >= lat.num_edges()) throw UsageError("edge id " + std::to_string(e) + " out of range");
    odd[e] ^= 1;
  }
  std::vector<int> set;
  for (int e = 0; e < lat.num_edges(); ++e) {
    if (odd[e]) set.push_back(e);
  }
  std::vector<char> parity(static_cast<std::size_t>(lat.num_cells(kind)), 0);
  for (int e : set) {
    for (int c : lat.incident_cells(kind, e)) parity[c] ^= 1;
  }
  StringPath path;
  path.kind = kind;
  for (int c = 0; c < lat.num_cells(kind); ++c) {
    if (parity[c]) path.endpoints.push_back(c);
  }
  path.closed = path.endpoints.empty();
  // Keep a caller-supplied walk order when it is already a valid trail.
  bool keep_order = set.size() == edges.size();
  for (std::size_t i = 1; keep_order && i < edges.size(); ++i) {
    const auto& a = lat.incident_cells(kind, edges[i - 1]);
    const auto& b = lat.incident_cells(kind, edges[i]);
    keep_order = std::any_of(a.begin(), a.end(),
                             [&](int c) { return std::find(b.begin(), b.end(), c) != b.end(); });
  }
  path.edges = keep_order ? edges : detail::order_as_trails(lat, kind, set);
  return path;
}

/// Breadth-first shortest string between two cells; neighbours are expanded in
/// ascending edge order so ties resolve to the lowest edge index.
inline StringPath shortest_string(const Lattice& lat, StringKind kind, int a, int b) {
  const int cells = lat.num_cells(kind);
  if (a < 0 || a >= cells || b < 0 || b >= cells) {
    throw UsageError("string endpoint out of range");
  }
  if (a == b) return StringPath{kind, {}, {}, true};
  std::vector<std::vector<std::pair<int, int>>> adj(cells);
  for (int e = 0; e < lat.num_edges(); ++e) {
    const auto& inc = lat.incident_cells(kind, e);
    if (inc.size() == 2 && inc[0] != inc[1]) {
      adj[inc[0]].push_back({e, inc[1]});
      adj[inc[1]].push_back({e, inc[0]});
    }
  }
  std::vector<int> parent_edge(cells, -1);
  std::vector<int> parent(cells, -1);
  std::vector<char> seen(cells, 0);
  std::deque<int> queue{a};
  seen[a] = 1;
  while (!queue.empty() && !seen[b]) {
    int u = queue.front();
    queue.pop_front();
    for (auto [e, w] : adj[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        parent_edge[w] = e;
        queue.push_back(w);
      }
    }
  }
  if (!seen[b]) throw GeometryError("cells are not connected");
  std::vector<int> edges;
  for (int u = b; u != a; u = parent[u]) edges.push_back(parent_edge[u]);
  std::reverse(edges.begin(), edges.end());
  StringPath path{kind, std::move(edges), {std::min(a, b), std::max(a, b)}, false};
  return path;
}

/// Shortest string from `a` into the boundary that absorbs `kind` anyons
/// (rough for z-strings, smooth for x-strings). Planar lattices only.
inline StringPath string_to_boundary(const Lattice& lat, StringKind kind, int a) {
  if (lat.is_torus()) throw GeometryError("torus has no boundary");
  const int cells = lat.num_cells(kind);
  std::vector<int> exit_edge(cells, -1);
  for (int e = lat.num_edges() - 1; e >= 0; --e) {
    const auto& inc = lat.incident_cells(kind, e);
    if (inc.size() == 1) exit_edge[inc[0]] = e;
  }
  std::vector<int> parent(cells, -1), parent_edge(cells, -1);
  std::vector<char> seen(cells, 0);
  std::deque<int> queue{a};
  seen[a] = 1;
  int target = -1;
  std::vector<std::vector<std::pair<int, int>>> adj(cells);
  for (int e = 0; e < lat.num_edges(); ++e) {
    const auto& inc = lat.incident_cells(kind, e);
    if (inc.size() == 2) {
      adj[inc[0]].push_back({e, inc[1]});
      adj[inc[1]].push_back({e, inc[0]});
    }
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (exit_edge[u] >= 0) {
      target = u;
      break;
    }
    for (auto [e, w] : adj[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        parent_edge[w] = e;
        queue.push_back(w);
      }
    }
  }
  if (target < 0) throw GeometryError("no boundary reachable");
  std::vector<int> edges;
  for (int u = target; u != a; u = parent[u]) edges.push_back(parent_edge[u]);
  std::reverse(edges.begin(), edges.end());
  edges.push_back(exit_edge[target]);
  return StringPath{kind, std::move(edges), {a}, false};
}

/// One encoded qubit's pair of logical strings.
struct LogicalPair {
  StringPath z;  ///< C_Z on the lattice
  StringPath x;  ///< C_X on the dual lattice
};

/// Planar: one pair (C_Z rough-to-rough along the top row, C_X smooth-to-smooth
/// down the left column). Torus: logical 1 uses the horizontal z-loop, logical
/// 2 the vertical one; each C_X is the dual loop crossing its partner once.
inline std::vector<LogicalPair> logical_operators(const Lattice& lat) {
  const int n = lat.size();
  std::vector<int> row0, col0_h, col0_v, row0_v;
  for (int k = 0; k < n; ++k) {
    row0.push_back(lat.horizontal_edge(0, k));
    col0_h.push_back(lat.horizontal_edge(k, 0));
  }
  if (!lat.is_torus()) {
    return {{make_string(lat, StringKind::z, row0), make_string(lat, StringKind::x, col0_h)}};
  }
  for (int k = 0; k < n; ++k) {
    col0_v.push_back(lat.vertical_edge(k, 0));
    row0_v.push_back(lat.vertical_edge(0, k));
  }
  return {
      {make_string(lat, StringKind::z, row0), make_string(lat, StringKind::x, col0_h)},
      {make_string(lat, StringKind::z, col0_v), make_string(lat, StringKind::x, row0_v)},
  };
}

/// Multiplies the string by the stabilizer around `cell` (a face for
/// z-strings, a vertex for x-strings): symmetric difference of edge sets.
inline StringPath deform_string(const Lattice& lat, const StringPath& path, int cell) {
  if (cell < 0 || cell >= lat.num_cells(path.kind == StringKind::z ? StringKind::x : StringKind::z)) {
    throw UsageError("deformation cell out of range for string kind");
  }
  std::vector<int> edges = path.edges;
  const auto& support = lat.deformation_support(path.kind, cell);
  edges.insert(edges.end(), support.begin(), support.end());
  return make_string(lat, path.kind, edges);
}

/// Parity of the number of edges shared by a z-string and an x-string.
enum class Parity { even, odd };

inline Parity crossing_parity(const StringPath& zpath, const StringPath& xpath) {
  if (zpath.kind != StringKind::z || xpath.kind != StringKind::x) {
    throw UsageError("crossing_parity expects (z-string, x-string)");
  }
  std::vector<int> a = zpath.edges, b = xpath.edges;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<int> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  return common.size() % 2 ? Parity::odd : Parity::even;
}

/// Ground-state degeneracy 2^(2g + h) of a surface code with genus g and h holes.
inline std::uint64_t degeneracy(int genus, int holes) {
  if (genus < 0 || holes < 0) throw UsageError("genus and holes must be non-negative");
  const int exponent = 2 * genus + holes;
  if (exponent >= 64) throw UsageError("degeneracy overflows 64 bits");
  return std::uint64_t{1} << exponent;
}

}  // namespace anyonic
