#include "lmrep/cech.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <stdexcept>

namespace lmrep::cech {

namespace {

constexpr int kDx[6] = {2, 1, -1, -2, -1, 1};
constexpr int kDy[6] = {0, 1, 1, 0, -1, -1};

std::array<int, 2> corner_point(int q, int h, int c) { return {3 * q + kDx[c], h + kDy[c]}; }

bool horizontal_side(int k) { return k == 1 || k == 4; }

// A tile before region resolution. Regions may be -1 for empty tiles.
struct Placed {
  TileKind kind = TileKind::Empty;
  int crossing = 0;
  std::array<int, 6> corner_sector{};
  std::vector<int> sector_region{-1};
  std::vector<LocalArc> arcs;
  std::array<int, 6> edge_arc{-1, -1, -1, -1, -1, -1};
};

class Layout {
 public:
  std::map<std::pair<int, int>, Placed> placed;

  void put(int q, int h, Placed t) {
    if ((q + h) % 2 != 0) throw std::logic_error("tile off the lattice");
    if (!placed.emplace(std::make_pair(q, h), std::move(t)).second)
      throw std::logic_error("two front pieces in one tile");
  }

  void left_cusp(int q, int h, int upper, int lower, int inside, int outside) {
    Placed t;
    t.kind = TileKind::LeftCusp;
    t.corner_sector = {1, 0, 0, 0, 0, 0};
    t.sector_region = {outside, inside};
    t.arcs = {{upper, 1, 0}, {lower, 0, 1}};
    t.edge_arc[0] = upper;
    t.edge_arc[5] = lower;
    put(q, h, t);
  }

  void right_cusp(int q, int h, int upper, int lower, int inside, int outside) {
    Placed t;
    t.kind = TileKind::RightCusp;
    t.corner_sector = {0, 0, 0, 1, 0, 0};
    t.sector_region = {outside, inside};
    t.arcs = {{upper, 1, 0}, {lower, 0, 1}};
    t.edge_arc[2] = upper;
    t.edge_arc[3] = lower;
    put(q, h, t);
  }

  // Sectors N, W, S, E; arcs enter on edges 2 (nw) and 3 (sw) and leave on 0 (ne) and 5 (se).
  void crossing(int q, int h, int index, int nw, int sw, int ne, int se, std::array<int, 4> reg) {
    Placed t;
    t.kind = TileKind::Crossing;
    t.crossing = index;
    t.corner_sector = {3, 0, 0, 1, 2, 2};
    t.sector_region = {reg[0], reg[1], reg[2], reg[3]};
    t.arcs = {{nw, 1, 0}, {sw, 2, 1}, {ne, 3, 0}, {se, 2, 3}};
    t.edge_arc = {ne, -1, nw, sw, -1, se};
    put(q, h, t);
  }

  // Strand tiles along `path`, entering from `from` and leaving into `to`.
  void strand(std::pair<int, int> from, const std::vector<std::pair<int, int>>& path,
              std::pair<int, int> to, int arc, int below, int above) {
    auto exit_side = [](std::pair<int, int> u, std::pair<int, int> v) {
      if (v.first != u.first + 1 || std::abs(v.second - u.second) != 1)
        throw std::logic_error("strand step is not a right neighbour");
      return v.second > u.second ? 0 : 5;
    };
    std::pair<int, int> prev = from;
    for (size_t i = 0; i < path.size(); ++i) {
      int e_in = (exit_side(prev, path[i]) + 3) % 6;
      int e_out = exit_side(path[i], i + 1 < path.size() ? path[i + 1] : to);
      Placed t;
      t.kind = TileKind::Strand;
      t.sector_region = {below, above};
      // Corners e_out + 1, ..., e_in lie above the strand.
      for (int c = 0; c < 6; ++c) t.corner_sector[c] = 0;
      for (int c = (e_out + 1) % 6;; c = (c + 1) % 6) {
        t.corner_sector[c] = 1;
        if (c == e_in) break;
      }
      t.arcs = {{arc, 0, 1}};
      t.edge_arc[e_in] = arc;
      t.edge_arc[e_out] = arc;
      put(path[i].first, path[i].second, t);
      prev = path[i];
    }
  }
};

// Columns q0..q1 alternating between heights `level` and `level + 1`.
std::vector<std::pair<int, int>> zigzag(int q0, int q1, int level) {
  std::vector<std::pair<int, int>> out;
  for (int q = q0; q <= q1; ++q) out.push_back({q, ((q + level) % 2 + 2) % 2 == 0 ? level : level + 1});
  return out;
}

std::vector<std::pair<int, int>> join(std::vector<std::pair<int, int>> a,
                                      const std::vector<std::pair<int, int>>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Resolves empty-tile regions by connectivity through shared corners, discards tiles carrying
// only the unbounded region, and builds edges and vertices.
TilingComplex finish(Layout& L, TilingComplex t) {
  int qmin = INT32_MAX, qmax = INT32_MIN, hmin = INT32_MAX, hmax = INT32_MIN;
  for (const auto& [k, _] : L.placed) {
    qmin = std::min(qmin, k.first), qmax = std::max(qmax, k.first);
    hmin = std::min(hmin, k.second), hmax = std::max(hmax, k.second);
  }
  for (int q = qmin - 2; q <= qmax + 2; ++q)
    for (int h = hmin - 4; h <= hmax + 4; ++h)
      if ((q + h) % 2 == 0 && !L.placed.count({q, h})) L.placed[{q, h}] = Placed{};

  std::vector<std::pair<int, int>> keys;
  std::vector<int> base;
  int nodes = 0;
  for (const auto& [k, p] : L.placed) {
    keys.push_back(k);
    base.push_back(nodes);
    nodes += static_cast<int>(p.sector_region.size());
  }
  UnionFind uf(nodes);
  std::map<std::array<int, 2>, int> corner_owner;
  for (size_t i = 0; i < keys.size(); ++i) {
    const Placed& p = L.placed[keys[i]];
    for (int c = 0; c < 6; ++c) {
      int node = base[i] + p.corner_sector[c];
      auto [it, fresh] = corner_owner.emplace(corner_point(keys[i].first, keys[i].second, c), node);
      if (!fresh) uf.unite(node, it->second);
    }
  }
  std::map<int, int> label;
  for (size_t i = 0; i < keys.size(); ++i) {
    const Placed& p = L.placed[keys[i]];
    for (size_t s = 0; s < p.sector_region.size(); ++s) {
      if (p.sector_region[s] < 0) continue;
      int root = uf.find(base[i] + static_cast<int>(s));
      auto [it, fresh] = label.emplace(root, p.sector_region[s]);
      if (!fresh && it->second != p.sector_region[s])
        throw std::logic_error("front regions do not match across tiles");
    }
  }
  for (size_t i = 0; i < keys.size(); ++i) {
    Placed& p = L.placed[keys[i]];
    for (size_t s = 0; s < p.sector_region.size(); ++s) {
      auto it = label.find(uf.find(base[i] + static_cast<int>(s)));
      p.sector_region[s] = it == label.end() ? 0 : it->second;
    }
  }

  std::map<std::pair<int, int>, int> index;
  for (const auto& [k, p] : L.placed) {
    if (std::all_of(p.sector_region.begin(), p.sector_region.end(), [](int r) { return r == 0; }))
      continue;
    Tile tile;
    tile.q = k.first;
    tile.h = k.second;
    tile.kind = p.kind;
    tile.crossing = p.crossing;
    tile.corner_sector = p.corner_sector;
    tile.sector_region = p.sector_region;
    tile.arcs = p.arcs;
    tile.edge_arc = p.edge_arc;
    index[k] = static_cast<int>(t.tiles.size());
    t.tiles.push_back(tile);
  }

  std::map<std::pair<int, int>, int> edge_index;
  for (size_t i = 0; i < t.tiles.size(); ++i) {
    const Tile& A = t.tiles[i];
    for (int k = 0; k < 6; ++k) {
      auto off = neighbour_offset(k);
      auto it = index.find({A.q + off[0], A.h + off[1]});
      if (it == index.end() || it->second < static_cast<int>(i)) continue;
      const Tile& B = t.tiles[it->second];
      int kb = (k + 3) % 6;
      if (A.edge_arc[k] != B.edge_arc[kb]) throw std::logic_error("front breaks at a tile edge");
      Edge e;
      e.a = static_cast<int>(i);
      e.b = it->second;
      e.side_a = k;
      e.arc = A.edge_arc[k];
      int sa0 = A.corner_sector[k], sa1 = A.corner_sector[(k + 1) % 6];
      int sb0 = B.corner_sector[(k + 4) % 6], sb1 = B.corner_sector[(k + 3) % 6];
      if (e.arc < 0) {
        if (sa0 != sa1 || sb0 != sb1) throw std::logic_error("sector split without an arc");
        e.sector_region = {A.sector_region[sa0]};
        e.sector_in_a = {sa0};
        e.sector_in_b = {sb0};
      } else {
        e.sector_region = {A.sector_region[sa0], A.sector_region[sa1]};
        e.sector_in_a = {sa0, sa1};
        e.sector_in_b = {sb0, sb1};
        for (const auto& la : A.arcs) {
          if (la.arc != e.arc) continue;
          if (la.below == sa0 && la.above == sa1) e.arcs.push_back({e.arc, 0, 1});
          if (la.below == sa1 && la.above == sa0) e.arcs.push_back({e.arc, 1, 0});
        }
        if (e.arcs.size() != 1) throw std::logic_error("edge arc not found in tile");
      }
      if (horizontal_side(k))
        e.cls = EdgeClass::Horizontal;
      else if (e.arc < 0)
        e.cls = EdgeClass::NoFront;
      else
        e.cls = t.arc_potential.at(e.arc) == 0 ? EdgeClass::Strand0 : EdgeClass::Strand1;
      edge_index[{e.a, e.b}] = static_cast<int>(t.edges.size());
      t.edges.push_back(e);
    }
  }

  auto edge_of = [&](int x, int y) { return edge_index.at({std::min(x, y), std::max(x, y)}); };
  std::map<std::array<int, 2>, int> vertex_index;
  for (size_t i = 0; i < t.tiles.size(); ++i) {
    const Tile& A = t.tiles[i];
    for (int c = 0; c < 6; ++c) {
      auto pt = corner_point(A.q, A.h, c);
      if (vertex_index.count(pt)) continue;
      // The other two tiles at corner c lie across edges c and c - 1.
      auto o1 = neighbour_offset(c), o2 = neighbour_offset((c + 5) % 6);
      auto i1 = index.find({A.q + o1[0], A.h + o1[1]});
      auto i2 = index.find({A.q + o2[0], A.h + o2[1]});
      if (i1 == index.end() || i2 == index.end()) continue;
      std::array<int, 3> ts{static_cast<int>(i), i1->second, i2->second};
      std::sort(ts.begin(), ts.end());
      Vertex v;
      v.x = pt[0];
      v.y = pt[1];
      v.tiles = ts;
      v.edges = {edge_of(ts[0], ts[1]), edge_of(ts[0], ts[2]), edge_of(ts[1], ts[2])};
      for (int j = 0; j < 3; ++j) {
        const Tile& T = t.tiles[ts[j]];
        int corner = -1;
        for (int cc = 0; cc < 6; ++cc)
          if (corner_point(T.q, T.h, cc) == pt) corner = cc;
        v.tile_sector[j] = T.corner_sector[corner];
        int region = T.sector_region[v.tile_sector[j]];
        if (j == 0) v.region = region;
        if (region != v.region) throw std::logic_error("vertex sits on the front");
        if (corner == 0) v.left_tile = ts[j];
        const Edge& e = t.edges[v.edges[j]];
        const Tile& ea = t.tiles[e.a];
        v.edge_sector[j] =
            e.sector_region.size() == 1 ? 0 : (corner_point(ea.q, ea.h, e.side_a) == pt ? 0 : 1);
        if (e.cls == EdgeClass::Horizontal) {
          if (v.horizontal >= 0) throw std::logic_error("vertex on two horizontal edges");
          v.horizontal = v.edges[j];
        }
      }
      int vid = static_cast<int>(t.vertices.size());
      vertex_index[pt] = vid;
      t.vertices.push_back(v);
    }
  }
  for (auto& e : t.edges) {
    const Tile& A = t.tiles[e.a];
    int c0 = e.side_a, c1 = (e.side_a + 1) % 6;
    // Horizontal edges list their left endpoint first.
    if (e.side_a == 1) std::swap(c0, c1);
    for (int j = 0; j < 2; ++j) {
      auto it = vertex_index.find(corner_point(A.q, A.h, j == 0 ? c0 : c1));
      e.vertices[j] = it == vertex_index.end() ? -1 : it->second;
    }
  }
  return t;
}

// Sections of Hom(F, G) over a piece with the given sectors and arcs, as a kernel basis in
// ambient coordinates.
Mat sections(const FrontSheaf& F, const FrontSheaf& G, const std::vector<int>& regions,
             const std::vector<LocalArc>& arcs, std::vector<size_t>* offsets) {
  uint32_t p = F.p;
  std::vector<size_t> off{0};
  for (int r : regions) off.push_back(off.back() + G.region_dim[r] * F.region_dim[r]);
  if (offsets) *offsets = off;
  size_t amb = off.back();
  size_t rows = 0;
  for (const auto& a : arcs)
    rows += G.region_dim[regions[a.above]] * F.region_dim[regions[a.below]];
  if (rows == 0) return Mat::identity(amb, p);
  Mat M(rows, amb, p);
  size_t r0 = 0;
  for (const auto& a : arcs) {
    int ra = regions[a.above], rb = regions[a.below];
    size_t fa = F.region_dim[ra], ga = G.region_dim[ra], fb = F.region_dim[rb], gb = G.region_dim[rb];
    const Mat& Fm = F.arc_map[a.arc];  // fa x fb
    const Mat& Gm = G.arc_map[a.arc];  // ga x gb
    // h_above F(a) - G(a) h_below, a ga x fb block.
    for (size_t i = 0; i < ga; ++i)
      for (size_t j = 0; j < fb; ++j) {
        size_t row = r0 + i * fb + j;
        for (size_t k = 0; k < fa; ++k)
          M(row, off[a.above] + i * fa + k) = fp::add(M(row, off[a.above] + i * fa + k), Fm(k, j), p);
        for (size_t k = 0; k < gb; ++k)
          M(row, off[a.below] + k * fb + j) =
              fp::sub(M(row, off[a.below] + k * fb + j), Gm(i, k), p);
      }
    r0 += ga * fb;
  }
  return kernel_matrix(M);
}

void add_block_identity(SparseMat& S, size_t r0, size_t c0, size_t len, uint32_t v) {
  for (size_t i = 0; i < len; ++i) S.add(r0 + i, c0 + i, v);
}

void add_dense(SparseMat& S, size_t r0, size_t c0, const Mat& m) {
  for (size_t j = 0; j < m.cols(); ++j)
    for (size_t i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) S.add(r0 + i, c0 + j, m(i, j));
}

}  // namespace

const char* kind_name(TileKind k) {
  switch (k) {
    case TileKind::Empty: return "empty";
    case TileKind::Strand: return "strand";
    case TileKind::LeftCusp: return "left cusp";
    case TileKind::RightCusp: return "right cusp";
    case TileKind::Crossing: return "crossing";
  }
  return "";
}

const char* class_name(EdgeClass c) {
  switch (c) {
    case EdgeClass::NoFront: return "no-front";
    case EdgeClass::Strand0: return "strand-0";
    case EdgeClass::Strand1: return "strand-1";
    case EdgeClass::Horizontal: return "horizontal";
  }
  return "";
}

std::array<int, 2> neighbour_offset(int k) {
  static constexpr int d[6][2] = {{1, 1}, {0, 2}, {-1, 1}, {-1, -1}, {0, -2}, {1, -1}};
  return {d[k][0], d[k][1]};
}

int TilingComplex::find_tile(int q, int h) const {
  for (size_t i = 0; i < tiles.size(); ++i)
    if (tiles[i].q == q && tiles[i].h == h) return static_cast<int>(i);
  return -1;
}

size_t TilingComplex::count(TileKind k) const {
  return static_cast<size_t>(
      std::count_if(tiles.begin(), tiles.end(), [k](const Tile& x) { return x.kind == k; }));
}

TilingComplex build_tiling(int m, int resolution) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (resolution < 1) throw std::invalid_argument("resolution must be at least 1");
  const int s = resolution;
  TilingComplex t;
  t.m = m;
  t.resolution = s;
  t.region_names = {"outside", "A", "B"};
  for (int j = 1; j < m; ++j) t.region_names.push_back("R" + std::to_string(j));
  t.arc_names = {"outer", "inner"};
  t.arc_potential = {1, 1};
  for (int j = 0; j <= m; ++j) t.arc_names.push_back("up" + std::to_string(j));
  for (int j = 0; j <= m; ++j) t.arc_names.push_back("low" + std::to_string(j));
  t.arc_potential.resize(2 * m + 4, 0);

  auto up = [](int j) { return 2 + j; };
  auto low = [m](int j) { return 3 + m + j; };
  auto braid_region = [m](int j) { return j == 0 || j == m ? 1 : 2 + j; };

  const int a = 1 + 2 * s;
  auto cross = [&](int j) { return a + 1 + 2 * s * j; };
  const int r = cross(m) + 2 * s + 1;
  const int R = r + 4;

  Layout L;
  L.left_cusp(0, 0, 0, low(0), 1, 0);
  L.left_cusp(a, 1, 1, up(0), 2, 1);
  for (int j = 1; j <= m; ++j)
    L.crossing(cross(j), 0, j, up(j - 1), low(j - 1), up(j), low(j),
               {2, braid_region(j - 1), 0, braid_region(j)});
  L.right_cusp(r, 1, 1, up(m), 2, 1);
  L.right_cusp(R, 1, 0, low(m), 1, 0);

  L.strand({0, 0}, join({{1, 1}, {2, 2}, {3, 3}}, join(zigzag(4, r + 1, 4), {{r + 2, 3}, {r + 3, 2}})),
           {R, 1}, 0, 1, 0);
  L.strand({a, 1}, zigzag(a + 1, r - 1, 2), {r, 1}, 1, 2, 1);
  for (int j = 0; j <= m; ++j) {
    int q0 = j == 0 ? a + 1 : cross(j) + 1;
    int q1 = j == m ? r - 1 : cross(j + 1) - 1;
    std::pair<int, int> from = j == 0 ? std::make_pair(a, 1) : std::make_pair(cross(j), 0);
    std::pair<int, int> to = j == m ? std::make_pair(r, 1) : std::make_pair(cross(j + 1), 0);
    L.strand(from, zigzag(q0, q1, 0), to, up(j), braid_region(j), 2);
  }
  for (int j = 0; j <= m; ++j) {
    int q0 = j == 0 ? 1 : cross(j) + 1;
    std::pair<int, int> from = j == 0 ? std::make_pair(0, 0) : std::make_pair(cross(j), 0);
    if (j < m) {
      L.strand(from, zigzag(q0, cross(j + 1) - 1, -2), {cross(j + 1), 0}, low(j), 0,
               braid_region(j));
    } else {
      L.strand(from, join(zigzag(q0, r + 2, -2), {{r + 3, 0}}), {R, 1}, low(j), 0, braid_region(j));
    }
  }
  return finish(L, t);
}

TilingComplex build_eye_tiling(int resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be at least 1");
  const int s = resolution;
  TilingComplex t;
  t.resolution = s;
  t.region_names = {"outside", "inside"};
  t.arc_names = {"upper", "lower"};
  t.arc_potential = {1, 0};
  Layout L;
  L.left_cusp(0, 0, 0, 1, 1, 0);
  L.right_cusp(2 * s, 0, 0, 1, 1, 0);
  L.strand({0, 0}, zigzag(1, 2 * s - 1, 1), {2 * s, 0}, 0, 1, 0);
  L.strand({0, 0}, zigzag(1, 2 * s - 1, -2), {2 * s, 0}, 1, 0, 1);
  return finish(L, t);
}

std::string validate_tiling(const TilingComplex& t) {
  for (const auto& T : t.tiles) {
    std::vector<int> front;
    for (int k = 0; k < 6; ++k)
      if (T.edge_arc[k] >= 0) front.push_back(k);
    for (int k : front)
      if (horizontal_side(k)) return "front meets a horizontal edge";
    auto consecutive = [&] {
      return front.size() == 2 && ((front[1] - front[0]) == 1 || (front[1] - front[0]) == 5);
    };
    std::string where = " at (" + std::to_string(T.q) + "," + std::to_string(T.h) + ")";
    switch (T.kind) {
      case TileKind::Empty:
        if (!front.empty()) return "empty tile meets the front" + where;
        break;
      case TileKind::Strand:
        if (front.size() != 2 || consecutive()) return "bad strand tile" + where;
        break;
      case TileKind::LeftCusp:
      case TileKind::RightCusp:
        if (!consecutive()) return "cusp strands must leave through consecutive edges" + where;
        break;
      case TileKind::Crossing:
        if (front.size() != 4) return "crossing tile must meet four edges" + where;
        break;
    }
  }
  for (const auto& v : t.vertices) {
    int n = 0;
    for (int e : v.edges) n += t.edges[e].cls == EdgeClass::Horizontal;
    if (n != 1) return "vertex without a unique horizontal edge";
  }
  for (const auto& e : t.edges)
    if (e.cls == EdgeClass::Horizontal && e.arc >= 0) return "front crosses a horizontal edge";
  return "";
}

FrontSheaf front_sheaf(const sheaf::SheafObject& F, const TilingComplex& t) {
  int m = static_cast<int>(F.m());
  if (t.m != m) throw std::invalid_argument("tiling built for a different m");
  size_t n = F.n;
  uint32_t p = F.p;
  FrontSheaf S;
  S.p = p;
  S.region_dim = {0, n, 2 * n};
  for (int j = 1; j < m; ++j) S.region_dim.push_back(n);
  S.arc_map.resize(2 * m + 4);
  S.arc_map[0] = Mat(0, n, p);
  S.arc_map[1] = F.psi;
  for (int j = 0; j < m; ++j) S.arc_map[2 + j] = F.phi[j];
  // The braid region right of the last crossing is region A itself, so its map is rescaled to
  // make the inner right cusp compose to the identity.
  auto c = inverse(F.psi * F.phi[m]);
  if (!c) throw std::invalid_argument("psi phi_{m+1} is singular");
  S.arc_map[2 + m] = F.phi[m] * *c;
  for (int j = 0; j <= m; ++j) S.arc_map[3 + m + j] = Mat(n, 0, p);
  return S;
}

FrontSheaf eye_sheaf(size_t rank, uint32_t p) {
  FrontSheaf S;
  S.p = p;
  S.region_dim = {0, rank};
  S.arc_map = {Mat(0, rank, p), Mat(rank, 0, p)};
  return S;
}

std::vector<std::string> check_microsupport(const TilingComplex& t, const FrontSheaf& F,
                                            size_t rank) {
  std::vector<std::string> bad;
  std::vector<std::array<int, 2>> ends(t.arc_names.size(), {-1, -1});
  for (const auto& T : t.tiles)
    for (const auto& a : T.arcs) {
      std::array<int, 2> e{T.sector_region[a.below], T.sector_region[a.above]};
      if (ends[a.arc][0] < 0) ends[a.arc] = e;
      if (ends[a.arc] != e) bad.push_back("arc " + t.arc_names[a.arc] + " changes regions");
    }
  for (size_t a = 0; a < ends.size(); ++a) {
    if (ends[a][0] < 0) continue;
    size_t db = F.region_dim[ends[a][0]], da = F.region_dim[ends[a][1]];
    const Mat& M = F.arc_map[a];
    if (M.rows() != da || M.cols() != db) {
      bad.push_back("arc " + t.arc_names[a] + " has a map of the wrong shape");
      continue;
    }
    size_t rk = lmrep::rank(M);
    bool ok = t.arc_potential[a] == 0 ? (rk == db && da - db == rank && da >= db)
                                      : (rk == da && db >= da && db - da == rank);
    if (!ok) bad.push_back("arc " + t.arc_names[a] + " violates the microlocal rank condition");
  }
  for (const auto& T : t.tiles) {
    std::string where = " at (" + std::to_string(T.q) + "," + std::to_string(T.h) + ")";
    if (T.kind == TileKind::LeftCusp || T.kind == TileKind::RightCusp) {
      // Sector 0 is outside, sector 1 inside; the upper arc runs inside -> outside.
      const LocalArc& u = T.arcs[0];
      const LocalArc& l = T.arcs[1];
      size_t dout = F.region_dim[T.sector_region[0]];
      if (F.arc_map[u.arc] * F.arc_map[l.arc] != Mat::identity(dout, F.p))
        bad.push_back("cusp composition is not the identity" + where);
    } else if (T.kind == TileKind::Crossing) {
      const Mat& nw = F.arc_map[T.arcs[0].arc];
      const Mat& sw = F.arc_map[T.arcs[1].arc];
      const Mat& ne = F.arc_map[T.arcs[2].arc];
      const Mat& se = F.arc_map[T.arcs[3].arc];
      size_t dn = F.region_dim[T.sector_region[0]], dw = F.region_dim[T.sector_region[1]];
      size_t ds = F.region_dim[T.sector_region[2]], de = F.region_dim[T.sector_region[3]];
      bool ok = nw * sw == ne * se && dw + de == ds + dn && lmrep::rank(vstack({sw, se})) == ds &&
                lmrep::rank(hstack({nw, -ne})) == dn;
      if (!ok) bad.push_back("crossing complex is not acyclic" + where);
    }
  }
  return bad;
}

CechComplex assemble_cech(const FrontSheaf& F, const FrontSheaf& G, const TilingComplex& t) {
  if (F.p != G.p) throw std::invalid_argument("sheaves over different fields");
  if (F.region_dim.size() != t.region_names.size() || G.region_dim.size() != t.region_names.size() ||
      F.arc_map.size() != t.arc_names.size() || G.arc_map.size() != t.arc_names.size())
    throw std::invalid_argument("sheaf does not match the tiling");
  uint32_t p = F.p;
  CechComplex C;
  C.p = p;
  auto hom = [&](int r) { return G.region_dim[r] * F.region_dim[r]; };

  std::vector<std::vector<size_t>> tile_sec(t.tiles.size()), edge_sec(t.edges.size());
  std::vector<Mat> tile_basis, edge_basis;
  for (size_t i = 0; i < t.tiles.size(); ++i) {
    C.tile_offset.push_back(C.amb0);
    tile_basis.push_back(sections(F, G, t.tiles[i].sector_region, t.tiles[i].arcs, &tile_sec[i]));
    C.amb0 += tile_sec[i].back();
  }
  for (size_t i = 0; i < t.edges.size(); ++i) {
    C.edge_offset.push_back(C.amb1);
    edge_basis.push_back(sections(F, G, t.edges[i].sector_region, t.edges[i].arcs, &edge_sec[i]));
    C.amb1 += edge_sec[i].back();
  }
  for (const auto& v : t.vertices) {
    C.vertex_offset.push_back(C.amb2);
    C.amb2 += hom(v.region);
  }

  C.d0 = SparseMat(C.amb1, C.amb0, p);
  for (size_t i = 0; i < t.edges.size(); ++i) {
    const Edge& e = t.edges[i];
    for (size_t s = 0; s < e.sector_region.size(); ++s) {
      size_t len = hom(e.sector_region[s]);
      size_t row = C.edge_offset[i] + edge_sec[i][s];
      add_block_identity(C.d0, row, C.tile_offset[e.b] + tile_sec[e.b][e.sector_in_b[s]], len, 1);
      add_block_identity(C.d0, row, C.tile_offset[e.a] + tile_sec[e.a][e.sector_in_a[s]], len,
                         p - 1);
    }
  }
  C.d1 = SparseMat(C.amb2, C.amb1, p);
  for (size_t i = 0; i < t.vertices.size(); ++i) {
    const Vertex& v = t.vertices[i];
    size_t len = hom(v.region);
    // (d t)_abc = t_bc - t_ac + t_ab
    const uint32_t sign[3] = {1, p - 1, 1};
    for (int j = 0; j < 3; ++j) {
      int e = v.edges[j];
      add_block_identity(C.d1, C.vertex_offset[i], C.edge_offset[e] + edge_sec[e][v.edge_sector[j]],
                         len, sign[j]);
    }
  }
  C.d0.normalize();
  C.d1.normalize();

  size_t cols0 = 0, cols1 = 0;
  for (const auto& b : tile_basis) cols0 += b.cols();
  for (const auto& b : edge_basis) cols1 += b.cols();
  C.k0 = SparseMat(C.amb0, cols0, p);
  C.k1 = SparseMat(C.amb1, cols1, p);
  size_t c = 0;
  for (size_t i = 0; i < tile_basis.size(); ++i) {
    add_dense(C.k0, C.tile_offset[i], c, tile_basis[i]);
    c += tile_basis[i].cols();
  }
  c = 0;
  for (size_t i = 0; i < edge_basis.size(); ++i) {
    C.edge_basis_offset.push_back(c);
    C.edge_basis_dim.push_back(edge_basis[i].cols());
    add_dense(C.k1, C.edge_offset[i], c, edge_basis[i]);
    c += edge_basis[i].cols();
  }
  C.k0.normalize();
  C.k1.normalize();
  C.c0 = cols0;
  C.c1 = cols1;
  C.c2 = C.amb2;
  C.d0k = C.d0 * C.k0;
  C.d1k = C.d1 * C.k1;
  return C;
}

bool d_squared_zero(const CechComplex& c) { return (c.d1 * c.d0k).is_zero(); }

CechDims cech_dims(const CechComplex& c) {
  CechDims d;
  d.c0 = c.c0;
  d.c1 = c.c1;
  d.c2 = c.c2;
  d.rank0 = sparse_rank(c.d0k);
  d.rank1 = sparse_rank(c.d1k);
  d.h0 = d.c0 - d.rank0;
  d.h1 = d.c1 - d.rank1 - d.rank0;
  d.h2 = d.c2 - d.rank1;
  return d;
}

H2Certificate check_h2(const CechComplex& c) {
  H2Certificate h;
  h.rank = sparse_rank(c.d1k);
  h.dim_c1 = c.c1;
  h.dim_c2 = c.c2;
  h.surjective = h.rank == h.dim_c2;
  return h;
}

namespace {
CechComplex complex_for(const sheaf::SheafObject& F, const sheaf::SheafObject& G, int resolution) {
  if (F.p != G.p || F.m() != G.m()) throw std::invalid_argument("mismatched field or m");
  TilingComplex t = build_tiling(static_cast<int>(F.m()), resolution);
  return assemble_cech(front_sheaf(F, t), front_sheaf(G, t), t);
}
}  // namespace

H2Certificate check_h2(const sheaf::SheafObject& F, const sheaf::SheafObject& G, int resolution) {
  return check_h2(complex_for(F, G, resolution));
}

CechDims cech_ext_dims(const sheaf::SheafObject& F, const sheaf::SheafObject& G, int resolution) {
  return cech_dims(complex_for(F, G, resolution));
}

// ---------------------------------------------------------------- the game

RedBlueGraph build_graph(const TilingComplex& t) {
  RedBlueGraph g;
  g.red.resize(t.vertices.size());
  g.red_adj.resize(t.vertices.size());
  for (size_t i = 0; i < t.vertices.size(); ++i) {
    const Vertex& v = t.vertices[i];
    g.red[i].vertex = static_cast<int>(i);
    if (v.left_tile >= 0) {
      g.red[i].has_left = true;
      g.red[i].left_kind = t.tiles[v.left_tile].kind;
    }
  }
  for (size_t i = 0; i < t.edges.size(); ++i) {
    const Edge& e = t.edges[i];
    BlueNode b;
    b.edge = static_cast<int>(i);
    b.cls = e.cls;
    b.horizontal = e.cls == EdgeClass::Horizontal;
    const Tile& lower = t.tiles[e.side_a == 4 ? e.b : e.a];
    b.q = lower.q;
    b.h = lower.h;
    b.ends = e.vertices;
    g.blue.push_back(b);
    std::vector<int> adj;
    for (int v : e.vertices)
      if (v >= 0) {
        adj.push_back(v);
        g.red_adj[v].push_back(static_cast<int>(i));
      }
    g.blue_adj.push_back(adj);
  }
  return g;
}

GameResult graph_game(const RedBlueGraph& g) {
  GameResult res;
  std::vector<bool> blue_gone(g.blue.size(), false), red_gone(g.red.size(), false);
  auto live_reds = [&](int b) {
    std::vector<int> out;
    for (int r : g.blue_adj[b])
      if (!red_gone[r]) out.push_back(r);
    return out;
  };
  std::vector<int> order;
  for (size_t i = 0; i < g.blue.size(); ++i)
    if (g.blue[i].horizontal) order.push_back(static_cast<int>(i));
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return std::make_pair(g.blue[x].q, g.blue[x].h) < std::make_pair(g.blue[y].q, g.blue[y].h);
  });
  auto stuck = [&](const std::string& why) {
    res.stuck_reason = why;
    for (size_t r = 0; r < g.red.size(); ++r)
      if (!red_gone[r]) res.stuck_red.push_back(static_cast<int>(r));
    return res;
  };
  for (int H : order) {
    int left = g.blue[H].ends[0], right = g.blue[H].ends[1];
    if (left >= 0 && !red_gone[left]) {
      std::vector<int> others;
      for (int b : g.red_adj[left])
        if (b != H && !blue_gone[b]) others.push_back(b);
      if (others.empty()) return stuck("red node with no removable leaves");
      for (int b : others) {
        auto lr = live_reds(b);
        if (lr.size() != 1 || lr[0] != left) return stuck("blue node next to a Y is not a leaf");
      }
      std::string rule;
      if (std::any_of(others.begin(), others.end(),
                      [&](int b) { return g.blue[b].cls == EdgeClass::NoFront; }))
        rule = "isomorphism edge";
      else if (g.red[left].has_left && g.red[left].left_kind == TileKind::Crossing)
        rule = "crossing Maslov-0 surjectivity";
      else if (g.red[left].has_left && g.red[left].left_kind == TileKind::LeftCusp)
        rule = "cusp lemma";
      else
        return stuck("no rule justifies removing a red node");
      for (int b : others) blue_gone[b] = true;
      red_gone[left] = true;
      res.trace.push_back({others, {left}, rule});
    }
    auto lr = live_reds(H);
    if (lr.size() > 1 || (lr.size() == 1 && lr[0] != right))
      return stuck("horizontal blue node is not a leaf");
    blue_gone[H] = true;
    GameStep step{{H}, {}, "isomorphism edge"};
    if (!lr.empty()) {
      red_gone[right] = true;
      step.red.push_back(right);
    }
    res.trace.push_back(step);
  }
  for (size_t r = 0; r < g.red.size(); ++r)
    if (!red_gone[r]) return stuck("red nodes remain after all Y removals");
  res.success = true;
  return res;
}

std::vector<StepCertificate> certify_game(const GameResult& r, const RedBlueGraph& g,
                                          const CechComplex& c) {
  std::vector<StepCertificate> out;
  for (const auto& step : r.trace) {
    std::vector<size_t> rows, cols;
    for (int red : step.red) {
      size_t v = static_cast<size_t>(g.red[red].vertex);
      size_t end = v + 1 < c.vertex_offset.size() ? c.vertex_offset[v + 1] : c.amb2;
      for (size_t i = c.vertex_offset[v]; i < end; ++i) rows.push_back(i);
    }
    for (int b : step.blue) {
      size_t e = static_cast<size_t>(g.blue[b].edge);
      for (size_t j = 0; j < c.edge_basis_dim[e]; ++j) cols.push_back(c.edge_basis_offset[e] + j);
    }
    StepCertificate s;
    s.target = rows.size();
    s.rank = rows.empty() ? 0 : sparse_rank(c.d1k, rows, cols);
    s.ok = s.rank == s.target;
    out.push_back(s);
  }
  return out;
}

}  // namespace lmrep::cech
