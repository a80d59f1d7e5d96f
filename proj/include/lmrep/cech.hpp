// Hexagonal-tile Čech complex of Hom(F, G) for sheaves on a front, the H^2 rank certificate,
// the leaf / Y removal game on the blue-red incidence graph, and Čech Ext dimensions.
//
// Tiles are flat-topped hexagons in doubled coordinates (q, h) with q + h even; the neighbour
// across edge k is at neighbour_offset(k). Corners are numbered 0 = right, 1 = top right, 2 = top left,
// 3 = left, 4 = bottom left, 5 = bottom right, and edge k joins corners k and k + 1, so edges 1
// and 4 are the horizontal ones. Corner k of a tile is corner k + 4 of the neighbour across
// edge k, and corner k + 1 is corner k + 3 there.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "lmrep/exactalg.hpp"
#include "lmrep/sheafcat.hpp"
#include "lmrep/sparse.hpp"

namespace lmrep::cech {

enum class TileKind { Empty, Strand, LeftCusp, RightCusp, Crossing };
enum class EdgeClass { NoFront, Strand0, Strand1, Horizontal };

const char* kind_name(TileKind k);
const char* class_name(EdgeClass c);

// (dq, dh) of the neighbour across edge k.
std::array<int, 2> neighbour_offset(int k);

// An arc of the front inside a local piece; stalk maps go from the region below to the one above.
struct LocalArc {
  int arc = -1;
  int below = -1, above = -1;  // local sector indices
};

struct Tile {
  int q = 0, h = 0;
  TileKind kind = TileKind::Empty;
  int crossing = 0;                  // 1-based crossing index for crossing tiles
  std::array<int, 6> corner_sector{};  // corner -> local sector
  std::vector<int> sector_region;
  std::vector<LocalArc> arcs;
  std::array<int, 6> edge_arc{-1, -1, -1, -1, -1, -1};  // arc meeting edge k, or -1
};

struct Edge {
  int a = -1, b = -1;  // tile indices, a < b
  int side_a = 0;      // edge index in tile a; it is side_a + 3 in tile b
  EdgeClass cls = EdgeClass::NoFront;
  int arc = -1;
  std::vector<int> sector_region;  // one sector, or two split by the arc
  std::vector<LocalArc> arcs;
  std::vector<int> sector_in_a, sector_in_b;
  std::array<int, 2> vertices{-1, -1};
};

struct Vertex {
  int x = 0, y = 0;              // lattice position of the corner
  std::array<int, 3> tiles{};    // sorted a < b < c
  std::array<int, 3> edges{};    // ab, ac, bc
  int region = 0;
  std::array<int, 3> tile_sector{};
  std::array<int, 3> edge_sector{};
  int horizontal = -1;           // the unique horizontal incident edge
  int left_tile = -1;            // tile having this vertex as its corner 0, if any
};

struct TilingComplex {
  int m = 0;  // 0 for the eye
  int resolution = 1;
  std::vector<std::string> region_names;  // region 0 is the unbounded one
  std::vector<std::string> arc_names;
  std::vector<int> arc_potential;
  std::vector<Tile> tiles;  // tiles meeting the support only, sorted by (q, h)
  std::vector<Edge> edges;
  std::vector<Vertex> vertices;

  int find_tile(int q, int h) const;
  size_t count(TileKind k) const;
};

// Rainbow closure of sigma_1^m. Regions: 0 outside, 1 between the two upper arcs (also the
// braid regions left of crossing 1 and right of crossing m), 2 between the inner arc and the
// braid, 2 + j the braid region between crossings j and j + 1 (1 <= j < m). Arcs: 0 outer
// upper, 1 inner upper, 2 + j the upper braid piece after crossing j (0 <= j <= m), 3 + m + j
// the lower braid piece after crossing j. `resolution` lengthens every strand run.
TilingComplex build_tiling(int m, int resolution);
// Standard eye unknot: region 1 inside; arc 0 upper (potential 1), arc 1 lower (potential 0).
TilingComplex build_eye_tiling(int resolution);

// Tile constraints and the one-horizontal-edge-per-vertex property; empty string when valid.
std::string validate_tiling(const TilingComplex& t);

// Stalk dimensions per region and stalk maps per arc (region below -> region above).
struct FrontSheaf {
  uint32_t p = 2;
  std::vector<size_t> region_dim;
  std::vector<Mat> arc_map;
};

FrontSheaf front_sheaf(const sheaf::SheafObject& F, const TilingComplex& t);
FrontSheaf eye_sheaf(size_t rank, uint32_t p);

// Arc, cusp and crossing conditions for microlocal rank `rank`; returns the failures.
std::vector<std::string> check_microsupport(const TilingComplex& t, const FrontSheaf& F,
                                            size_t rank);

struct CechComplex {
  uint32_t p = 2;
  // Ambient coordinates: every sector of a piece contributes Hom(F_R, G_R) row-major.
  std::vector<size_t> tile_offset, edge_offset, vertex_offset;
  size_t amb0 = 0, amb1 = 0, amb2 = 0;
  SparseMat d0, d1;    // ambient differentials
  SparseMat k0, k1;    // section bases of tiles and edges, block diagonal
  SparseMat d0k, d1k;  // d0 * k0 and d1 * k1
  std::vector<size_t> edge_basis_offset, edge_basis_dim;  // columns of k1 per edge
  size_t c0 = 0, c1 = 0, c2 = 0;  // dimensions of the Čech groups
};

CechComplex assemble_cech(const FrontSheaf& F, const FrontSheaf& G, const TilingComplex& t);
bool d_squared_zero(const CechComplex& c);

struct CechDims {
  size_t h0 = 0, h1 = 0, h2 = 0;
  size_t c0 = 0, c1 = 0, c2 = 0;
  size_t rank0 = 0, rank1 = 0;
};

CechDims cech_dims(const CechComplex& c);

struct H2Certificate {
  bool surjective = false;
  size_t rank = 0, dim_c1 = 0, dim_c2 = 0;
};

H2Certificate check_h2(const CechComplex& c);
H2Certificate check_h2(const sheaf::SheafObject& F, const sheaf::SheafObject& G,
                       int resolution = 1);
CechDims cech_ext_dims(const sheaf::SheafObject& F, const sheaf::SheafObject& G,
                       int resolution = 1);

// ---- the removal game ----

struct BlueNode {
  int edge = -1;
  bool horizontal = false;
  EdgeClass cls = EdgeClass::NoFront;
  int q = 0, h = 0;            // sort key: the tile below a horizontal edge
  std::array<int, 2> ends{-1, -1};  // red endpoints (left, right for horizontal edges)
};

struct RedNode {
  int vertex = -1;
  TileKind left_kind = TileKind::Empty;  // content of the tile to the left, if any
  bool has_left = false;
};

struct RedBlueGraph {
  std::vector<BlueNode> blue;
  std::vector<RedNode> red;
  std::vector<std::vector<int>> blue_adj;  // blue -> red
  std::vector<std::vector<int>> red_adj;   // red -> blue
};

RedBlueGraph build_graph(const TilingComplex& t);

struct GameStep {
  std::vector<int> blue, red;
  std::string rule;  // "isomorphism edge", "crossing Maslov-0 surjectivity" or "cusp lemma"
};

struct GameResult {
  bool success = false;
  std::vector<GameStep> trace;
  std::vector<int> stuck_red;  // red nodes left when no rule applies
  std::string stuck_reason;
};

GameResult graph_game(const RedBlueGraph& g);

// Re-checks each removal step as a rank fact on an assembled complex: the restriction from the
// removed blue sections onto the removed red stalks is surjective.
struct StepCertificate {
  size_t rank = 0, target = 0;
  bool ok = false;
};
std::vector<StepCertificate> certify_game(const GameResult& r, const RedBlueGraph& g,
                                          const CechComplex& c);

}  // namespace lmrep::cech
