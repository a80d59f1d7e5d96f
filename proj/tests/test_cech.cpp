#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lmrep/ainfty.hpp"
#include "lmrep/cech.hpp"
#include "lmrep/rng.hpp"

using namespace lmrep;
using namespace lmrep::cech;

namespace {

Mat s(int64_t v, uint32_t p) { return Mat::scalar(1, v, p); }

std::vector<Mat> random_tuple(int m, size_t n, uint32_t p, SplitMix64& g) {
  for (;;) {
    std::vector<Mat> t;
    for (int j = 0; j < m; ++j) t.push_back(random_mat(n, n, p, g));
    if (!det(pq_matrix(t, PQ::P, n, p)).is_zero()) return t;
  }
}

// Cohomology from dense ranks of the composed matrices, independent of the sparse eliminator.
std::array<size_t, 3> dense_dims(const CechComplex& c) {
  size_t r0 = rank(c.d0k.dense()), r1 = rank(c.d1k.dense());
  return {c.c0 - r0, c.c1 - r1 - r0, c.c2 - r1};
}

}  // namespace

TEST_CASE("closure tilings") {
  for (int m = 1; m <= 4; ++m)
    for (int res = 1; res <= 3; ++res) {
      auto T = build_tiling(m, res);
      CHECK(validate_tiling(T) == "");
      CHECK(T.count(TileKind::LeftCusp) == 2);
      CHECK(T.count(TileKind::RightCusp) == 2);
      CHECK(T.count(TileKind::Crossing) == static_cast<size_t>(m));
      // One horizontal edge per vertex, three tiles per vertex, so no fourfold overlaps.
      for (const auto& v : T.vertices) {
        int horizontal = 0;
        for (int e : v.edges) horizontal += T.edges[e].cls == EdgeClass::Horizontal;
        CHECK(horizontal == 1);
        std::set<int> tiles(v.tiles.begin(), v.tiles.end());
        CHECK(tiles.size() == 3);
      }
      // Horizontal edges never meet the front.
      for (const auto& e : T.edges)
        if (e.cls == EdgeClass::Horizontal) CHECK(e.arc == -1);
    }
  auto a = build_tiling(2, 1), b = build_tiling(2, 1);
  CHECK(a.tiles.size() == b.tiles.size());
  CHECK(a.edges.size() == b.edges.size());
}

TEST_CASE("Hom of the zero tuple with itself") {
  auto Z = sheaf::build_sheaf_object({s(0, 2), s(0, 2)});
  auto d = cech_ext_dims(Z, Z);
  CHECK(d.h0 == 2);
  CHECK(d.h1 == 2);
  CHECK(d.h2 == 0);
}

TEST_CASE("eye unknot") {
  for (int res = 1; res <= 3; ++res) {
    auto T = build_eye_tiling(res);
    CHECK(validate_tiling(T) == "");
    for (size_t r = 1; r <= 2; ++r)
      for (size_t q = 1; q <= 2; ++q) {
        auto C = assemble_cech(eye_sheaf(r, 3), eye_sheaf(q, 3), T);
        auto d = cech_dims(C);
        CHECK(d.h0 == r * q);
        CHECK(d.h1 == 0);
        CHECK(d.h2 == 0);
        CHECK(check_h2(C).surjective);
      }
  }
}

TEST_CASE("d^1 d^0 = 0 and dense ranks agree") {
  SplitMix64 g(1);
  for (uint32_t p : {2u, 3u})
    for (int m = 1; m <= 3; ++m) {
      auto T = build_tiling(m, 1);
      for (int t = 0; t < 3; ++t) {
        auto F = sheaf::build_sheaf_object(random_tuple(m, 2, p, g));
        auto G = sheaf::build_sheaf_object(random_tuple(m, 2, p, g));
        auto C = assemble_cech(front_sheaf(F, T), front_sheaf(G, T), T);
        CHECK(d_squared_zero(C));
        CHECK((C.d1.dense() * C.d0k.dense()).is_zero());
        auto d = cech_dims(C);
        auto dd = dense_dims(C);
        CHECK(d.h0 == dd[0]);
        CHECK(d.h1 == dd[1]);
        CHECK(d.h2 == dd[2]);
        CHECK(d.h0 == sheaf::ext0_basis(F, G).size());
        CHECK(d.h1 == sheaf::ext1(F, G).dim);
      }
    }
}

TEST_CASE("microsupport conditions") {
  SplitMix64 g(2);
  auto T = build_tiling(2, 1);
  auto F = sheaf::build_sheaf_object(random_tuple(2, 1, 3, g));
  auto FS = front_sheaf(F, T);
  CHECK(check_microsupport(T, FS, 1).empty());
  // The lower braid arcs carry n x 0 maps; zeroing the psi arc breaks the inner cusp.
  auto broken = FS;
  broken.arc_map[1] = Mat::zero(broken.arc_map[1].rows(), broken.arc_map[1].cols(), 3);
  CHECK(!check_microsupport(T, broken, 1).empty());
}

TEST_CASE("H^2 vanishes") {
  auto tuples = enumerate_tuples(2, 1, 2, 100);
  for (const auto& a : tuples)
    for (const auto& b : tuples) {
      auto c = check_h2(sheaf::build_sheaf_object(a), sheaf::build_sheaf_object(b));
      CHECK(c.surjective);
      CHECK(c.rank == c.dim_c2);
    }
  SplitMix64 g(3);
  for (int t = 0; t < 4; ++t)
    CHECK(check_h2(sheaf::build_sheaf_object(random_tuple(3, 2, 3, g)),
                   sheaf::build_sheaf_object(random_tuple(3, 2, 3, g)))
              .surjective);
}

TEST_CASE("refinement invariance") {
  SplitMix64 g(4);
  for (int m = 1; m <= 3; ++m)
    for (int t = 0; t < 2; ++t) {
      auto F = sheaf::build_sheaf_object(random_tuple(m, 2, 3, g));
      auto G = sheaf::build_sheaf_object(random_tuple(m, 2, 3, g));
      auto a = cech_ext_dims(F, G, 1), b = cech_ext_dims(F, G, 2), c = cech_ext_dims(F, G, 3);
      CHECK((a.h0 == b.h0 && b.h0 == c.h0));
      CHECK((a.h1 == b.h1 && b.h1 == c.h1));
      CHECK((a.h2 == 0 && b.h2 == 0 && c.h2 == 0));
      CHECK(a.c1 < b.c1);
    }
}

TEST_CASE("removal game") {
  SplitMix64 g(5);
  for (int m = 1; m <= 4; ++m) {
    auto T = build_tiling(m, 1);
    auto graph = build_graph(T);
    for (size_t r = 0; r < graph.red.size(); ++r) {
      int horizontal = 0;
      for (int b : graph.red_adj[r]) horizontal += graph.blue[b].horizontal;
      CHECK(horizontal == 1);
    }
    auto game = graph_game(graph);
    REQUIRE(game.success);
    CHECK(game.stuck_red.empty());
    // Every red node is removed exactly once.
    std::multiset<int> removed;
    std::set<std::string> rules;
    for (const auto& step : game.trace) {
      removed.insert(step.red.begin(), step.red.end());
      rules.insert(step.rule);
    }
    CHECK(removed.size() == graph.red.size());
    CHECK(std::set<int>(removed.begin(), removed.end()).size() == graph.red.size());
    CHECK(rules.count("cusp lemma") == 1);
    CHECK(rules.count("crossing Maslov-0 surjectivity") == 1);
    auto F = sheaf::build_sheaf_object(random_tuple(m, 2, 3, g));
    auto G = sheaf::build_sheaf_object(random_tuple(m, 2, 3, g));
    auto C = assemble_cech(front_sheaf(F, T), front_sheaf(G, T), T);
    for (const auto& c : certify_game(game, graph, C)) CHECK(c.ok);
    CHECK(check_h2(C).surjective);
  }
}

TEST_CASE("an isolated red node is stuck") {
  RedBlueGraph graph;
  graph.red.push_back({0, TileKind::Empty, false});
  graph.red_adj.push_back({});
  auto r = graph_game(graph);
  CHECK_FALSE(r.success);
  CHECK(r.stuck_red == std::vector<int>{0});
  CHECK(!r.stuck_reason.empty());
}
