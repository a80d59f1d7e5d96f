#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmrep/rng.hpp"
#include "lmrep/sheafcat.hpp"
#include "lmrep/torusrep.hpp"

using namespace lmrep;
using namespace lmrep::sheaf;

namespace {

Mat s(int64_t v, uint32_t p) { return Mat::scalar(1, v, p); }

std::vector<Mat> random_tuple(int m, size_t n, uint32_t p, SplitMix64& g) {
  for (;;) {
    std::vector<Mat> t;
    for (int j = 0; j < m; ++j) t.push_back(random_mat(n, n, p, g));
    if (!det(pq_matrix(t, PQ::P, n, p)).is_zero()) return t;
  }
}

std::vector<Mat> conjugate(const std::vector<Mat>& t, const Mat& M) {
  Mat Mi = *inverse(M);
  std::vector<Mat> out;
  for (const auto& a : t) out.push_back(Mi * a * M);
  return out;
}

bool same(const std::vector<Mat>& a, const std::vector<Mat>& b) { return stack(a) == stack(b); }

// phi_{k+1} as the second block column of B_1 ... B_k with B_j = [[0, 1], [1, A_j]], built
// without the library's recurrences.
Mat phi_oracle(const std::vector<Mat>& A, size_t k) {
  size_t n = A[0].rows();
  uint32_t p = A[0].modulus();
  Mat prod = Mat::identity(2 * n, p);
  for (size_t j = 0; j < k; ++j) {
    Mat B(2 * n, 2 * n, p);
    B.set_block(0, n, Mat::identity(n, p));
    B.set_block(n, 0, Mat::identity(n, p));
    B.set_block(n, n, A[j]);
    prod = prod * B;
  }
  return prod.block(0, n, 2 * n, n);
}

}  // namespace

TEST_CASE("objects") {
  auto F = build_sheaf_object({s(1, 2), s(0, 2)});
  CHECK(F.phi[0] == Mat::from_rows({{0}, {1}}, 2));
  CHECK(F.psi == Mat::from_rows({{0, 1}}, 2));
  CHECK(F.phi[1] == Mat::from_rows({{1}, {1}}, 2));
  CHECK(F.phi[2] == Mat::from_rows({{0}, {1}}, 2));
  CHECK(check_object(F));
  CHECK_THROWS(build_sheaf_object({s(1, 2), s(1, 2)}));

  SplitMix64 g(1);
  for (int m = 1; m <= 4; ++m) {
    auto A = random_tuple(m, 2, 3, g);
    auto G = build_sheaf_object(A);
    CHECK(check_object(G));
    for (size_t k = 0; k <= static_cast<size_t>(m); ++k) CHECK(G.phi[k] == phi_oracle(A, k));
  }
}

TEST_CASE("Ext^0") {
  auto Z = build_sheaf_object({s(0, 2), s(0, 2)});
  CHECK(ext0_basis(Z, Z).size() == 2);
  CHECK(ext1(Z, Z).dim == 2);

  SplitMix64 g(2);
  for (int m = 1; m <= 4; ++m) {
    auto F = build_sheaf_object(random_tuple(m, 2, 3, g));
    CHECK(is_ext0(F, F, {Mat::identity(2, 3), Mat::identity(2, 3)}));
    auto G = build_sheaf_object(conjugate(F.A, random_invertible(2, 3, g)));
    auto b = ext0_basis(F, G);
    CHECK(!b.empty());
    for (const auto& u : b) {
      CHECK(is_ext0(F, G, u));
      CHECK(check_morphism(F, G, materialize(u, m)));
    }
  }
  // Enumeration over F_3 at n = 1, m = 2: a'_2 u1 = u2 a_2 and a'_1 u2 = u1 a_1.
  auto tuples = enumerate_tuples(2, 1, 3, 100);
  for (const auto& a : tuples)
    for (const auto& b : tuples) {
      auto F = build_sheaf_object(a), G = build_sheaf_object(b);
      size_t count = 0;
      for (int u1 = 0; u1 < 3; ++u1)
        for (int u2 = 0; u2 < 3; ++u2) {
          int64_t a1 = a[0].at(0, 0).value(), a2 = a[1].at(0, 0).value();
          int64_t b1 = b[0].at(0, 0).value(), b2 = b[1].at(0, 0).value();
          count += (b2 * u1 - u2 * a2) % 3 == 0 && (b1 * u2 - u1 * a1) % 3 == 0;
        }
      size_t dim = ext0_basis(F, G).size();
      CHECK(count == (dim == 0 ? 1u : dim == 1 ? 3u : 9u));
    }
}

TEST_CASE("extensions") {
  SplitMix64 g(3);
  for (int m = 1; m <= 3; ++m) {
    auto F = build_sheaf_object(random_tuple(m, 2, 3, g)), G = build_sheaf_object(random_tuple(m, 2, 3, g));
    std::vector<Mat> zero(m, Mat::zero(2, 2, 3));
    auto split = extension_from_class(F, G, zero);
    CHECK(check_extension(F, G, split));
    for (const auto& O : split.Omega) {
      CHECK(O.block(0, 6, 2, 2).is_zero());
      CHECK(O.block(4, 6, 2, 2).is_zero());
    }
    auto space = ext1(F, G);
    CHECK(canonical(space, zero) == canonical(space, zero));
    CHECK(stack(canonical(space, zero)).is_zero());
    for (size_t c = 0; c < space.dim; ++c) {
      auto w = unstack(space.basis.col(c), m, 2);
      auto X = extension_from_class(F, G, w);
      CHECK(check_extension(F, G, X));
      CHECK(same(read_extension(F, G, X).w, w));
    }
  }
}

TEST_CASE("equivalences and normalization") {
  SplitMix64 g(4);
  for (int m = 1; m <= 3; ++m) {
    size_t n = 2;
    auto F = build_sheaf_object(random_tuple(m, n, 5, g)), G = build_sheaf_object(random_tuple(m, n, 5, g));
    ExtensionData d = zero_data(n, m, 5);
    d.x = random_mat(n, n, 5, g), d.y = random_mat(n, n, 5, g), d.v0 = random_mat(n, n, 5, g),
    d.w0 = random_mat(n, n, 5, g);
    for (int k = 0; k < m; ++k) d.v[k] = random_mat(n, n, 5, g), d.w[k] = random_mat(n, n, 5, g);
    auto X = middle_from_data(F, G, d);
    CHECK(check_extension(F, G, X));
    Equivalence q{random_mat(n, n, 5, g), random_mat(n, n, 5, g), random_mat(n, n, 5, g),
                  random_mat(n, n, 5, g), {}};
    for (int k = 0; k < m + 2; ++k) q.u.push_back(random_invertible(n, 5, g));
    auto e1 = apply_equivalence(F, G, d, q);
    auto e2 = read_extension(F, G, transform(X, q));
    CHECK(same(e1.w, e2.w));
    CHECK(same(e1.v, e2.v));
    CHECK(e1.x == e2.x);
    CHECK(e1.w0 == e2.w0);
    auto nz = normalize(F, G, d);
    auto en = apply_equivalence(F, G, d, nz.eq);
    CHECK(en.x.is_zero());
    CHECK(en.y.is_zero());
    CHECK(en.v0.is_zero());
    CHECK(en.w0.is_zero());
    CHECK(stack(en.v).is_zero());
  }
}

TEST_CASE("compositions") {
  SplitMix64 g(5);
  for (int m = 1; m <= 3; ++m) {
    auto A = random_tuple(m, 2, 3, g);
    auto F = build_sheaf_object(A);
    auto G = build_sheaf_object(conjugate(A, random_invertible(2, 3, g)));
    auto H = build_sheaf_object(conjugate(A, random_invertible(2, 3, g)));
    Ext0Elem id{Mat::identity(2, 3), Mat::identity(2, 3)};
    auto bFG = ext0_basis(F, G), bGH = ext0_basis(G, H), bHF = ext0_basis(H, F);
    REQUIRE(!bFG.empty());
    for (const auto& u : bFG) {
      auto c = compose00(id, u);
      CHECK((c.u1 == u.u1 && c.u2 == u.u2));
      // compose00 matches the composition of materialized diagrams.
      for (const auto& v : bGH) {
        auto uv = compose00(v, u);
        auto D = compose_diagrams(materialize(v, m), materialize(u, m));
        auto E = materialize(uv, m);
        CHECK(D.v == E.v);
        for (size_t k = 0; k < D.u.size(); ++k) CHECK(D.u[k] == E.u[k]);
        for (const auto& w : bHF) {
          auto l = compose00(w, compose00(v, u)), r = compose00(compose00(w, v), u);
          CHECK((l.u1 == r.u1 && l.u2 == r.u2));
        }
      }
    }
    auto sGH = ext1(G, H), sFH = ext1(F, H);
    for (size_t c = 0; c < sGH.dim; ++c) {
      auto w = unstack(sGH.basis.col(c), m, 2);
      CHECK(same(compose01(w, id), w));
      for (const auto& u : bFG) {
        auto PB = pullback(F, G, H, extension_from_class(G, H, w), u);
        REQUIRE(check_extension(F, H, PB));
        auto nw = normalize(F, H, read_extension(F, H, PB)).w;
        CHECK(same(canonical(sFH, nw), canonical(sFH, compose01(w, u))));
      }
    }
    auto sFG = ext1(F, G);
    for (size_t c = 0; c < sFG.dim; ++c) {
      auto w = unstack(sFG.basis.col(c), m, 2);
      CHECK(same(compose10(id, w), w));
      for (const auto& u : bGH) {
        auto PO = pushout(F, G, H, extension_from_class(F, G, w), u);
        REQUIRE(check_extension(F, H, PO));
        auto nw = normalize(F, H, read_extension(F, H, PO)).w;
        CHECK(same(canonical(sFH, nw), canonical(sFH, compose10(u, w))));
      }
    }
  }
}

TEST_CASE("the transpose functor") {
  auto f = functor_h0(-Mat::identity(2, 3), -Mat::identity(2, 3));
  CHECK(f.u1 == Mat::identity(2, 3));
  CHECK(f.u2 == Mat::identity(2, 3));

  SplitMix64 g(6);
  for (int m = 1; m <= 4; ++m) {
    auto A = random_tuple(m, 2, 3, g);
    std::vector<Mat> rev;
    for (size_t j = A.size(); j-- > 0;) rev.push_back(A[j].transpose());
    CHECK(pq_matrix(A, PQ::P, 2, 3).transpose() == pq_matrix(rev, PQ::P, 2, 3));
    auto T = functor_object(A);
    CHECK_NOTHROW(build_sheaf_object(T));

    DGA L = build_lambda_dga(m, 3);
    RepEngine E(L);
    auto B = random_tuple(m, 2, 3, g);
    auto hm = E.hom_cohomology(lambda_rep(L, A), lambda_rep(L, B));
    auto FA = build_sheaf_object(functor_object(A)), FB = build_sheaf_object(functor_object(B));
    CHECK(hm.dims[0] == ext0_basis(FA, FB).size());
    CHECK(hm.dims[1] == ext1(FA, FB).dim);

    // H^0 classes land in Ext^0 and image vectors in the Ext^1 image.
    auto h = torus::cohomology_closed(lambda_rep(L, A), lambda_rep(L, B));
    for (size_t c = 0; c < h.dim0; ++c) {
      auto u = torus::unstack(0, h.h0.col(c), 2, 2);
      CHECK(is_ext0(FA, FB, functor_h0(u.c[0], u.c[1])));
    }
    auto space = ext1(FA, FB);
    for (size_t c = 0; c < h.image.dim(); ++c) {
      auto b = torus::unstack(1, h.image.basis().col(c), m, 2);
      CHECK(space.image.contains(stack(functor_h1(b.c))));
    }
  }
  // Every sheaf tuple over F_2 at n = 1, m = 2 is hit.
  auto reps = enumerate_tuples(2, 1, 2, 100);
  size_t valid = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      try {
        build_sheaf_object({s(a, 2), s(b, 2)});
        ++valid;
      } catch (const std::exception&) {
      }
    }
  CHECK(valid == reps.size());
}
