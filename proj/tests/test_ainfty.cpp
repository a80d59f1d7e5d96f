#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lmrep/ainfty.hpp"
#include "lmrep/rng.hpp"

using namespace lmrep;

namespace {

Mat s(int64_t v, uint32_t p) { return Mat::scalar(1, v, p); }

std::vector<Mat> scalars(std::initializer_list<int64_t> vs, uint32_t p) {
  std::vector<Mat> out;
  for (auto v : vs) out.push_back(s(v, p));
  return out;
}

std::vector<Mat> random_tuple(int m, size_t n, uint32_t p, SplitMix64& g) {
  for (;;) {
    std::vector<Mat> t;
    for (int j = 0; j < m; ++j) t.push_back(random_mat(n, n, p, g));
    if (!det(pq_matrix(t, PQ::P, n, p)).is_zero()) return t;
  }
}

FreePoly word_poly(const DGA& L, int m, PQ kind) {
  std::vector<FreePoly> a;
  for (int j = 1; j <= m; ++j) a.push_back(FreePoly::letter(L.index("a" + std::to_string(j)), 1, L.modulus()));
  return pq_apply(a, kind, L.modulus());
}

}  // namespace

TEST_CASE("evaluation") {
  DGA L = build_lambda_dga(2, 2);
  Representation r = lambda_rep(L, scalars({0, 0}, 2));
  CHECK(eval_poly(L, r, FreePoly::constant(1, 2)) == s(1, 2));
  CHECK(eval_poly(L, r, L.diff(L.index("b1"))).is_zero());
  CHECK(r.at(L.index("t1")) == s(1, 2));

  SplitMix64 g(1);
  for (int m = 1; m <= 4; ++m) {
    DGA L3 = build_lambda_dga(m, 3);
    for (int t = 0; t < 5; ++t) {
      auto A = random_tuple(m, 2, 3, g);
      Representation rho = lambda_rep(L3, A);
      CHECK(eval_poly(L3, rho, word_poly(L3, m, PQ::P)) == pq_matrix(A, PQ::P, 2, 3));
      CHECK(eval_poly(L3, rho, word_poly(L3, m, PQ::Q)) == pq_matrix(A, PQ::Q, 2, 3));
      CHECK(!augmentation_defect(L3, rho).has_value());
      CHECK(rho.at(L3.index("t1")) * *rho.inv[L3.index("t1")] == Mat::identity(2, 3));
    }
  }
}

TEST_CASE("enumeration") {
  auto t = enumerate_tuples(2, 1, 2, 1000);
  REQUIRE(t.size() == 3);
  CHECK(t[0] == scalars({0, 0}, 2));
  CHECK(t[1] == scalars({0, 1}, 2));
  CHECK(t[2] == scalars({1, 0}, 2));
  auto u = enumerate_tuples(1, 1, 3, 1000);
  REQUIRE(u.size() == 2);
  CHECK(u[0][0] == s(1, 3));
  CHECK(u[1][0] == s(2, 3));
  CHECK(enumerate_tuples(1, 1, 2, 10).size() == 1);
  try {
    enumerate_tuples(2, 2, 2, 100);
    FAIL("expected a refusal");
  } catch (const BudgetExceeded& e) {
    CHECK(e.required == 256);
    CHECK(e.budget == 100);
  }
  // Brute force over F_3, n = 1, m = 3: P_3 = a1 a2 a3 + a1 + a3.
  size_t count = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) count += (a * b * c + a + c) % 3 != 0;
  CHECK(enumerate_tuples(3, 1, 3, 1000).size() == count);
}

TEST_CASE("representations reject non-augmentations") {
  DGA L = build_lambda_dga(2, 3);
  std::map<uint32_t, Mat> v{{L.index("a1"), s(1, 3)}, {L.index("a2"), s(1, 3)},
                            {L.index("t1"), s(2, 3)}, {L.index("t2"), s(1, 3)}};
  CHECK_THROWS(make_representation(L, 1, v));
  CHECK_THROWS(lambda_rep(build_lambda_dga(2, 2), scalars({1, 1}, 2)));
}

TEST_CASE("twisting") {
  DGA L = build_lambda_dga(2, 2);
  TwistedDGA tw = twist_diff(L, lambda_rep(L, scalars({0, 0}, 2)));
  const MatPoly& d = tw.diff[L.index("b1")];
  CHECK(d.constant_term().is_zero());
  CHECK(d.terms.size() == 1);
  Word a1a2{{L.index("a1"), 1}, {L.index("a2"), 1}};
  CHECK(d.coeff(a1a2) == std::vector<uint32_t>{1});

  SplitMix64 g(2);
  for (uint32_t p : {3u, 5u})
    for (int m = 1; m <= 3; ++m) {
      DGA Lp = build_lambda_dga(m, p);
      TwistedDGA t = twist_diff(Lp, lambda_rep(Lp, random_tuple(m, 2, p, g)));
      CHECK(check_twisted_d_squared(t));
      for (uint32_t z = 0; z < Lp.size(); ++z)
        if (!Lp.gen(z).invertible) CHECK(t.diff[z].constant_term().is_zero());
    }
}

TEST_CASE("mu_2 on y duals and the unit") {
  SplitMix64 g(3);
  for (int m = 1; m <= 3; ++m) {
    DGA L = build_lambda_dga(m, 5);
    RepEngine E(L);
    Representation r = lambda_rep(L, random_tuple(m, 2, 5, g));
    Mat u = random_mat(2, 2, 5, g), up = random_mat(2, 2, 5, g);
    HomElement A = HomElement::zero(0, 2, 5), B = A, C = A, want = A;
    A.add({DualGen::Y, 1}, up);
    B.add({DualGen::Y, 1}, u);
    C.add({DualGen::Y, 2}, u);
    want.add({DualGen::Y, 1}, -(u * up));
    CHECK(E.mu2(r, r, r, A, B) == want);
    CHECK(E.mu2(r, r, r, A, C).is_zero());
    CHECK(E.mu2(r, r, r, C, A).is_zero());

    HomElement e = E.unit(r);
    CHECK(e.get({DualGen::Y, 1}) == -Mat::identity(2, 5));
    CHECK(e.get({DualGen::Y, 2}) == -Mat::identity(2, 5));
    CHECK(e.coeffs.size() == 2);
    CHECK(E.mu1(r, r, e).is_zero());
  }
}

TEST_CASE("mu_1 squares to zero as matrices") {
  SplitMix64 g(4);
  for (int m = 1; m <= 4; ++m) {
    DGA L = build_lambda_dga(m, 3);
    RepEngine E(L);
    Representation r0 = lambda_rep(L, random_tuple(m, 2, 3, g)), r1 = lambda_rep(L, random_tuple(m, 2, 3, g));
    CHECK((E.mu1_matrix(r0, r1, 1) * E.mu1_matrix(r0, r1, 0)).is_zero());
    auto h = E.hom_cohomology(r0, r1);
    CHECK(h.dims[2] == 0);
  }
}

TEST_CASE("Hom cohomology of the zero tuple with itself") {
  DGA L = build_lambda_dga(2, 2);
  RepEngine E(L);
  Representation r = lambda_rep(L, scalars({0, 0}, 2));
  auto h = E.hom_cohomology(r, r);
  CHECK(h.dims[0] == 2);
  CHECK(h.dims[1] == 2);
  CHECK(h.dims[2] == 0);
}

TEST_CASE("A-infinity relations and the corrupted sign") {
  SplitMix64 g(6);
  DGA L = build_lambda_dga(2, 3);
  RepEngine good(L), bad(L, true);
  HomSpace hs(L, 1);
  std::vector<Representation> r;
  for (int i = 0; i < 4; ++i) r.push_back(lambda_rep(L, random_tuple(2, 1, 3, g)));
  bool bad_fails = false;
  for (int t = 0; t < 4; ++t)
    for (int d1 : hs.degrees())
      for (int d2 : hs.degrees()) {
        HomElement a = hs.from_vec(d1, random_mat(hs.dim(d1), 1, 3, g));
        HomElement b = hs.from_vec(d2, random_mat(hs.dim(d2), 1, 3, g));
        CHECK(good.ainfty_relation({&r[0], &r[1], &r[2]}, {a, b}).is_zero());
        bad_fails = bad_fails || !bad.ainfty_relation({&r[0], &r[1], &r[2]}, {a, b}).is_zero();
        for (int d3 : hs.degrees()) {
          HomElement c = hs.from_vec(d3, random_mat(hs.dim(d3), 1, 3, g));
          CHECK(good.ainfty_relation({&r[0], &r[1], &r[2], &r[3]}, {a, b, c}).is_zero());
        }
      }
  CHECK(bad_fails);
}

TEST_CASE("isomorphism criterion") {
  SplitMix64 g(7);
  for (int m = 1; m <= 4; ++m) {
    DGA L = build_lambda_dga(m, 3);
    auto A = random_tuple(m, 2, 3, g);
    Representation r = lambda_rep(L, A);
    auto self = is_isomorphic(L, r, r, 1u << 16);
    CHECK(self.status == IsoResult::Found);

    Mat M = random_invertible(2, 3, g), Mi = *inverse(M);
    std::vector<Mat> B;
    for (const auto& a : A) B.push_back(Mi * a * M);
    auto res = is_isomorphic(L, r, lambda_rep(L, B), 1u << 16);
    REQUIRE(res.status == IsoResult::Found);
    for (const auto& u : res.witness) CHECK_FALSE(det(u).is_zero());
  }
  // n = 1 over F_2: only u = (1, 1), so distinct tuples are never isomorphic.
  DGA L = build_lambda_dga(2, 2);
  auto res = is_isomorphic(L, lambda_rep(L, scalars({0, 1}, 2)), lambda_rep(L, scalars({1, 0}, 2)), 100);
  CHECK(res.status == IsoResult::NotIsomorphic);
}

TEST_CASE("isomorphism criterion against exhaustive search over F_3") {
  DGA L = build_lambda_dga(2, 3);
  auto reps = enumerate_reps(L, 1, 1000);
  for (const auto& r1 : reps)
    for (const auto& r2 : reps) {
      bool found = false;
      for (int u1 = 1; u1 < 3; ++u1)
        for (int u2 = 1; u2 < 3; ++u2) {
          Mat u[2] = {s(u1, 3), s(u2, 3)};
          bool all = true;
          for (uint32_t z = 0; z < L.size(); ++z) {
            const Generator& gen = L.gen(z);
            if (gen.degree != 0) continue;
            all = all && u[gen.r - 1] * r2.at(z) == r1.at(z) * u[gen.c - 1];
          }
          found = found || all;
        }
      auto res = is_isomorphic(L, r1, r2, 100);
      CHECK((res.status == IsoResult::Found) == found);
    }
}
