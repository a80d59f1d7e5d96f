#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "lmrep/freedga.hpp"
#include "lmrep/rng.hpp"

using namespace lmrep;

namespace {

// Noncommutative polynomials in a_1..a_m as maps from index strings to integers mod p, built
// straight from the recurrences.
using Poly = std::map<std::vector<int>, int64_t>;

Poly mul(const Poly& f, const Poly& g, int64_t p) {
  Poly out;
  for (const auto& [a, x] : f)
    for (const auto& [b, y] : g) {
      auto w = a;
      w.insert(w.end(), b.begin(), b.end());
      out[w] = (out[w] + x * y) % p;
    }
  return out;
}

Poly add(Poly f, const Poly& g, int64_t p, int64_t scale = 1) {
  for (const auto& [w, c] : g) f[w] = ((f[w] + scale * c) % p + p) % p;
  std::erase_if(f, [](const auto& kv) { return kv.second == 0; });
  return f;
}

Poly letter(int j) { return {{{j}, 1}}; }

// P_k = P_{k-1} a_k + P_{k-2} with P_0 = 1, P_{-1} = 0.
Poly oracle_p(int m, int64_t p) {
  Poly prev, cur{{{}, 1}};
  for (int k = 1; k <= m; ++k) {
    Poly next = add(mul(cur, letter(k), p), prev, p);
    prev = cur, cur = next;
  }
  return cur;
}

// Q_k = -a_k Q_{k-1} + Q_{k-2} with Q_0 = 1, Q_{-1} = 0.
Poly oracle_q(int m, int64_t p) {
  Poly prev, cur{{{}, 1}};
  for (int k = 1; k <= m; ++k) {
    Poly next = add(prev, mul(letter(k), cur, p), p, -1);
    prev = cur, cur = next;
  }
  return cur;
}

Poly from_free(const FreePoly& f) {
  Poly out;
  for (const auto& [w, c] : f.terms()) {
    std::vector<int> idx;
    for (const auto& l : w) idx.push_back(static_cast<int>(l.gen) + 1);
    out[idx] = c;
  }
  return out;
}

FreePoly gen(const DGA& d, const std::string& name, int exp = 1) {
  return FreePoly::letter(d.index(name), exp, d.modulus());
}

}  // namespace

TEST_CASE("multiplication and word reduction") {
  DGA L = build_lambda_dga(3, 2);
  FreePoly one = FreePoly::constant(1, 2);
  FreePoly f = gen(L, "a1") * gen(L, "b2") + gen(L, "t1", -1);
  CHECK(one * f == f);
  CHECK(gen(L, "t1") * gen(L, "t1", -1) == one);
  CHECK(gen(L, "t1", -1) * gen(L, "t1") == one);
  CHECK((gen(L, "a1") + gen(L, "a3")) * gen(L, "a2") ==
        gen(L, "a1") * gen(L, "a2") + gen(L, "a3") * gen(L, "a2"));
  CHECK(L.format((gen(L, "a1") + gen(L, "a3")) * gen(L, "a2")) == "a1 a2 + a3 a2");
}

TEST_CASE("reduction is confluent under reassociation") {
  DGA L = build_lambda_dga(2, 3);
  SplitMix64 g(4);
  std::vector<FreePoly> letters{gen(L, "t1"), gen(L, "t1", -1), gen(L, "t2"),
                                gen(L, "t2", -1), gen(L, "a1"),    gen(L, "b1")};
  for (int t = 0; t < 200; ++t) {
    FreePoly x = letters[g.below(6)], y = letters[g.below(6)], z = letters[g.below(6)];
    FreePoly xyz = (x * y) * z;
    CHECK(xyz == x * (y * z));
    for (const auto& [w, c] : xyz.terms()) CHECK(is_reduced(w));
  }
}

TEST_CASE("Leibniz rule") {
  DGA L = build_lambda_dga(2, 3);
  FreePoly b1 = gen(L, "b1"), b2 = gen(L, "b2"), a1 = gen(L, "a1");
  CHECK(apply_diff(L, FreePoly::constant(1, 3)).is_zero());
  CHECK(apply_diff(L, b1 * b2) == apply_diff(L, b1) * b2 - b1 * apply_diff(L, b2));
  CHECK(apply_diff(L, b1 * a1) == apply_diff(L, b1) * a1);
  CHECK_THROWS(apply_diff(L, b1 + a1));

  DGA L2 = build_lambda_dga(2, 2);
  FreePoly want = (gen(L2, "t1", -1) + FreePoly::constant(1, 2) + gen(L2, "a1") * gen(L2, "a2")) *
                  gen(L2, "a1");
  CHECK(apply_diff(L2, gen(L2, "b1") * gen(L2, "a1")) == want);
}

TEST_CASE("P and Q polynomials") {
  CHECK(pq_polynomial(0, PQ::P, 3) == FreePoly::constant(1, 3));
  CHECK(from_free(pq_polynomial(2, PQ::P, 3)) == Poly{{{}, 1}, {{1, 2}, 1}});
  CHECK(from_free(pq_polynomial(3, PQ::Q, 5)) == Poly{{{1}, 4}, {{3}, 4}, {{3, 2, 1}, 4}});
  for (int m = 0; m <= 6; ++m)
    for (int64_t p : {2, 3, 5}) {
      CHECK(from_free(pq_polynomial(m, PQ::P, p)) == oracle_p(m, p));
      CHECK(from_free(pq_polynomial(m, PQ::Q, p)) == oracle_q(m, p));
    }
}

TEST_CASE("Lambda_m differentials") {
  DGA L2 = build_lambda_dga(2, 2);
  CHECK(L2.format(L2.diff(L2.index("b1"))) == "t1^-1 + 1 + a1 a2");
  DGA L3 = build_lambda_dga(3, 3);
  CHECK(L3.format(L3.diff(L3.index("b2"))) == "t2 - a1 - a3 - a3 a2 a1");
  for (int m = 1; m <= 4; ++m) {
    DGA L = build_lambda_dga(m, 5);
    for (int j = 1; j <= m; ++j) CHECK(L.diff(L.index("a" + std::to_string(j))).is_zero());
    CHECK(L.diff(L.index("t1")).is_zero());
    CHECK(check_d_squared(L));
    CHECK(check_gradings(L));
    CHECK(L.base_points() == 2);
  }
  CHECK_THROWS(build_lambda_dga(0, 2));
}

TEST_CASE("k-copies") {
  DGA L = build_lambda_dga(2, 3);
  KCopy c3 = kcopy_dga(L, 3);
  const DGA& d = c3.dga;
  CHECK(d.diff(d.index("y1^{1,3}")) == gen(d, "y1^{1,2}") * gen(d, "y1^{2,3}"));
  CHECK(d.gen(d.index("x1^{1,2}")).degree == 0);
  CHECK(d.gen(d.index("y1^{1,2}")).degree == -1);
  for (int m = 1; m <= 3; ++m)
    for (int k = 1; k <= 3; ++k) {
      KCopy c = kcopy_dga(build_lambda_dga(m, 3), k);
      CHECK(check_d_squared(c.dga));
      CHECK(check_gradings(c.dga));
    }
  // The 1-copy is the link itself.
  KCopy c1 = kcopy_dga(L, 1);
  CHECK(c1.dga.size() == L.size());
  for (uint32_t g = 0; g < L.size(); ++g)
    CHECK(c1.dga.format(c1.dga.diff(g)).find('x') == std::string::npos);
}

TEST_CASE("a broken differential is detected") {
  // e in degree 2 with d e = b1 has d^2 e = d b1 != 0.
  std::vector<Generator> gens{{"b1", 1, false, 1, 1}, {"e", 2, false, 1, 1}, {"t1", 0, true, 1, 1}};
  DGA bad(3, gens);
  bad.set_diff(0, FreePoly::letter(2, -1, 3) + FreePoly::constant(1, 3));
  bad.set_diff(1, FreePoly::letter(0, 1, 3));
  CHECK_FALSE(check_d_squared(bad));
  bad.set_diff(1, FreePoly(3));
  CHECK(check_d_squared(bad));
}
