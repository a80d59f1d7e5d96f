#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "lmrep/exactalg.hpp"
#include "lmrep/rng.hpp"
#include "lmrep/sparse.hpp"

using namespace lmrep;

namespace {

// Number of vectors v in F_p^cols with A v = 0, by enumeration.
size_t brute_kernel_size(const Mat& A) {
  size_t total = 1, p = A.modulus();
  for (size_t i = 0; i < A.cols(); ++i) total *= p;
  size_t count = 0;
  for (size_t c = 0; c < total; ++c) {
    Mat v(A.cols(), 1, A.modulus());
    size_t x = c;
    for (size_t i = 0; i < A.cols(); ++i, x /= p) v.data()[i] = static_cast<uint32_t>(x % p);
    if ((A * v).is_zero()) ++count;
  }
  return count;
}

size_t log_p(size_t v, size_t p) {
  size_t e = 0;
  while (v > 1) v /= p, ++e;
  return e;
}

// Leibniz expansion.
int64_t brute_det(const Mat& A) {
  size_t n = A.rows();
  int64_t p = A.modulus();
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int64_t total = 0;
  do {
    int inversions = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    int64_t term = inversions % 2 ? p - 1 : 1;
    for (size_t i = 0; i < n; ++i) term = term * A.at(i, perm[i]).value() % p;
    total = (total + term) % p;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

}  // namespace

TEST_CASE("rank and kernel on fixed matrices") {
  auto I = Mat::identity(3, 2);
  auto rk = rank_kernel(I);
  CHECK(rk.rank == 3);
  CHECK(rk.kernel.empty());

  auto Z = Mat::zero(2, 3, 5);
  CHECK(rank_kernel(Z).rank == 0);
  CHECK(rank_kernel(Z).kernel.size() == 3);

  auto A = Mat::from_rows({{1, 2}, {2, 4}}, 5);
  CHECK(rank(A) == 1);
  CHECK(kernel_matrix(A).cols() == 1);
  CHECK((A * kernel_matrix(A)).is_zero());
}

TEST_CASE("rank-nullity and kernel size match enumeration") {
  SplitMix64 g(11);
  for (uint32_t p : {2u, 3u})
    for (int t = 0; t < 40; ++t) {
      size_t r = 1 + g.below(3), c = 1 + g.below(4);
      Mat A = random_mat(r, c, p, g);
      Mat K = kernel_matrix(A);
      CHECK(rank(A) + K.cols() == c);
      CHECK((A * K).is_zero());
      CHECK(rank(K) == K.cols());
      CHECK(K.cols() == log_p(brute_kernel_size(A), p));
    }
}

TEST_CASE("determinant") {
  CHECK(det(Mat::identity(4, 7)).value() == 1);
  CHECK(det(Mat::from_rows({{1, 2}, {2, 4}}, 5)).is_zero());
  CHECK(det(Mat::from_rows({{1, 2}, {3, 4}}, 7)).value() == 5);
  CHECK_THROWS(det(Mat::zero(2, 3, 3)));
  SplitMix64 g(5);
  for (uint32_t p : {2u, 3u, 5u})
    for (int t = 0; t < 30; ++t) {
      size_t n = 1 + g.below(4);
      Mat A = random_mat(n, n, p, g), B = random_mat(n, n, p, g);
      CHECK(static_cast<int64_t>(det(A).value()) == brute_det(A));
      CHECK(det(A * B) == det(A) * det(B));
      CHECK(det(A).is_zero() == (rank(A) < n));
    }
}

TEST_CASE("inverse and solve") {
  CHECK(*inverse(Mat::identity(3, 3)) == Mat::identity(3, 3));
  CHECK_FALSE(inverse(Mat::zero(2, 2, 5)).has_value());
  CHECK(*inverse(Mat::from_rows({{0, 1}, {1, 1}}, 2)) == Mat::from_rows({{1, 1}, {1, 0}}, 2));
  CHECK_THROWS(inverse(Mat::zero(2, 3, 3)));

  Mat B = Mat::from_rows({{1, 2}, {0, 4}}, 5);
  CHECK(*solve(Mat::identity(2, 5), B) == B);
  CHECK_FALSE(solve(Mat::zero(2, 2, 5), B).has_value());
  CHECK(*solve(Mat::from_rows({{1, 1}, {0, 1}}, 3), Mat::identity(2, 3)) ==
        Mat::from_rows({{1, 2}, {0, 1}}, 3));
  CHECK_THROWS(solve(Mat::identity(2, 3), Mat::identity(3, 3)));

  SplitMix64 g(9);
  for (int t = 0; t < 30; ++t) {
    Mat A = random_mat(3, 3, 3, g);
    auto Ai = inverse(A);
    CHECK(Ai.has_value() == !det(A).is_zero());
    if (Ai) {
      CHECK(A * *Ai == Mat::identity(3, 3));
      CHECK(*Ai * A == Mat::identity(3, 3));
    }
  }
}

TEST_CASE("field arithmetic") {
  CHECK(is_prime(2));
  CHECK(is_prime(32749));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  for (uint32_t a = 1; a < 7; ++a) CHECK((FieldElem(a, 7) * FieldElem(a, 7).inverse()).value() == 1);
  CHECK(FieldElem(-1, 5).value() == 4);
  CHECK_THROWS(FieldElem(1, 3) + FieldElem(1, 5));
}

TEST_CASE("subspace representatives are canonical") {
  SplitMix64 g(3);
  for (int t = 0; t < 20; ++t) {
    Mat A = random_mat(5, 2, 3, g);
    Mat M = random_invertible(2, 3, g);
    Subspace W1 = Subspace::span(A), W2 = Subspace::span(A * M);
    Mat v = random_mat(5, 1, 3, g);
    CHECK(W1.reduce(v) == W2.reduce(v));
    CHECK(W1.contains(v - W1.reduce(v)));
    CHECK(W1.reduce(v + A * random_mat(2, 1, 3, g)) == W1.reduce(v));
  }
}

TEST_CASE("sparse rank agrees with dense rank") {
  SplitMix64 g(21);
  for (uint32_t p : {2u, 3u, 5u})
    for (int t = 0; t < 30; ++t) {
      Mat A = random_mat(1 + g.below(8), 1 + g.below(8), p, g);
      for (auto& x : A.data())
        if (g.below(3) != 0) x = 0;
      CHECK(sparse_rank(SparseMat::from_dense(A)) == rank(A));
      Mat B = random_mat(A.cols(), 4, p, g);
      CHECK((SparseMat::from_dense(A) * SparseMat::from_dense(B)).dense() == A * B);
    }
}
