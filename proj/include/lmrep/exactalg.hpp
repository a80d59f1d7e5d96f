// Dense linear algebra over prime fields F_p.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace lmrep {

bool is_prime(uint32_t p);

// Accepts p = 2 or an odd prime p <= 2^15; throws std::invalid_argument otherwise.
void require_field(uint32_t p);

namespace fp {
inline uint32_t add(uint32_t a, uint32_t b, uint32_t p) {
  uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline uint32_t sub(uint32_t a, uint32_t b, uint32_t p) { return a >= b ? a - b : a + p - b; }
inline uint32_t mul(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>(static_cast<uint64_t>(a) * b % p);
}
inline uint32_t neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }
uint32_t inv(uint32_t a, uint32_t p);
inline uint32_t reduce(int64_t v, uint32_t p) {
  int64_t r = v % static_cast<int64_t>(p);
  return static_cast<uint32_t>(r < 0 ? r + p : r);
}
inline uint32_t sign(int s, uint32_t p) { return (s % 2 == 0) ? 1u : p - 1; }
}  // namespace fp

class FieldElem {
 public:
  FieldElem(int64_t v, uint32_t p);
  uint32_t value() const { return v_; }
  uint32_t modulus() const { return p_; }
  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem inverse() const;
  bool is_zero() const { return v_ == 0; }
  bool operator==(const FieldElem& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

 private:
  void check(const FieldElem& o) const;
  uint32_t v_;
  uint32_t p_;
};

class Mat {
 public:
  Mat() = default;
  Mat(size_t rows, size_t cols, uint32_t p);

  static Mat zero(size_t rows, size_t cols, uint32_t p) { return Mat(rows, cols, p); }
  static Mat identity(size_t n, uint32_t p);
  static Mat scalar(size_t n, int64_t c, uint32_t p);
  static Mat from_rows(const std::vector<std::vector<int64_t>>& rows, uint32_t p);
  static Mat column(const std::vector<uint32_t>& v, uint32_t p);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  uint32_t modulus() const { return p_; }
  bool square() const { return r_ == c_; }

  uint32_t operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }
  uint32_t& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  FieldElem at(size_t i, size_t j) const { return FieldElem(a_[i * c_ + j], p_); }
  void set(size_t i, size_t j, int64_t v) { a_[i * c_ + j] = fp::reduce(v, p_); }
  const std::vector<uint32_t>& data() const { return a_; }
  std::vector<uint32_t>& data() { return a_; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat operator*(const Mat& o) const;
  Mat operator*(uint32_t c) const;
  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }
  bool operator<(const Mat& o) const;

  Mat transpose() const;
  Mat block(size_t r0, size_t c0, size_t nr, size_t nc) const;
  void set_block(size_t r0, size_t c0, const Mat& b);
  Mat col(size_t j) const { return block(0, j, r_, 1); }
  bool is_zero() const;
  // Row-major entries as a column vector of length rows*cols.
  Mat vec() const;
  static Mat unvec(const Mat& v, size_t rows, size_t cols);

  std::string str() const;

 private:
  void same_shape(const Mat& o) const;
  size_t r_ = 0, c_ = 0;
  uint32_t p_ = 2;
  std::vector<uint32_t> a_;
};

std::ostream& operator<<(std::ostream& os, const Mat& m);

Mat hstack(const std::vector<Mat>& ms);
Mat vstack(const std::vector<Mat>& ms);
Mat block_diag(const std::vector<Mat>& ms);

// Reduced row echelon form with first-nonzero pivoting; pivot columns returned in order.
Mat rref(const Mat& m, std::vector<size_t>* pivots = nullptr);

struct RankKernel {
  size_t rank = 0;
  std::vector<Mat> kernel;  // column vectors; stacked they form a reduced column echelon matrix
};

RankKernel rank_kernel(const Mat& m);
size_t rank(const Mat& m);
// Basis of the kernel as columns of one matrix (cols x dim).
Mat kernel_matrix(const Mat& m);
// Standard basis vectors e_i spanning a complement of the column space; these are the canonical
// coset representatives for F_p^rows / im(m).
std::vector<Mat> cokernel(const Mat& m);
FieldElem det(const Mat& m);
std::optional<Mat> inverse(const Mat& m);
std::optional<Mat> solve(const Mat& a, const Mat& b);

// A linear subspace of F_p^n held in reduced column echelon form.
class Subspace {
 public:
  Subspace(size_t ambient, uint32_t p);
  static Subspace span(const Mat& columns);
  static Subspace span(const std::vector<Mat>& vectors, size_t ambient, uint32_t p);

  size_t ambient() const { return n_; }
  size_t dim() const { return pivots_.size(); }
  uint32_t modulus() const { return p_; }
  const Mat& basis() const { return basis_; }  // ambient x dim
  const std::vector<size_t>& pivots() const { return pivots_; }

  // Canonical representative of v + W: the pivot coordinates are cleared.
  Mat reduce(const Mat& v) const;
  bool contains(const Mat& v) const { return reduce(v).is_zero(); }
  // Coordinates of v in the stored basis, absent if v lies outside.
  std::optional<Mat> coords(const Mat& v) const;

 private:
  size_t n_;
  uint32_t p_;
  Mat basis_;
  std::vector<size_t> pivots_;
};

// Canonical basis of span(cycles) / boundaries, as reduced representatives (columns).
Mat quotient_basis(const Mat& cycles, const Subspace& boundaries);

}  // namespace lmrep
