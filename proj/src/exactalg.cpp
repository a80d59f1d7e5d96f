#include "lmrep/exactalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lmrep {

bool is_prime(uint32_t p) {
  if (p < 2) return false;
  for (uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_field(uint32_t p) {
  if (!is_prime(p) || p > (1u << 15))
    throw std::invalid_argument("field modulus must be 2 or an odd prime <= 32768, got " +
                                std::to_string(p));
}

uint32_t fp::inv(uint32_t a, uint32_t p) {
  if (a % p == 0) throw std::domain_error("division by zero in F_p");
  // Fermat: a^(p-2)
  uint64_t r = 1, b = a % p;
  uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<uint32_t>(r);
}

// ---- FieldElem ----

FieldElem::FieldElem(int64_t v, uint32_t p) : v_(fp::reduce(v, p)), p_(p) {}

void FieldElem::check(const FieldElem& o) const {
  if (p_ != o.p_) throw std::invalid_argument("field mismatch");
}
FieldElem FieldElem::operator+(const FieldElem& o) const {
  check(o);
  return FieldElem(fp::add(v_, o.v_, p_), p_);
}
FieldElem FieldElem::operator-(const FieldElem& o) const {
  check(o);
  return FieldElem(fp::sub(v_, o.v_, p_), p_);
}
FieldElem FieldElem::operator*(const FieldElem& o) const {
  check(o);
  return FieldElem(fp::mul(v_, o.v_, p_), p_);
}
FieldElem FieldElem::operator/(const FieldElem& o) const { return *this * o.inverse(); }
FieldElem FieldElem::operator-() const { return FieldElem(fp::neg(v_, p_), p_); }
FieldElem FieldElem::inverse() const { return FieldElem(fp::inv(v_, p_), p_); }

// ---- Mat ----

Mat::Mat(size_t rows, size_t cols, uint32_t p) : r_(rows), c_(cols), p_(p), a_(rows * cols, 0) {}

Mat Mat::identity(size_t n, uint32_t p) {
  Mat m(n, n, p);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
  return m;
}

Mat Mat::scalar(size_t n, int64_t c, uint32_t p) {
  Mat m(n, n, p);
  uint32_t v = fp::reduce(c, p);
  for (size_t i = 0; i < n; ++i) m(i, i) = v;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<int64_t>>& rows, uint32_t p) {
  size_t r = rows.size(), c = r ? rows[0].size() : 0;
  Mat m(r, c, p);
  for (size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
    for (size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Mat Mat::column(const std::vector<uint32_t>& v, uint32_t p) {
  Mat m(v.size(), 1, p);
  for (size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i] % p;
  return m;
}

void Mat::same_shape(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_ || p_ != o.p_) throw std::invalid_argument("shape/field mismatch");
}

Mat Mat::operator+(const Mat& o) const {
  Mat m = *this;
  m += o;
  return m;
}
Mat Mat::operator-(const Mat& o) const {
  Mat m = *this;
  m -= o;
  return m;
}
Mat& Mat::operator+=(const Mat& o) {
  same_shape(o);
  for (size_t k = 0; k < a_.size(); ++k) a_[k] = fp::add(a_[k], o.a_[k], p_);
  return *this;
}
Mat& Mat::operator-=(const Mat& o) {
  same_shape(o);
  for (size_t k = 0; k < a_.size(); ++k) a_[k] = fp::sub(a_[k], o.a_[k], p_);
  return *this;
}
Mat Mat::operator-() const {
  Mat m = *this;
  for (auto& v : m.a_) v = fp::neg(v, p_);
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_ || p_ != o.p_) throw std::invalid_argument("product shape/field mismatch");
  Mat m(r_, o.c_, p_);
  std::vector<uint64_t> acc(o.c_);
  for (size_t i = 0; i < r_; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (size_t k = 0; k < c_; ++k) {
      uint64_t a = a_[i * c_ + k];
      if (!a) continue;
      const uint32_t* row = &o.a_[k * o.c_];
      for (size_t j = 0; j < o.c_; ++j) acc[j] = (acc[j] + a * row[j]) % p_;
    }
    for (size_t j = 0; j < o.c_; ++j) m.a_[i * o.c_ + j] = static_cast<uint32_t>(acc[j]);
  }
  return m;
}

Mat Mat::operator*(uint32_t c) const {
  Mat m = *this;
  c %= p_;
  for (auto& v : m.a_) v = fp::mul(v, c, p_);
  return m;
}

bool Mat::operator==(const Mat& o) const {
  return r_ == o.r_ && c_ == o.c_ && p_ == o.p_ && a_ == o.a_;
}

bool Mat::operator<(const Mat& o) const {
  if (r_ != o.r_) return r_ < o.r_;
  if (c_ != o.c_) return c_ < o.c_;
  return a_ < o.a_;
}

Mat Mat::transpose() const {
  Mat m(c_, r_, p_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Mat Mat::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
  if (r0 + nr > r_ || c0 + nc > c_) throw std::out_of_range("block out of range");
  Mat m(nr, nc, p_);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void Mat::set_block(size_t r0, size_t c0, const Mat& b) {
  if (r0 + b.r_ > r_ || c0 + b.c_ > c_ || b.p_ != p_)
    throw std::out_of_range("set_block out of range");
  for (size_t i = 0; i < b.r_; ++i)
    for (size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](uint32_t v) { return v == 0; });
}

Mat Mat::vec() const {
  Mat v(r_ * c_, 1, p_);
  v.a_ = a_;
  return v;
}

Mat Mat::unvec(const Mat& v, size_t rows, size_t cols) {
  if (v.rows() * v.cols() != rows * cols) throw std::invalid_argument("unvec size mismatch");
  Mat m(rows, cols, v.p_);
  m.a_ = v.a_;
  return m;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < r_; ++i) {
    os << (i ? ",[" : "[");
    for (size_t j = 0; j < c_; ++j) os << (j ? "," : "") << (*this)(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Mat& m) { return os << m.str(); }

Mat hstack(const std::vector<Mat>& ms) {
  if (ms.empty()) throw std::invalid_argument("hstack of nothing");
  size_t r = ms[0].rows(), c = 0;
  for (const auto& m : ms) {
    if (m.rows() != r) throw std::invalid_argument("hstack row mismatch");
    c += m.cols();
  }
  Mat out(r, c, ms[0].modulus());
  size_t off = 0;
  for (const auto& m : ms) {
    out.set_block(0, off, m);
    off += m.cols();
  }
  return out;
}

Mat vstack(const std::vector<Mat>& ms) {
  if (ms.empty()) throw std::invalid_argument("vstack of nothing");
  size_t c = ms[0].cols(), r = 0;
  for (const auto& m : ms) {
    if (m.cols() != c) throw std::invalid_argument("vstack col mismatch");
    r += m.rows();
  }
  Mat out(r, c, ms[0].modulus());
  size_t off = 0;
  for (const auto& m : ms) {
    out.set_block(off, 0, m);
    off += m.rows();
  }
  return out;
}

Mat block_diag(const std::vector<Mat>& ms) {
  if (ms.empty()) throw std::invalid_argument("block_diag of nothing");
  size_t r = 0, c = 0;
  for (const auto& m : ms) r += m.rows(), c += m.cols();
  Mat out(r, c, ms[0].modulus());
  size_t ro = 0, co = 0;
  for (const auto& m : ms) {
    out.set_block(ro, co, m);
    ro += m.rows();
    co += m.cols();
  }
  return out;
}

// ---- elimination ----

namespace {

// In-place elimination on a row-major r x c array. Pivot rows are normalized to 1. With
// `reduced`, entries above pivots are cleared too. Rows with a zero in the pivot column are
// skipped and only columns from the pivot on are touched, so banded inputs stay cheap.
// If `det` is given it receives the determinant factor (sign of swaps times pivots).
std::vector<size_t> eliminate(std::vector<uint32_t>& a, size_t r, size_t c, uint32_t p,
                              bool reduced, uint32_t* det = nullptr) {
  std::vector<size_t> piv;
  uint32_t d = 1 % p;
  size_t row = 0;
  for (size_t col = 0; col < c && row < r; ++col) {
    size_t sel = r;
    for (size_t i = row; i < r; ++i)
      if (a[i * c + col]) {
        sel = i;
        break;
      }
    if (sel == r) continue;
    if (sel != row) {
      for (size_t j = col; j < c; ++j) std::swap(a[sel * c + j], a[row * c + j]);
      d = fp::neg(d, p);
    }
    uint32_t* prow = &a[row * c];
    d = fp::mul(d, prow[col], p);
    uint32_t iv = fp::inv(prow[col], p);
    for (size_t j = col; j < c; ++j) prow[j] = fp::mul(prow[j], iv, p);
    for (size_t i = reduced ? 0 : row + 1; i < r; ++i) {
      if (i == row) continue;
      uint32_t* irow = &a[i * c];
      uint32_t f = irow[col];
      if (!f) continue;
      uint64_t nf = p - f;
      for (size_t j = col; j < c; ++j)
        if (prow[j]) irow[j] = static_cast<uint32_t>((irow[j] + nf * prow[j]) % p);
    }
    piv.push_back(col);
    ++row;
  }
  if (det) *det = d;
  return piv;
}

}  // namespace

Mat rref(const Mat& m, std::vector<size_t>* pivots) {
  Mat out = m;
  auto piv = eliminate(out.data(), m.rows(), m.cols(), m.modulus(), true);
  if (pivots) *pivots = piv;
  return out;
}

size_t rank(const Mat& m) {
  std::vector<uint32_t> a = m.data();
  return eliminate(a, m.rows(), m.cols(), m.modulus(), false).size();
}

Mat kernel_matrix(const Mat& m) {
  std::vector<size_t> piv;
  Mat r = rref(m, &piv);
  size_t c = m.cols();
  uint32_t p = m.modulus();
  std::vector<bool> is_piv(c, false);
  for (auto j : piv) is_piv[j] = true;
  std::vector<size_t> free;
  for (size_t j = 0; j < c; ++j)
    if (!is_piv[j]) free.push_back(j);
  // Nullspace vectors as rows, then bring to canonical form.
  Mat rows(free.size(), c, p);
  for (size_t k = 0; k < free.size(); ++k) {
    size_t f = free[k];
    rows(k, f) = 1;
    for (size_t i = 0; i < piv.size(); ++i) rows(k, piv[i]) = fp::neg(r(i, f), p);
  }
  Mat canon = rref(rows);
  return canon.transpose();
}

RankKernel rank_kernel(const Mat& m) {
  RankKernel rk;
  Mat k = kernel_matrix(m);
  rk.rank = m.cols() - k.cols();
  for (size_t j = 0; j < k.cols(); ++j) rk.kernel.push_back(k.col(j));
  return rk;
}

std::vector<Mat> cokernel(const Mat& m) {
  std::vector<size_t> piv;
  rref(m.transpose(), &piv);
  std::vector<bool> is_piv(m.rows(), false);
  for (auto j : piv) is_piv[j] = true;
  std::vector<Mat> out;
  for (size_t i = 0; i < m.rows(); ++i)
    if (!is_piv[i]) {
      Mat e(m.rows(), 1, m.modulus());
      e(i, 0) = 1;
      out.push_back(e);
    }
  return out;
}

FieldElem det(const Mat& m) {
  if (!m.square()) throw std::invalid_argument("det of non-square matrix");
  uint32_t p = m.modulus();
  size_t n = m.rows();
  std::vector<uint32_t> a = m.data();
  uint32_t d = 0;
  auto piv = eliminate(a, n, n, p, false, &d);
  if (piv.size() < n) return FieldElem(0, p);
  return FieldElem(d, p);
}

std::optional<Mat> inverse(const Mat& m) {
  if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
  size_t n = m.rows();
  Mat aug = hstack({m, Mat::identity(n, m.modulus())});
  std::vector<size_t> piv;
  Mat r = rref(aug, &piv);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  return r.block(0, n, n, n);
}

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.modulus() != b.modulus())
    throw std::invalid_argument("solve shape mismatch");
  size_t n = a.cols(), k = b.cols();
  Mat aug = hstack({a, b});
  std::vector<size_t> piv;
  Mat r = rref(aug, &piv);
  Mat x(n, k, a.modulus());
  for (size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= n) return std::nullopt;
    for (size_t j = 0; j < k; ++j) x(piv[i], j) = r(i, n + j);
  }
  return x;
}

// ---- Subspace ----

Subspace::Subspace(size_t ambient, uint32_t p) : n_(ambient), p_(p), basis_(ambient, 0, p) {}

Subspace Subspace::span(const Mat& columns) {
  Subspace s(columns.rows(), columns.modulus());
  std::vector<size_t> piv;
  Mat r = rref(columns.transpose(), &piv);
  s.pivots_ = piv;
  s.basis_ = r.block(0, 0, piv.size(), columns.rows()).transpose();
  return s;
}

Subspace Subspace::span(const std::vector<Mat>& vectors, size_t ambient, uint32_t p) {
  if (vectors.empty()) return Subspace(ambient, p);
  return span(hstack(vectors));
}

Mat Subspace::reduce(const Mat& v) const {
  if (v.rows() != n_ || v.cols() != 1) throw std::invalid_argument("reduce: not a vector");
  Mat out = v;
  for (size_t k = 0; k < pivots_.size(); ++k) {
    uint32_t c = out(pivots_[k], 0);
    if (!c) continue;
    uint32_t nc = fp::neg(c, p_);
    for (size_t i = 0; i < n_; ++i)
      if (basis_(i, k)) out(i, 0) = fp::add(out(i, 0), fp::mul(nc, basis_(i, k), p_), p_);
  }
  return out;
}

std::optional<Mat> Subspace::coords(const Mat& v) const {
  Mat c(pivots_.size(), 1, p_);
  for (size_t k = 0; k < pivots_.size(); ++k) c(k, 0) = v(pivots_[k], 0);
  if (basis_ * c != v) return std::nullopt;
  return c;
}

Mat quotient_basis(const Mat& cycles, const Subspace& boundaries) {
  size_t n = boundaries.ambient();
  if (cycles.cols() == 0) return Mat(n, 0, boundaries.modulus());
  std::vector<Mat> red;
  for (size_t j = 0; j < cycles.cols(); ++j) red.push_back(boundaries.reduce(cycles.col(j)));
  return Subspace::span(hstack(red)).basis();
}

}  // namespace lmrep
