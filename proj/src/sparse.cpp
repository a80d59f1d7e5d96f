#include "lmrep/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace lmrep {

void SparseMat::add(size_t i, size_t j, uint32_t v) {
  if (i >= rows || j >= cols) throw std::out_of_range("sparse entry out of range");
  if (v % p != 0) col[j].push_back({i, v % p});
}

void SparseMat::normalize() {
  for (auto& c : col) {
    std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Column out;
    for (const auto& [r, v] : c) {
      if (!out.empty() && out.back().first == r)
        out.back().second = fp::add(out.back().second, v, p);
      else
        out.push_back({r, v});
      if (out.back().second == 0) out.pop_back();
    }
    c = std::move(out);
  }
}

bool SparseMat::is_zero() const {
  return std::all_of(col.begin(), col.end(), [](const Column& c) { return c.empty(); });
}

Mat SparseMat::dense() const {
  Mat m(rows, cols, p);
  for (size_t j = 0; j < cols; ++j)
    for (const auto& [r, v] : col[j]) m(r, j) = v;
  return m;
}

SparseMat SparseMat::from_dense(const Mat& m) {
  SparseMat s(m.rows(), m.cols(), m.modulus());
  for (size_t j = 0; j < m.cols(); ++j)
    for (size_t i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) s.col[j].push_back({i, m(i, j)});
  return s;
}

SparseMat operator*(const SparseMat& a, const SparseMat& b) {
  if (a.cols != b.rows || a.p != b.p) throw std::invalid_argument("sparse shape mismatch");
  SparseMat c(a.rows, b.cols, a.p);
  for (size_t j = 0; j < b.cols; ++j) {
    for (const auto& [k, v] : b.col[j])
      for (const auto& [i, w] : a.col[k]) c.col[j].push_back({i, fp::mul(v, w, a.p)});
  }
  c.normalize();
  return c;
}

namespace {

// x <- x - c * y, both sorted.
SparseMat::Column axpy(const SparseMat::Column& x, uint32_t c, const SparseMat::Column& y,
                       uint32_t p) {
  SparseMat::Column out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i++]);
    } else {
      uint32_t t = fp::neg(fp::mul(c, y[j].second, p), p);
      size_t r = y[j].first;
      if (i < x.size() && x[i].first == r) t = fp::add(t, x[i++].second, p);
      ++j;
      if (t != 0) out.push_back({r, t});
    }
  }
  return out;
}

size_t rank_of_columns(std::vector<SparseMat::Column> cols, uint32_t p) {
  std::unordered_map<size_t, SparseMat::Column> pivot;  // leading row -> monic column
  size_t r = 0;
  for (auto& c : cols) {
    while (!c.empty()) {
      auto it = pivot.find(c.front().first);
      if (it == pivot.end()) break;
      c = axpy(c, c.front().second, it->second, p);
    }
    if (c.empty()) continue;
    uint32_t s = fp::inv(c.front().second, p);
    for (auto& e : c) e.second = fp::mul(e.second, s, p);
    pivot.emplace(c.front().first, std::move(c));
    ++r;
  }
  return r;
}

}  // namespace

size_t sparse_rank(const SparseMat& a) { return rank_of_columns(a.col, a.p); }

size_t sparse_rank(const SparseMat& a, const std::vector<size_t>& rows,
                   const std::vector<size_t>& cols) {
  std::unordered_map<size_t, size_t> keep;
  for (size_t i = 0; i < rows.size(); ++i) keep.emplace(rows[i], i);
  std::vector<SparseMat::Column> sub;
  for (size_t j : cols) {
    SparseMat::Column c;
    for (const auto& [r, v] : a.col.at(j)) {
      auto it = keep.find(r);
      if (it != keep.end()) c.push_back({it->second, v});
    }
    std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    sub.push_back(std::move(c));
  }
  return rank_of_columns(std::move(sub), a.p);
}

}  // namespace lmrep
