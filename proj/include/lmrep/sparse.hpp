// Column-sparse matrices over F_p for the large, banded Čech differentials.
#pragma once

#include <utility>
#include <vector>

#include "lmrep/exactalg.hpp"

namespace lmrep {

struct SparseMat {
  using Column = std::vector<std::pair<size_t, uint32_t>>;  // sorted by row, no zeros

  size_t rows = 0, cols = 0;
  uint32_t p = 2;
  std::vector<Column> col;

  SparseMat() = default;
  SparseMat(size_t r, size_t c, uint32_t prime) : rows(r), cols(c), p(prime), col(c) {}

  // Adds v to entry (i, j); columns must be normalized afterwards.
  void add(size_t i, size_t j, uint32_t v);
  void normalize();
  bool is_zero() const;
  Mat dense() const;
  static SparseMat from_dense(const Mat& m);
};

SparseMat operator*(const SparseMat& a, const SparseMat& b);
// Incremental echelon elimination keyed on the leading row; fill-in stays inside the band when
// rows and columns follow a common spatial order.
size_t sparse_rank(const SparseMat& a);
// Rank of the submatrix on the given rows and columns.
size_t sparse_rank(const SparseMat& a, const std::vector<size_t>& rows,
                   const std::vector<size_t>& cols);

}  // namespace lmrep
