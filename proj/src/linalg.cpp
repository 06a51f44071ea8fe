#include "clalg/linalg.hpp"

namespace clalg {

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(DenseMatrix& A, std::size_t ncols, const Zp& F) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < A.size(); ++col) {
    std::size_t p = row;
    while (p < A.size() && A[p][col] == 0) ++p;
    if (p == A.size()) continue;
    std::swap(A[p], A[row]);
    const auto inv = F.inv(A[row][col]);
    for (auto& x : A[row]) x = F.mul(x, inv);
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][col] == 0) continue;
      const auto f = A[r][col];
      for (std::size_t c = col; c < ncols; ++c)
        if (A[row][c]) A[r][c] = F.sub(A[r][c], F.mul(f, A[row][c]));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<std::uint32_t>> nullspace(DenseMatrix A, std::size_t ncols, const Zp& F) {
  const auto pivots = rref(A, ncols, F);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(ncols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(A[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(DenseMatrix A, std::size_t ncols, const Zp& F) { return rref(A, ncols, F).size(); }

}  // namespace clalg
