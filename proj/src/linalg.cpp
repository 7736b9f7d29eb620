#include "hcx/linalg.hpp"

#include <utility>

#include "hcx/error.hpp"

namespace hcx {

RowEchelon reduced_row_echelon(RMatrix m, std::size_t ncols) {
  for (const auto& r : m) {
    if (r.dim() != ncols) throw Error(ErrorCode::DimensionMismatch, "matrix row has wrong length");
  }
  RowEchelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][col].is_zero()) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[row], m[piv]);
    const Rat inv = Rat(1) / m[row][col];
    m[row] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Rat f = m[r][col];
      for (std::size_t c = col; c < ncols; ++c) {
        if (!m[row][c].is_zero()) m[r][c] -= f * m[row][c];
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  out.rows = std::move(m);
  return out;
}

std::size_t rank(const RMatrix& m, std::size_t ncols) {
  return reduced_row_echelon(m, ncols).pivots.size();
}

std::vector<RVec> nullspace_basis(const RMatrix& m, std::size_t ncols) {
  const RowEchelon ech = reduced_row_echelon(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<RVec> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    RVec v(ncols);
    v[free] = 1;
    for (std::size_t r = 0; r < ech.rows.size(); ++r) v[ech.pivots[r]] = -ech.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RMatrix> inverse(const RMatrix& m) {
  const std::size_t k = m.size();
  if (k == 0) return RMatrix{};
  RMatrix aug;
  aug.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    if (m[r].dim() != k) throw Error(ErrorCode::DimensionMismatch, "inverse needs a square matrix");
    RVec row(2 * k);
    for (std::size_t c = 0; c < k; ++c) row[c] = m[r][c];
    row[k + r] = 1;
    aug.push_back(std::move(row));
  }
  RowEchelon ech = reduced_row_echelon(std::move(aug), 2 * k);
  if (ech.pivots.size() < k || ech.pivots[k - 1] != k - 1) return std::nullopt;
  RMatrix inv;
  inv.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    RVec row(k);
    for (std::size_t c = 0; c < k; ++c) row[c] = ech.rows[r][k + c];
    inv.push_back(std::move(row));
  }
  return inv;
}

}  // namespace hcx
