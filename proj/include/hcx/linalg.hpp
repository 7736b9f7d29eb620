#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hcx/vector.hpp"

namespace hcx {

/// Dense rational matrix stored as rows.
using RMatrix = std::vector<RVec>;

struct RowEchelon {
  RMatrix rows;                     // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

RowEchelon reduced_row_echelon(RMatrix m, std::size_t ncols);

std::size_t rank(const RMatrix& m, std::size_t ncols);

/// Basis of {x : row . x = 0 for every row}; one vector per free column of
/// the echelon form, with a 1 in that column.
std::vector<RVec> nullspace_basis(const RMatrix& m, std::size_t ncols);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<RMatrix> inverse(const RMatrix& m);

}  // namespace hcx
