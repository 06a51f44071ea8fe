#pragma once

#include <cstdint>
#include <vector>

#include "clalg/zp.hpp"

namespace clalg {

/// Dense matrix over F_p, row-major.
using DenseMatrix = std::vector<std::vector<std::uint32_t>>;

/// Basis of {a : A a = 0} for an r x ncols matrix A, one vector per free column
/// of the reduced row echelon form (deterministic).
std::vector<std::vector<std::uint32_t>> nullspace(DenseMatrix A, std::size_t ncols, const Zp& F);
std::size_t rank(DenseMatrix A, std::size_t ncols, const Zp& F);

}  // namespace clalg
