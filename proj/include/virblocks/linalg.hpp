#pragma once

// Small dense exact-rational linear algebra: elimination, rank, solve,
// inverse. Sizes here stay in the low hundreds, so plain fraction
// arithmetic with partial structural pivoting is adequate.

#include "virblocks/rational.hpp"

#include <optional>
#include <vector>

namespace virblocks {

using Matrix = std::vector<std::vector<Rat>>;

Matrix identity_matrix(int n);
Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<Rat> matvec(const Matrix& a, const std::vector<Rat>& x);
int matrix_rank(Matrix a);

// Solves a x = b; nullopt iff inconsistent or underdetermined ambiguity is
// resolved by any particular solution (free variables set to 0).
std::optional<std::vector<Rat>> solve_linear(Matrix a, std::vector<Rat> b);

std::optional<Matrix> invert_matrix(Matrix a);

// Row space basis in reduced echelon form.
Matrix row_reduce(Matrix a);

// Rank of the span of the given rows (convenience, keeps the rows intact).
int span_rank(const Matrix& rows);

// True iff v lies in the row space of `rows`.
bool in_row_space(Matrix rows, const std::vector<Rat>& v);

} // namespace virblocks
