#include "virblocks/linalg.hpp"

#include <stdexcept>

namespace virblocks {

Matrix identity_matrix(int n)
{
    Matrix m(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    for (int i = 0; i < n; ++i)
        m[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b)
{
    if (a.empty() || b.empty())
        return {};
    const size_t rows = a.size(), inner = b.size(), cols = b[0].size();
    Matrix out(rows, std::vector<Rat>(cols, Rat(0)));
    for (size_t i = 0; i < rows; ++i) {
        if (a[i].size() != inner)
            throw std::invalid_argument("matmul: shape mismatch");
        for (size_t t = 0; t < inner; ++t) {
            if (is_zero(a[i][t]))
                continue;
            for (size_t j = 0; j < cols; ++j)
                if (!is_zero(b[t][j]))
                    out[i][j] += a[i][t] * b[t][j];
        }
    }
    return out;
}

std::vector<Rat> matvec(const Matrix& a, const std::vector<Rat>& x)
{
    std::vector<Rat> out(a.size(), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != x.size())
            throw std::invalid_argument("matvec: shape mismatch");
        for (size_t j = 0; j < x.size(); ++j)
            if (!is_zero(a[i][j]) && !is_zero(x[j]))
                out[i] += a[i][j] * x[j];
    }
    return out;
}

namespace {

// in-place reduced echelon; returns pivot columns
std::vector<size_t> echelon(Matrix& a)
{
    std::vector<size_t> pivots;
    if (a.empty())
        return pivots;
    const size_t cols = a[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < a.size(); ++col) {
        size_t piv = row;
        while (piv < a.size() && is_zero(a[piv][col]))
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[row], a[piv]);
        const Rat inv = Rat(1) / a[row][col];
        for (size_t j = col; j < cols; ++j)
            a[row][j] *= inv;
        for (size_t r = 0; r < a.size(); ++r) {
            if (r == row || is_zero(a[r][col]))
                continue;
            const Rat factor = a[r][col];
            for (size_t j = col; j < cols; ++j)
                a[r][j] -= factor * a[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    a.resize(row);
    return pivots;
}

} // namespace

int matrix_rank(Matrix a)
{
    return static_cast<int>(echelon(a).size());
}

Matrix row_reduce(Matrix a)
{
    echelon(a);
    return a;
}

int span_rank(const Matrix& rows)
{
    Matrix copy = rows;
    return matrix_rank(std::move(copy));
}

bool in_row_space(Matrix rows, const std::vector<Rat>& v)
{
    const int r0 = matrix_rank(rows);
    rows.push_back(v);
    return matrix_rank(std::move(rows)) == r0;
}

std::optional<std::vector<Rat>> solve_linear(Matrix a, std::vector<Rat> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("solve_linear: shape mismatch");
    const size_t cols = a.empty() ? 0 : a[0].size();
    for (size_t i = 0; i < a.size(); ++i)
        a[i].push_back(b[i]);
    const auto pivots = echelon(a);
    std::vector<Rat> x(cols, Rat(0));
    for (size_t r = 0; r < a.size(); ++r) {
        if (r < pivots.size() && pivots[r] < cols) {
            x[pivots[r]] = a[r][cols];
        } else if (!is_zero(a[r][cols])) {
            return std::nullopt; // 0 = nonzero
        }
    }
    // pivots past the last column mean an inconsistent row
    for (size_t r = 0; r < pivots.size(); ++r)
        if (pivots[r] == cols)
            return std::nullopt;
    return x;
}

std::optional<Matrix> invert_matrix(Matrix a)
{
    const size_t n = a.size();
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != n)
            throw std::invalid_argument("invert_matrix: not square");
        for (size_t j = 0; j < n; ++j)
            a[i].push_back(i == j ? Rat(1) : Rat(0));
    }
    const auto pivots = echelon(a);
    if (pivots.size() != n)
        return std::nullopt;
    for (size_t i = 0; i < n; ++i)
        if (pivots[i] != i)
            return std::nullopt;
    Matrix inv(n, std::vector<Rat>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            inv[i][j] = a[i][n + j];
    return inv;
}

} // namespace virblocks
