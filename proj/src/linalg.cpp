#include "qtorus/linalg.hpp"

namespace qtorus {

namespace {

// in-place reduced row echelon form; returns pivot column of each pivot row
std::vector<std::size_t> rref(SMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t sel = m.rows;
        for (std::size_t i = row; i < m.rows; ++i)
            if (!m.at(i, col).is_zero()) {
                sel = i;
                break;
            }
        if (sel == m.rows) continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
        Scalar inv = m.at(row, col).inv();
        for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) = m.at(row, j) * inv;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == row || m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col);
            for (std::size_t j = col; j < m.cols; ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t s_rank(SMat m) { return rref(m).size(); }

std::vector<SVec> s_kernel(SMat m) {
    std::vector<std::size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;

    std::vector<SVec> basis;
    for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        SVec v(m.cols, Scalar::zero(m.field));
        v[free_col] = Scalar::one(m.field);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m.at(r, free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<SVec> s_solve(SMat m, SVec b) {
    if (b.size() != m.rows) throw SizeMismatch("s_solve dimension mismatch");
    SMat aug(m.rows, m.cols + 1, m.field);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i].coerced(m.field);
    }
    std::vector<std::size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt; // inconsistent
    SVec x(m.cols, Scalar::zero(m.field));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, m.cols);
    return x;
}

} // namespace qtorus
