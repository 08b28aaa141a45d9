#include "qtorus/intlin.hpp"

#include <algorithm>

namespace qtorus {

Int to_int(const mpz_class& v) {
    if (!v.fits_slong_p()) throw VerificationFailed("integer entry exceeds machine range");
    return v.get_si();
}

namespace {

void swap_rows(IMat& m, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < m.cols; ++k) std::swap(m.at(i, k), m.at(j, k));
}

void swap_cols(IMat& m, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < m.rows; ++k) std::swap(m.at(k, i), m.at(k, j));
}

// row i += c * row j
void add_row(IMat& m, std::size_t i, std::size_t j, const mpz_class& c) {
    for (std::size_t k = 0; k < m.cols; ++k) m.at(i, k) += c * m.at(j, k);
}

// col i += c * col j
void add_col(IMat& m, std::size_t i, std::size_t j, const mpz_class& c) {
    for (std::size_t k = 0; k < m.rows; ++k) m.at(k, i) += c * m.at(k, j);
}

void negate_row(IMat& m, std::size_t i) {
    for (std::size_t k = 0; k < m.cols; ++k) m.at(i, k) = -m.at(i, k);
}

} // namespace

IMat::IMat(std::initializer_list<std::initializer_list<Int>> init) {
    rows = init.size();
    cols = rows == 0 ? 0 : init.begin()->size();
    a.reserve(rows * cols);
    for (const auto& r : init) {
        if (r.size() != cols) throw SizeMismatch("ragged matrix initializer");
        for (Int v : r) a.emplace_back(v);
    }
}

IMat IMat::identity(std::size_t n) {
    IMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IMat imat_mul(const IMat& x, const IMat& y) {
    if (x.cols != y.rows) throw SizeMismatch("matrix product shape mismatch");
    IMat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r.at(i, j) += x.at(i, k) * y.at(k, j);
        }
    return r;
}

IMat imat_transpose(const IMat& x) {
    IMat r(x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) r.at(j, i) = x.at(i, j);
    return r;
}

IVec row_times(const IVec& v, const IMat& m) {
    if (v.size() != m.rows) throw SizeMismatch("row-vector length mismatch");
    IVec r(m.cols, 0);
    for (std::size_t j = 0; j < m.cols; ++j) {
        mpz_class acc = 0;
        for (std::size_t i = 0; i < m.rows; ++i) acc += v[i] * m.at(i, j);
        r[j] = to_int(acc);
    }
    return r;
}

IVec times_col(const IMat& m, const IVec& v) {
    if (v.size() != m.cols) throw SizeMismatch("column-vector length mismatch");
    IVec r(m.rows, 0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        mpz_class acc = 0;
        for (std::size_t j = 0; j < m.cols; ++j) acc += m.at(i, j) * v[j];
        r[i] = to_int(acc);
    }
    return r;
}

mpz_class imat_det(const IMat& m) {
    if (m.rows != m.cols) throw SizeMismatch("determinant of non-square matrix");
    std::size_t n = m.rows;
    if (n == 0) return 1;
    // Bareiss fraction-free elimination
    IMat a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            swap_rows(a, k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

bool is_unimodular(const IMat& m) {
    if (m.rows != m.cols) return false;
    mpz_class d = imat_det(m);
    return d == 1 || d == -1;
}

IMat inverse_unimodular(const IMat& m) {
    if (!is_unimodular(m)) throw NotUnimodular("matrix determinant is not +-1");
    std::size_t n = m.rows;
    // Gauss-Jordan over Q; the result is integral because |det| = 1
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw NotUnimodular("singular matrix");
        std::swap(a[c], a[p]);
        mpq_class inv = 1 / a[c][c];
        for (auto& v : a[c]) v *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    IMat r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a[i][n + j].get_den() != 1) throw NotUnimodular("inverse is not integral");
            r.at(i, j) = a[i][n + j].get_num();
        }
    return r;
}

SmithNormalForm smith_normal_form(const IMat& m) {
    std::size_t rows = m.rows, cols = m.cols;
    IMat d = m;
    IMat u = IMat::identity(rows), v = IMat::identity(cols);

    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        bool any = false;
        for (std::size_t i = t; i < rows && !any; ++i)
            for (std::size_t j = t; j < cols && !any; ++j)
                if (d.at(i, j) != 0) any = true;
        if (!any) break;

        while (true) {
            std::size_t bi = 0, bj = 0;
            mpz_class best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (d.at(i, j) == 0) continue;
                    mpz_class av = abs(d.at(i, j));
                    if (best == 0 || av < best) {
                        best = av;
                        bi = i;
                        bj = j;
                    }
                }
            if (bi != t) { swap_rows(d, t, bi); swap_rows(u, t, bi); }
            if (bj != t) { swap_cols(d, t, bj); swap_cols(v, t, bj); }

            bool reduced = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d.at(i, t) == 0) continue;
                mpz_class q = d.at(i, t) / d.at(t, t);
                if (q != 0) { add_row(d, i, t, -q); add_row(u, i, t, -q); }
                if (d.at(i, t) != 0) reduced = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d.at(t, j) == 0) continue;
                mpz_class q = d.at(t, j) / d.at(t, t);
                if (q != 0) { add_col(d, j, t, -q); add_col(v, j, t, -q); }
                if (d.at(t, j) != 0) reduced = false;
            }
            if (!reduced) continue;

            // the pivot must divide every remaining entry; fold an
            // offending row into row t and restart otherwise
            bool divides_all = true;
            for (std::size_t i = t + 1; i < rows && divides_all; ++i)
                for (std::size_t j = t + 1; j < cols && divides_all; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        add_row(d, t, i, 1);
                        add_row(u, t, i, 1);
                        divides_all = false;
                    }
            if (divides_all) break;
        }
        if (d.at(t, t) < 0) { negate_row(d, t); negate_row(u, t); }
    }

    SmithNormalForm out;
    out.U = std::move(u);
    out.V = std::move(v);
    out.rank = 0;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        if (d.at(i, i) != 0) {
            ++out.rank;
            out.divisors.push_back(d.at(i, i));
        }
    out.D = std::move(d);
    return out;
}

IMat left_kernel(const IMat& m) {
    // x * M = 0  <=>  y * D = 0 with y = x * U^{-1}; the zero rows of D are
    // the bottom ones, so the bottom rows of U span the kernel
    SmithNormalForm snf = smith_normal_form(m);
    std::size_t r = snf.rank;
    IMat k(m.rows - r, m.rows);
    for (std::size_t i = r; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.rows; ++j) k.at(i - r, j) = snf.U.at(i, j);
    return k;
}

std::optional<IVec> row_solve(const IMat& a, const IVec& b) {
    if (b.size() != a.cols) throw SizeMismatch("row_solve dimension mismatch");
    SmithNormalForm snf = smith_normal_form(a);
    std::size_t mn = std::min(a.rows, a.cols);
    std::vector<mpz_class> bv(a.cols, 0);
    for (std::size_t j = 0; j < a.cols; ++j)
        for (std::size_t i = 0; i < a.cols; ++i) bv[j] += b[i] * snf.V.at(i, j);
    std::vector<mpz_class> y(a.rows, 0);
    for (std::size_t j = 0; j < a.cols; ++j) {
        mpz_class dj = (j < mn) ? snf.D.at(j, j) : mpz_class(0);
        if (dj == 0) {
            if (bv[j] != 0) return std::nullopt;
        } else {
            if (bv[j] % dj != 0) return std::nullopt;
            y[j] = bv[j] / dj;
        }
    }
    IVec x(a.rows, 0);
    for (std::size_t j = 0; j < a.rows; ++j) {
        mpz_class acc = 0;
        for (std::size_t i = 0; i < a.rows; ++i) acc += y[i] * snf.U.at(i, j);
        x[j] = to_int(acc);
    }
    return x;
}

IMat row_basis(const IMat& g) {
    // integer row echelon via Euclid, pivots positive, entries above
    // pivots reduced into [0, pivot)
    IMat a = g;
    std::size_t rows = a.rows, cols = a.cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        while (true) {
            std::size_t best = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (a.at(i, c) != 0 && (best == rows || abs(a.at(i, c)) < abs(a.at(best, c))))
                    best = i;
            if (best == rows) break;
            if (best != r) swap_rows(a, r, best);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (a.at(i, c) == 0) continue;
                mpz_class q = a.at(i, c) / a.at(r, c);
                if (q != 0) add_row(a, i, r, -q);
                if (a.at(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < rows && a.at(r, c) != 0) {
            if (a.at(r, c) < 0) negate_row(a, r);
            for (std::size_t i = 0; i < r; ++i) {
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(i, c).get_mpz_t(), a.at(r, c).get_mpz_t());
                if (q != 0) add_row(a, i, r, -q);
            }
            ++r;
        }
    }
    IMat out(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = a.at(i, j);
    return out;
}

bool lattice_member(const IMat& basis, const IVec& v) {
    return row_solve(basis, v).has_value();
}

IMat lattice_intersect(const IMat& b1, const IMat& b2) {
    if (b1.cols != b2.cols) throw SizeMismatch("lattice dimension mismatch");
    // (x1, x2) with x1 B1 = x2 B2: left kernel of [B1; -B2]
    IMat stacked(b1.rows + b2.rows, b1.cols);
    for (std::size_t i = 0; i < b1.rows; ++i)
        for (std::size_t j = 0; j < b1.cols; ++j) stacked.at(i, j) = b1.at(i, j);
    for (std::size_t i = 0; i < b2.rows; ++i)
        for (std::size_t j = 0; j < b2.cols; ++j) stacked.at(b1.rows + i, j) = -b2.at(i, j);
    IMat ker = left_kernel(stacked);
    IMat gens(ker.rows, b1.cols);
    for (std::size_t i = 0; i < ker.rows; ++i)
        for (std::size_t j = 0; j < b1.cols; ++j) {
            mpz_class acc = 0;
            for (std::size_t k = 0; k < b1.rows; ++k) acc += ker.at(i, k) * b1.at(k, j);
            gens.at(i, j) = acc;
        }
    return row_basis(gens);
}

std::optional<mpz_class> lattice_index(const IMat& basis, std::size_t n) {
    if (basis.cols != n) throw SizeMismatch("lattice ambient dimension mismatch");
    if (basis.rows < n) return std::nullopt;
    IMat b = basis.rows == n ? basis : row_basis(basis);
    if (b.rows < n) return std::nullopt;
    mpz_class d = imat_det(b);
    if (d == 0) return std::nullopt;
    return abs(d);
}

} // namespace qtorus
