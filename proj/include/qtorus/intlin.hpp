#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "qtorus/errors.hpp"

namespace qtorus {

using Int = long;
using IVec = std::vector<Int>;

/// Checked narrowing (lattice points are held as machine integers).
Int to_int(const mpz_class& v);

/// Dense integer matrix, row-major, exact big-integer entries. Lattices
/// are spanned by matrix ROWS.
struct IMat {
    std::size_t rows = 0, cols = 0;
    std::vector<mpz_class> a;

    IMat() = default;
    IMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, mpz_class(0)) {}
    IMat(std::initializer_list<std::initializer_list<Int>> init);

    mpz_class& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const mpz_class& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    Int at_int(std::size_t i, std::size_t j) const { return to_int(a[i * cols + j]); }

    static IMat identity(std::size_t n);
    bool operator==(const IMat& o) const = default;
};

IMat imat_mul(const IMat& x, const IMat& y);
IMat imat_transpose(const IMat& x);
IVec row_times(const IVec& v, const IMat& m);   // v * m
IVec times_col(const IMat& m, const IVec& v);   // m * v

mpz_class imat_det(const IMat& m);              // square only
bool is_unimodular(const IMat& m);
IMat inverse_unimodular(const IMat& m);         // throws NotUnimodular

/// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... >= 0.
struct SmithNormalForm {
    IMat U, D, V;
    std::size_t rank = 0;
    std::vector<mpz_class> divisors; // nonzero diagonal entries
};
SmithNormalForm smith_normal_form(const IMat& m);

/// Basis (as rows) of {x : x * M = 0}.
IMat left_kernel(const IMat& m);

/// Some x with x * A = b, if one exists over Z.
std::optional<IVec> row_solve(const IMat& a, const IVec& b);

/// Canonical basis (as rows, row-style Hermite form) of the lattice
/// spanned by the rows of G. Zero rows are dropped.
IMat row_basis(const IMat& g);

bool lattice_member(const IMat& basis, const IVec& v);
IMat lattice_intersect(const IMat& b1, const IMat& b2);

/// |Z^n / L| for a lattice with the given basis rows; nullopt when the
/// index is infinite (rank < n).
std::optional<mpz_class> lattice_index(const IMat& basis, std::size_t n);

} // namespace qtorus
