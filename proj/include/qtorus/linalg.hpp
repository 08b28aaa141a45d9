#pragma once

#include <optional>
#include <vector>

#include "qtorus/scalar.hpp"

namespace qtorus {

using SVec = std::vector<Scalar>;

/// Dense matrix over one exact coefficient field.
struct SMat {
    std::size_t rows = 0, cols = 0;
    FieldKind field;
    std::vector<Scalar> a;

    SMat() = default;
    SMat(std::size_t r, std::size_t c, const FieldKind& f)
        : rows(r), cols(c), field(f), a(r * c, Scalar::zero(f)) {}
    Scalar& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Scalar& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

std::size_t s_rank(SMat m);

/// Basis of {x : M x = 0}, in reduced echelon normal form (deterministic).
std::vector<SVec> s_kernel(SMat m);

/// Some x with M x = b, if solvable.
std::optional<SVec> s_solve(SMat m, SVec b);

} // namespace qtorus
