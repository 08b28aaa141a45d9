#pragma once

#include <map>

#include "qtorus/element.hpp"

namespace qtorus {

/// ell x ell matrix over one quantum torus.
class TorusMatrix {
public:
    TorusMatrix() = default;
    TorusMatrix(PresentationPtr pres, std::size_t ell);
    static TorusMatrix identity(PresentationPtr pres, std::size_t ell);
    static TorusMatrix matrix_unit(PresentationPtr pres, std::size_t ell, std::size_t i,
                                   std::size_t j);
    static TorusMatrix scaled_unit(PresentationPtr pres, std::size_t ell, std::size_t i,
                                   std::size_t j, const TorusElement& a);

    std::size_t size() const { return ell_; }
    const PresentationPtr& pres() const { return pres_; }
    const TorusElement& at(std::size_t i, std::size_t j) const;
    TorusElement& at(std::size_t i, std::size_t j);

    TorusMatrix operator+(const TorusMatrix& o) const;
    TorusMatrix operator-(const TorusMatrix& o) const;
    TorusMatrix operator-() const;
    TorusMatrix scaled(const Scalar& s) const;
    TorusMatrix scaled(const TorusElement& z) const; // entrywise left multiplication
    bool operator==(const TorusMatrix& o) const;
    bool operator!=(const TorusMatrix& o) const { return !(*this == o); }
    bool is_zero() const;

    std::string str() const;

private:
    PresentationPtr pres_;
    std::size_t ell_ = 0;
    std::vector<TorusElement> e_;
};

TorusMatrix mat_mul(const TorusMatrix& x, const TorusMatrix& y);
TorusMatrix lie_bracket(const TorusMatrix& x, const TorusMatrix& y);
TorusElement mat_trace(const TorusMatrix& x);
/// Plain transpose of the entry grid (no entry map).
TorusMatrix mat_transpose(const TorusMatrix& x);

/// x in sl_ell(Q): the central part of tr(x) vanishes.
bool in_sl(const TorusMatrix& x);
bool is_diagonal(const TorusMatrix& x);

/// Unique decomposition of an sl element per
/// L_0 = [Q,Q]E_11 + {trace-zero diagonals}, plus off-diagonal slots.
struct SlDecomposition {
    TorusElement bracket_part;                              // in [Q,Q], sits at E_11
    std::vector<TorusElement> traceless_diagonal;           // sums to zero
    std::map<std::pair<std::size_t, std::size_t>, TorusElement> off_diagonal;
};
SlDecomposition sl_decompose(const TorusMatrix& x);
TorusMatrix sl_reassemble(const PresentationPtr& pres, std::size_t ell, const SlDecomposition& d);

/// Good characteristic for sl_ell: char 0, or p > 3 with p not dividing ell.
bool good_characteristic(const FieldKind& f, std::size_t ell);

/// h_F: the ell-1 matrices E_ii - E_{i+1,i+1}.
struct StandardMad {
    std::size_t ell = 0;
    std::vector<TorusMatrix> basis;
};
StandardMad standard_mad(const PresentationPtr& pres, std::size_t ell);

/// Decision chain of the standard-MAD maximality proof, applied to a
/// diagonal sl element commuting with h_F:
///   step 1: every diagonal entry must be central (ad-diagonalizable),
///   step 2: every difference d_i - d_j must lie in F*1,
///   step 3: every entry must lie in F*1 (forced by the trace identity).
struct MadExtensionResult {
    bool in_standard_mad = false;
    int failing_step = 0;               // 1, 2 or 3 when rejected
    std::size_t entry_i = 0, entry_j = 0;
    TorusElement witness;               // offending entry or difference
};
MadExtensionResult mad_extension_test(const TorusMatrix& d);

/// {E_ij, x_p^{+-1} E_ij : i != j, p = 1..n}; size ell(ell-1)(2n+1).
std::vector<TorusMatrix> sl_generators(const PresentationPtr& pres, std::size_t ell);

} // namespace qtorus
