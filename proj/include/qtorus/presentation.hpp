#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "qtorus/intlin.hpp"
#include "qtorus/scalar.hpp"

namespace qtorus {

/// Quantum-torus presentation: rank n and the quantum matrix q = (q_ij)
/// with q_ii = 1, q_ji = q_ij^{-1}, all entries nonzero. All entries share
/// one coefficient field.
class Presentation {
public:
    /// Build from the strict upper triangle; the rest is derived. The
    /// coefficient field is the join of the entry fields and `floor`.
    Presentation(std::size_t n, const std::vector<std::vector<Scalar>>& upper);
    Presentation(std::size_t n, const std::vector<std::vector<Scalar>>& upper,
                 const FieldKind& floor);
    static Presentation commutative(std::size_t n, const FieldKind& f);

    std::size_t rank() const { return n_; }
    const Scalar& q(std::size_t i, std::size_t j) const; // 0-based
    const FieldKind& field() const { return field_; }

    Presentation opposite() const;
    bool operator==(const Presentation& o) const;

private:
    Presentation() = default;
    std::size_t n_ = 0;
    FieldKind field_;
    std::vector<Scalar> q_; // full n x n matrix, row-major
};

using PresentationPtr = std::shared_ptr<const Presentation>;

inline PresentationPtr share(Presentation p) {
    return std::make_shared<const Presentation>(std::move(p));
}
bool same_presentation(const PresentationPtr& a, const PresentationPtr& b);

/// Central grading group Xi = {lambda : x^lambda central}, with the index
/// |Z^n / Xi| (nullopt = infinite).
struct CentralLattice {
    IMat basis;
    std::optional<mpz_class> index;
};

/// Multiplicative coordinates of all entries: q_ij = root^{a_ij} * s^{b_ij}
/// with `root` the canonical primitive root of the coefficient field's
/// torsion subgroup (order `root_order`).
struct MultiplicativeForm {
    unsigned long root_order = 1;
    Scalar root;
    IMat zeta_exponents; // antisymmetric mod root_order
    IMat s_exponents;    // antisymmetric over Z
};

/// Throws UnsupportedScalarKind unless every entry is a product of a root
/// of unity and a power of s.
MultiplicativeForm multiplicative_form(const Presentation& p);

/// Re-coordinatization x~_i = prod_t x_t^{a_it}: new quantum matrix
/// q~_ij = prod_{s,t} q_st^{a_is a_jt}. A must be unimodular.
Presentation change_basis(const Presentation& p, const IMat& a);

CentralLattice central_lattice(const Presentation& p);
bool is_central_point(const Presentation& p, const IVec& lambda);
bool is_fgc(const Presentation& p);

bool is_canonical_shape(const Presentation& p);

/// Unimodular A with change_basis(p, A) canonical: the new quantum matrix
/// is trivial outside 2x2 diagonal blocks, nontrivial blocks first, sorted
/// by decreasing entry order. The result is re-verified before returning.
struct CanonicalPresentation {
    IMat base_change;
    Presentation presentation;
};
CanonicalPresentation canonical_presentation(const Presentation& p);

struct SymbolDecomposition {
    std::size_t blocks = 0;                    // number of nontrivial 2x2 blocks
    std::vector<unsigned long> orders;         // ell_i = order of q_{2i-1,2i}
    std::vector<IVec> central_generators;      // t_1, ..., t_n as lattice points
    std::vector<std::size_t> etale_indices;    // 0-based indices of x_1, x_3, ...
};
SymbolDecomposition symbol_decomposition(const Presentation& pc);

} // namespace qtorus
