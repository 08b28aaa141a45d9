#pragma once

#include <variant>

#include "qtorus/matrix.hpp"

namespace qtorus {

/// Generator morphisms. Each maps matrices over its source presentation to
/// matrices over a derived target presentation:
///   LatticeBaseChange(A): re-coordinatization, exponents lambda -> A lambda,
///     with letter-expansion scalar corrections; target = change_basis(source, A^{-T}).
///   ScalarMap: coefficient-field homomorphism (residue map mod p, or a
///     cyclotomic-order enlargement).
///   Int(g): x -> g x g^{-1} with a witnessed two-sided inverse.
///   Transpose / IotaOp: x -> -op(x^t), target the opposite presentation
///     (the Lie isomorphism sl(Q) ~ sl(Q^op); both names chain identically,
///     the tag records which role the step plays in a pipeline).
///   CentroidTwist(z): x -> z x for a central unit z (a centroidal,
///     Z(Q)-semilinear map, not a Lie homomorphism).
struct GenLatticeBaseChange {
    IMat a;
};
struct GenScalarMap {
    enum class Type { Residue, CyclotomicEmbed } type = Type::Residue;
    ResidueMap residue;
    FieldKind target; // for CyclotomicEmbed
};
struct GenInt {
    TorusMatrix g, g_inv;
};
struct GenTranspose {};
struct GenIotaOp {};
struct GenCentroidTwist {
    TorusElement z, z_inv;
};

using Generator =
    std::variant<GenLatticeBaseChange, GenScalarMap, GenInt, GenTranspose, GenIotaOp, GenCentroidTwist>;

/// Verified Int constructors; all witness their inverse at construction.
GenInt int_elementary(const PresentationPtr& pres, std::size_t ell, std::size_t i, std::size_t j,
                      const TorusElement& q);                               // I + q E_ij
GenInt int_diagonal(const PresentationPtr& pres, const std::vector<TorusElement>& units);
GenInt int_permutation(const PresentationPtr& pres, std::size_t ell,
                       const std::vector<std::size_t>& perm);               // e_i -> e_{perm[i]}
GenInt int_explicit(const TorusMatrix& g, const TorusMatrix& g_inv);

/// Composite morphism between matrix algebras over quantum tori, evaluated
/// left to right.
class MorphismWord {
public:
    MorphismWord(PresentationPtr source, std::size_t ell);

    MorphismWord& push(Generator g); // validates chaining; returns *this
    const std::vector<Generator>& generators() const { return gens_; }

    const PresentationPtr& source() const { return source_; }
    const PresentationPtr& target() const { return target_; }
    std::size_t ell() const { return ell_; }

    /// Number of anti generators (Transpose / IotaOp) is even.
    bool is_associative() const;
    bool has_centroid_twist() const;

    TorusMatrix apply(const TorusMatrix& x) const;
    /// The compositional centroid map f_Z on central torus elements.
    TorusElement apply_central(const TorusElement& z) const;

private:
    PresentationPtr source_, target_;
    std::size_t ell_;
    std::vector<Generator> gens_;
    std::vector<PresentationPtr> stations_; // presentations between generators
};

/// Entry-wise element transport of a lattice base change: the element map
/// Q(source) -> Q(target) with target = change_basis(source, A^{-T}).
TorusElement lattice_transport(const PresentationPtr& source, const PresentationPtr& target,
                               const IMat& a, const TorusElement& x);

/// gl extension per the centroid diagram: (z E + X) -> f_Z(z) E + w(X).
/// Requires an invertible ell and good characteristic.
struct GlMorphism {
    MorphismWord word;
    TorusMatrix apply_gl(const TorusMatrix& x) const;
};
GlMorphism f_gl_extend(const MorphismWord& w);

/// Split x in gl as z E_ell + X with z central, X in sl (Lemma-cc shape).
struct GlSplit {
    TorusElement central;
    TorusMatrix sl_part;
};
GlSplit gl_split(const TorusMatrix& x);

} // namespace qtorus
