#include "qtorus/morphism.hpp"

#include <functional>

#include "qtorus/letters.hpp"

namespace qtorus {

GenInt int_elementary(const PresentationPtr& pres, std::size_t ell, std::size_t i, std::size_t j,
                      const TorusElement& q) {
    if (i == j) throw SizeMismatch("elementary transvection needs i != j");
    TorusMatrix g = TorusMatrix::identity(pres, ell);
    TorusMatrix ginv = TorusMatrix::identity(pres, ell);
    g.at(i, j) = q;
    ginv.at(i, j) = -q;
    return int_explicit(g, ginv);
}

GenInt int_diagonal(const PresentationPtr& pres, const std::vector<TorusElement>& units) {
    TorusMatrix g(pres, units.size());
    TorusMatrix ginv(pres, units.size());
    for (std::size_t i = 0; i < units.size(); ++i) {
        auto inv = invert(units[i]);
        if (!inv) throw NotInvertible("diagonal entries must be invertible");
        g.at(i, i) = units[i];
        ginv.at(i, i) = *inv;
    }
    return int_explicit(g, ginv);
}

GenInt int_permutation(const PresentationPtr& pres, std::size_t ell,
                       const std::vector<std::size_t>& perm) {
    if (perm.size() != ell) throw SizeMismatch("permutation length mismatch");
    TorusMatrix g(pres, ell);
    TorusMatrix ginv(pres, ell);
    for (std::size_t i = 0; i < ell; ++i) {
        if (perm[i] >= ell) throw SizeMismatch("permutation image out of range");
        g.at(perm[i], i) = TorusElement::unit(pres);
        ginv.at(i, perm[i]) = TorusElement::unit(pres);
    }
    return int_explicit(g, ginv);
}

GenInt int_explicit(const TorusMatrix& g, const TorusMatrix& g_inv) {
    TorusMatrix id = TorusMatrix::identity(g.pres(), g.size());
    if (mat_mul(g, g_inv) != id || mat_mul(g_inv, g) != id)
        throw NotInvertible("Int witness is not a two-sided inverse");
    return GenInt{g, g_inv};
}

// ---------------------------------------------------------------------------

TorusElement lattice_transport(const PresentationPtr& source, const PresentationPtr& target,
                               const IMat& a, const TorusElement& x) {
    if (!same_presentation(source, x.pres()))
        throw PresentationMismatch("element is not over the transport source");
    std::size_t n = source->rank();
    // rows of B = A^T are the source generators expressed over the target:
    // X^mu (source) = c(mu) x^{A mu} (target)
    IMat b = imat_transpose(a);
    std::vector<LatticePoint> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i].resize(n);
        for (std::size_t j = 0; j < n; ++j) rows[i][j] = to_int(b.at(i, j));
    }
    TorusElement out(target);
    for (const auto& [mu, coeff] : x.terms()) {
        std::vector<long> exps(n);
        for (std::size_t i = 0; i < n; ++i) exps[i] = mu[i];
        auto [c, nu] = letter_expand(*target, rows, exps);
        out.add_term(nu, coeff.coerced(target->field()) * c);
    }
    return out;
}

MorphismWord::MorphismWord(PresentationPtr source, std::size_t ell)
    : source_(std::move(source)), target_(source_), ell_(ell) {
    if (ell_ < 2) throw SizeMismatch("matrix Lie algebras here need ell >= 2");
    stations_.push_back(source_);
}

MorphismWord& MorphismWord::push(Generator g) {
    const PresentationPtr& at = target_;
    PresentationPtr next;
    if (auto* lbc = std::get_if<GenLatticeBaseChange>(&g)) {
        if (lbc->a.rows != at->rank() || lbc->a.cols != at->rank())
            throw ChainMismatch("base change rank does not match the current presentation");
        if (!is_unimodular(lbc->a)) throw NotUnimodular("base change matrix must be unimodular");
        IMat ainv_t = imat_transpose(inverse_unimodular(lbc->a));
        next = share(change_basis(*at, ainv_t));
    } else if (auto* sm = std::get_if<GenScalarMap>(&g)) {
        std::size_t n = at->rank();
        std::vector<std::vector<Scalar>> upper(n, std::vector<Scalar>());
        for (std::size_t i = 0; i < n; ++i) {
            upper[i].assign(n, Scalar::one(at->field()));
            for (std::size_t j = i + 1; j < n; ++j)
                upper[i][j] = sm->type == GenScalarMap::Type::Residue
                                  ? at->q(i, j).residue(sm->residue)
                                  : at->q(i, j).coerced(sm->target);
        }
        next = share(sm->type == GenScalarMap::Type::Residue
                         ? Presentation(n, upper, FieldKind::prime(sm->residue.p))
                         : Presentation(n, upper, sm->target));
    } else if (auto* ig = std::get_if<GenInt>(&g)) {
        if (ig->g.size() != ell_) throw ChainMismatch("Int witness size mismatch");
        if (!same_presentation(ig->g.pres(), at))
            throw ChainMismatch("Int witness lives over the wrong presentation");
        next = at;
    } else if (std::holds_alternative<GenTranspose>(g) || std::holds_alternative<GenIotaOp>(g)) {
        next = share(at->opposite());
    } else if (auto* tw = std::get_if<GenCentroidTwist>(&g)) {
        if (!same_presentation(tw->z.pres(), at))
            throw ChainMismatch("centroid twist lives over the wrong presentation");
        CentreSplit s = centre_split(tw->z);
        if (!s.bracket.is_zero()) throw ChainMismatch("centroid twist must be central");
        if (qt_mul(tw->z, tw->z_inv) != TorusElement::unit(at))
            throw NotInvertible("centroid twist witness is not an inverse");
        next = at;
    } else {
        throw ChainMismatch("unknown generator");
    }
    gens_.push_back(std::move(g));
    target_ = next;
    stations_.push_back(target_);
    return *this;
}

bool MorphismWord::is_associative() const {
    std::size_t anti = 0;
    for (const auto& g : gens_)
        if (std::holds_alternative<GenTranspose>(g) || std::holds_alternative<GenIotaOp>(g)) ++anti;
    return anti % 2 == 0;
}

bool MorphismWord::has_centroid_twist() const {
    for (const auto& g : gens_)
        if (std::holds_alternative<GenCentroidTwist>(g)) return true;
    return false;
}

namespace {

TorusMatrix map_entries(const TorusMatrix& x, const PresentationPtr& target,
                        const std::function<TorusElement(const TorusElement&)>& f) {
    TorusMatrix r(target, x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (!x.at(i, j).is_zero()) r.at(i, j) = f(x.at(i, j));
    return r;
}

TorusElement map_coeffs(const TorusElement& v, const PresentationPtr& target,
                        const std::function<Scalar(const Scalar&)>& f) {
    TorusElement r(target);
    for (const auto& [lam, c] : v.terms()) r.add_term(lam, f(c));
    return r;
}

} // namespace

TorusMatrix MorphismWord::apply(const TorusMatrix& x) const {
    if (x.size() != ell_) throw ChainMismatch("matrix size mismatch");
    if (!same_presentation(x.pres(), source_))
        throw ChainMismatch("argument is not over the word's source presentation");
    TorusMatrix cur = x;
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        const Generator& g = gens_[k];
        const PresentationPtr& to = stations_[k + 1];
        if (auto* lbc = std::get_if<GenLatticeBaseChange>(&g)) {
            cur = map_entries(cur, to, [&](const TorusElement& v) {
                return lattice_transport(stations_[k], to, lbc->a, v);
            });
        } else if (auto* sm = std::get_if<GenScalarMap>(&g)) {
            cur = map_entries(cur, to, [&](const TorusElement& v) {
                return map_coeffs(v, to, [&](const Scalar& c) {
                    return sm->type == GenScalarMap::Type::Residue ? c.residue(sm->residue)
                                                                   : c.coerced(sm->target);
                });
            });
        } else if (auto* ig = std::get_if<GenInt>(&g)) {
            cur = mat_mul(mat_mul(ig->g, cur), ig->g_inv);
        } else if (std::holds_alternative<GenTranspose>(g) || std::holds_alternative<GenIotaOp>(g)) {
            TorusMatrix t = mat_transpose(cur);
            cur = -map_entries(t, to, [&](const TorusElement& v) { return op_map(v, to); });
        } else if (auto* tw = std::get_if<GenCentroidTwist>(&g)) {
            cur = cur.scaled(tw->z);
        }
    }
    return cur;
}

TorusElement MorphismWord::apply_central(const TorusElement& z) const {
    if (!same_presentation(z.pres(), source_))
        throw ChainMismatch("central element is not over the source presentation");
    if (!centre_split(z).bracket.is_zero())
        throw ChainMismatch("apply_central expects a central element");
    TorusElement cur = z;
    for (std::size_t k = 0; k < gens_.size(); ++k) {
        const Generator& g = gens_[k];
        const PresentationPtr& to = stations_[k + 1];
        if (auto* lbc = std::get_if<GenLatticeBaseChange>(&g)) {
            cur = lattice_transport(stations_[k], to, lbc->a, cur);
        } else if (auto* sm = std::get_if<GenScalarMap>(&g)) {
            cur = map_coeffs(cur, to, [&](const Scalar& c) {
                return sm->type == GenScalarMap::Type::Residue ? c.residue(sm->residue)
                                                               : c.coerced(sm->target);
            });
        } else if (std::holds_alternative<GenInt>(g) ||
                   std::holds_alternative<GenCentroidTwist>(g)) {
            // inner maps and twists fix the centroid
        } else if (std::holds_alternative<GenTranspose>(g) || std::holds_alternative<GenIotaOp>(g)) {
            cur = op_map(cur, to);
        }
    }
    return cur;
}

GlSplit gl_split(const TorusMatrix& x) {
    std::size_t ell = x.size();
    Scalar ell_scalar = Scalar::one(x.pres()->field());
    {
        Scalar one = ell_scalar;
        for (std::size_t k = 1; k < ell; ++k) ell_scalar = ell_scalar + one;
    }
    if (ell_scalar.is_zero()) throw BadCharacteristic("ell is not invertible in the field");
    CentreSplit tr = centre_split(mat_trace(x));
    GlSplit out;
    out.central = tr.central.scaled(ell_scalar.inv());
    out.sl_part = x - TorusMatrix::identity(x.pres(), ell).scaled(out.central);
    return out;
}

GlMorphism f_gl_extend(const MorphismWord& w) {
    if (!good_characteristic(w.source()->field(), w.ell()) ||
        !good_characteristic(w.target()->field(), w.ell()))
        throw BadCharacteristic("gl extension needs good characteristic");
    return GlMorphism{w};
}

TorusMatrix GlMorphism::apply_gl(const TorusMatrix& x) const {
    GlSplit s = gl_split(x);
    TorusMatrix img = word.apply(s.sl_part);
    TorusElement fz = word.apply_central(s.central);
    return img + TorusMatrix::identity(word.target(), word.ell()).scaled(fz);
}

} // namespace qtorus
