#include "qtorus/random_gen.hpp"

#include <algorithm>

namespace qtorus {

IMat random_unimodular(Rng& rng, std::size_t n, Int bound) {
    IMat a = IMat::identity(n);
    if (n == 1) {
        if (rng() % 2) a.at(0, 0) = -1;
        return a;
    }
    std::size_t ops = 4 * n + rng() % (4 * n);
    for (std::size_t k = 0; k < ops; ++k) {
        std::size_t i = rng() % n, j = rng() % n;
        switch (rng() % 3) {
        case 0: { // row i += +-1 * row j, bounded
            if (i == j) break;
            Int c = (rng() % 2) ? 1 : -1;
            bool ok = true;
            for (std::size_t t = 0; t < n; ++t)
                if (abs(mpz_class(a.at(i, t) + c * a.at(j, t))) > bound) ok = false;
            if (ok)
                for (std::size_t t = 0; t < n; ++t) a.at(i, t) += c * a.at(j, t);
            break;
        }
        case 1: // swap
            if (i != j)
                for (std::size_t t = 0; t < n; ++t) std::swap(a.at(i, t), a.at(j, t));
            break;
        default: // negate
            for (std::size_t t = 0; t < n; ++t) a.at(i, t) = -a.at(i, t);
            break;
        }
    }
    return a;
}

Presentation random_fgc_presentation(Rng& rng, std::size_t n, unsigned max_order) {
    unsigned m = 1 + static_cast<unsigned>(rng() % max_order);
    FieldKind f = m <= 2 ? FieldKind::rational() : FieldKind::cyclotomic(m);
    std::vector<std::vector<Scalar>> upper(n, std::vector<Scalar>(n, Scalar::one(f)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (m <= 2)
                upper[i][j] = Scalar::integer(rng() % 2 && m == 2 ? -1 : 1);
            else
                upper[i][j] = Scalar::zeta(m).pow(static_cast<long>(rng() % m));
        }
    return Presentation(n, upper, f);
}

Presentation random_presentation(Rng& rng, std::size_t n, unsigned max_order,
                                 unsigned s_probability) {
    Presentation base = random_fgc_presentation(rng, n, max_order);
    if (n < 2 || rng() % 100 >= s_probability) return base;
    FieldKind f = FieldKind::rational_function(base.field().order);
    std::vector<std::vector<Scalar>> upper(n, std::vector<Scalar>(n, Scalar::one(f)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) upper[i][j] = base.q(i, j).coerced(f);
    std::size_t pi = rng() % (n - 1);
    std::size_t pj = pi + 1 + rng() % (n - pi - 1);
    upper[pi][pj] = upper[pi][pj] * Scalar::transcendental(f.order).pow(rng() % 2 ? 1 : -1);
    return Presentation(n, upper, f);
}

Scalar random_scalar(Rng& rng, const FieldKind& f) {
    switch (f.kind) {
    case ScalarKind::Rational:
        return Scalar::rational(
            Rat(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4)));
    case ScalarKind::Cyclotomic: {
        Scalar v = Scalar::zero(f);
        std::size_t terms = 1 + rng() % 2;
        for (std::size_t t = 0; t < terms; ++t) {
            Scalar c = Scalar::rational(Rat(static_cast<long>(rng() % 7) - 3)).coerced(f);
            v = v + c * Scalar::zeta(f.order).pow(static_cast<long>(rng() % f.order));
        }
        return v;
    }
    case ScalarKind::RationalFunction: {
        Scalar s = Scalar::transcendental(f.order);
        Scalar num = random_scalar(rng, FieldKind::cyclotomic(f.order)).coerced(f) +
                     random_scalar(rng, FieldKind::cyclotomic(f.order)).coerced(f) * s;
        long shift = static_cast<long>(rng() % 3) - 1;
        return num * s.pow(shift);
    }
    case ScalarKind::Prime:
        return Scalar::prime_element(f.p, static_cast<std::int64_t>(rng() % f.p));
    }
    return Scalar::zero(f);
}

Scalar random_nonzero_scalar(Rng& rng, const FieldKind& f) {
    for (int tries = 0; tries < 64; ++tries) {
        Scalar v = random_scalar(rng, f);
        if (!v.is_zero()) return v;
    }
    return Scalar::one(f);
}

TorusElement random_element(Rng& rng, const PresentationPtr& pres, std::size_t max_points,
                            Int exp_bound) {
    TorusElement e(pres);
    std::size_t points = rng() % (max_points + 1);
    for (std::size_t k = 0; k < points; ++k) {
        LatticePoint lam(pres->rank());
        for (auto& v : lam)
            v = static_cast<Int>(rng() % static_cast<unsigned long>(2 * exp_bound + 1)) - exp_bound;
        e.add_term(lam, random_scalar(rng, pres->field()));
    }
    return e;
}

TorusElement random_nonzero_element(Rng& rng, const PresentationPtr& pres, std::size_t max_points,
                                    Int exp_bound) {
    for (int tries = 0; tries < 64; ++tries) {
        TorusElement e = random_element(rng, pres, std::max<std::size_t>(max_points, 1), exp_bound);
        if (!e.is_zero()) return e;
    }
    return TorusElement::unit(pres);
}

TorusMatrix random_matrix(Rng& rng, const PresentationPtr& pres, std::size_t ell,
                          std::size_t max_points, Int exp_bound) {
    TorusMatrix m(pres, ell);
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = 0; j < ell; ++j)
            m.at(i, j) = random_element(rng, pres, max_points, exp_bound);
    return m;
}

TorusMatrix random_sl_matrix(Rng& rng, const PresentationPtr& pres, std::size_t ell,
                             std::size_t max_points, Int exp_bound) {
    TorusMatrix m = random_matrix(rng, pres, ell, max_points, exp_bound);
    CentreSplit tr = centre_split(mat_trace(m));
    m.at(0, 0) = m.at(0, 0) - tr.central;
    return m;
}

TorusElement random_monomial(Rng& rng, const PresentationPtr& pres, Int exp_bound) {
    LatticePoint lam(pres->rank());
    for (auto& v : lam)
        v = static_cast<Int>(rng() % static_cast<unsigned long>(2 * exp_bound + 1)) - exp_bound;
    return TorusElement::monomial(pres, lam, random_nonzero_scalar(rng, pres->field()));
}

MorphismWord random_word(Rng& rng, const PresentationPtr& source, std::size_t ell,
                         std::size_t depth, bool associative_only) {
    MorphismWord w(source, ell);
    for (std::size_t k = 0; k < depth; ++k) {
        const PresentationPtr& at = w.target();
        switch (rng() % 5) {
        case 0:
            w.push(GenLatticeBaseChange{random_unimodular(rng, at->rank(), 3)});
            break;
        case 1: {
            std::size_t i = rng() % ell;
            std::size_t j = (i + 1 + rng() % (ell - 1)) % ell;
            w.push(int_elementary(at, ell, i, j, random_monomial(rng, at, 2)));
            break;
        }
        case 2: {
            std::vector<TorusElement> units;
            for (std::size_t i = 0; i < ell; ++i) units.push_back(random_monomial(rng, at, 2));
            w.push(int_diagonal(at, units));
            break;
        }
        case 3: {
            std::vector<std::size_t> perm(ell);
            for (std::size_t i = 0; i < ell; ++i) perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), rng);
            w.push(int_permutation(at, ell, perm));
            break;
        }
        default:
            w.push(GenIotaOp{});
            if (associative_only) w.push(GenIotaOp{});
            break;
        }
    }
    if (associative_only && !w.is_associative()) w.push(GenIotaOp{});
    return w;
}

} // namespace qtorus
