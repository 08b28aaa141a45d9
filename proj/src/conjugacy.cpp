#include "qtorus/conjugacy.hpp"

#include <numeric>

#include "qtorus/letters.hpp"
#include "qtorus/random_gen.hpp"

namespace qtorus {

ConjugacyReport main_conjugacy(const MorphismWord& w, const DegreeBasis& eps, long t_max,
                               unsigned long spot_check_seed) {
    if (!w.is_associative() || w.has_centroid_twist())
        throw NotAssociativeWord("the pipeline consumes associative words only");

    // multiplicativity spot checks: structured words are associative by
    // construction, this guards hand-written word files
    Rng rng(spot_check_seed);
    for (int probe = 0; probe < 4; ++probe) {
        TorusMatrix x = random_matrix(rng, w.source(), w.ell(), 2, 2);
        TorusMatrix y = random_matrix(rng, w.source(), w.ell(), 2, 2);
        if (w.apply(mat_mul(x, y)) != mat_mul(w.apply(x), w.apply(y)))
            throw NotAssociativeWord("word failed a multiplicativity spot check");
    }

    OrthogonalSystem o = system_from_morphism(w);
    Conjugator conj = build_conjugator(o, eps, t_max);

    ConjugacyReport report;
    report.g = conj.g;
    report.g_inv = conj.g_inv;
    report.generators = conj.generators;
    for (const auto& u : conj.generators)
        report.generator_degrees.push_back(vec_degree(u, eps).value_or(0));

    // the literal Main Theorem identity on every basis element of h'
    StandardMad source_mad = standard_mad(w.source(), w.ell());
    for (std::size_t k = 0; k < source_mad.basis.size(); ++k) {
        TorusMatrix lhs = w.apply(source_mad.basis[k]);
        TorusMatrix b_target = TorusMatrix::matrix_unit(w.target(), w.ell(), k, k) -
                               TorusMatrix::matrix_unit(w.target(), w.ell(), k + 1, k + 1);
        TorusMatrix rhs = mat_mul(mat_mul(conj.g, b_target), conj.g_inv);
        if (lhs != rhs)
            throw VerificationFailed("MAD transport failed on basis element " +
                                     std::to_string(k + 1));
    }
    report.mad_check = true;
    return report;
}

namespace {

// smallest c in the coefficient field with c^ell = value (value a root of
// unity); enlarges the cyclotomic order when necessary
struct RootExtraction {
    Scalar root;
    unsigned new_order = 0; // 0 when no enlargement happened
    bool ok = false;
    std::string failure;
};

RootExtraction scalar_root_in_field(const Scalar& value, unsigned long ell) {
    RootExtraction out;
    if (value.is_one()) {
        out.root = Scalar::one(value.field());
        out.ok = true;
        return out;
    }
    if (value.field().kind == ScalarKind::Prime) {
        std::int64_t p = value.characteristic();
        for (std::int64_t c = 1; c < p; ++c)
            if (Scalar::prime_element(p, c).pow(static_cast<long>(ell)) == value) {
                out.root = Scalar::prime_element(p, c);
                out.ok = true;
                return out;
            }
        out.failure = "no " + std::to_string(ell) + "-th root in F_" + std::to_string(p);
        return out;
    }
    auto mono = value.monomial_form();
    if (!mono || mono->s_exponent != 0) {
        out.failure = "scalar root target is not a root of unity";
        return out;
    }
    // value = rho^t with rho of order M: c = rho^u needs u ell = t (mod M)
    long M = static_cast<long>(mono->root_order);
    long t = ((mono->root_exponent % M) + M) % M;
    long e = static_cast<long>(ell % static_cast<unsigned long>(M));
    long g = std::gcd(e, M); // gcd(0, M) = M
    if (t % g == 0) {
        long u = 0;
        long mg = M / g;
        if (e != 0 && mg > 1)
            u = static_cast<long>((__int128)((t / g) % mg) * mod_inv((e / g) % mg, mg) % mg);
        Scalar cand = mono->root.pow(u);
        if (cand.pow(static_cast<long>(ell)) == value) {
            out.root = cand;
            out.ok = true;
            return out;
        }
    }
    out.failure = "no " + std::to_string(ell) + "-th root inside the coefficient field";
    return out;
}

RootExtraction scalar_root(const Scalar& value, unsigned long ell) {
    RootExtraction out = scalar_root_in_field(value, ell);
    if (out.ok || value.field().kind == ScalarKind::Prime) return out;
    auto mono = value.monomial_form();
    if (!mono || mono->s_exponent != 0) return out;
    // enlarge the cyclotomic order so the root exists, then solve there
    unsigned m_old = std::max(1u, value.field().order);
    unsigned m_new = static_cast<unsigned>(
        std::lcm<unsigned long>(m_old, mono->root_order * ell));
    FieldKind big = value.field().kind == ScalarKind::RationalFunction
                        ? FieldKind::rational_function(m_new)
                        : FieldKind::cyclotomic(m_new);
    RootExtraction enlarged = scalar_root_in_field(value.coerced(big), ell);
    if (enlarged.ok) enlarged.new_order = m_new;
    return enlarged;
}

PresentationPtr enlarge_presentation(const PresentationPtr& p, unsigned m_new) {
    FieldKind f = p->field().kind == ScalarKind::RationalFunction
                      ? FieldKind::rational_function(m_new)
                      : FieldKind::cyclotomic(m_new);
    std::size_t n = p->rank();
    std::vector<std::vector<Scalar>> upper(n, std::vector<Scalar>());
    for (std::size_t i = 0; i < n; ++i) {
        upper[i].assign(n, Scalar::one(f));
        for (std::size_t j = i + 1; j < n; ++j) upper[i][j] = p->q(i, j).coerced(f);
    }
    return share(Presentation(n, upper, f));
}

} // namespace

RootSolveResult solve_commuting_roots(const PresentationPtr& p,
                                      const std::vector<std::pair<unsigned long, LatticePoint>>& targets) {
    RootSolveResult out;
    out.presentation = p;
    if (!is_fgc(*p)) {
        out.failure = "presentation is not fgc";
        return out;
    }
    std::size_t n = p->rank();

    // exponents first: ell_i mu_i = lambda_i over Z
    std::vector<LatticePoint> mus;
    for (const auto& [ell, lambda] : targets) {
        if (lambda.size() != n) throw SizeMismatch("target point rank mismatch");
        if (!is_central_point(*p, lambda)) {
            out.failure = "target x^lambda is not central";
            return out;
        }
        LatticePoint mu(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (lambda[i] % static_cast<Int>(ell) != 0) {
                out.failure = "divisibility fails: " + std::to_string(ell) +
                              " does not divide a coordinate of lambda";
                return out;
            }
            mu[i] = lambda[i] / static_cast<Int>(ell);
        }
        mus.push_back(std::move(mu));
    }

    // pairwise commutation of the monomial parts
    for (std::size_t a = 0; a < mus.size(); ++a)
        for (std::size_t b = a + 1; b < mus.size(); ++b) {
            Scalar sym = cocycle(*p, mus[a], mus[b]) / cocycle(*p, mus[b], mus[a]);
            if (!sym.is_one()) {
                out.failure = "monomial witnesses for targets " + std::to_string(a + 1) + " and " +
                              std::to_string(b + 1) + " do not commute";
                return out;
            }
        }

    // scalar corrections c_i with (c_i x^mu)^ell = x^lambda
    PresentationPtr cur = p;
    std::vector<Scalar> corrections;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        unsigned long ell = targets[k].first;
        Scalar twist = letter_power_factor(*cur, mus[k], static_cast<long>(ell));
        RootExtraction ext = scalar_root(twist.inv(), ell);
        if (!ext.ok) {
            out.failure = "target " + std::to_string(k + 1) + ": " + ext.failure;
            return out;
        }
        if (ext.new_order != 0) {
            cur = enlarge_presentation(cur, ext.new_order);
            for (auto& c : corrections) c = c.coerced(cur->field());
            out.extensions.push_back(ext.new_order);
            twist = letter_power_factor(*cur, mus[k], static_cast<long>(ell));
            RootExtraction again = scalar_root(twist.inv(), ell);
            if (!again.ok) {
                out.failure = "target " + std::to_string(k + 1) + ": " + again.failure;
                return out;
            }
            ext.root = again.root;
        }
        corrections.push_back(ext.root.coerced(cur->field()));
    }

    // assemble and re-verify by torus arithmetic
    for (std::size_t k = 0; k < targets.size(); ++k) {
        TorusElement y = TorusElement::monomial(cur, mus[k], corrections[k].coerced(cur->field()));
        out.witnesses.push_back(std::move(y));
    }
    for (std::size_t k = 0; k < targets.size(); ++k) {
        TorusElement power = qt_pow(out.witnesses[k], static_cast<long>(targets[k].first));
        TorusElement expect =
            TorusElement::monomial(cur, targets[k].second, Scalar::one(cur->field()));
        if (power != expect) {
            out.failure = "verification failed: y^ell != x^lambda for target " +
                          std::to_string(k + 1);
            out.witnesses.clear();
            return out;
        }
        for (std::size_t l = k + 1; l < targets.size(); ++l)
            if (!qt_commutator(out.witnesses[k], out.witnesses[l]).is_zero()) {
                out.failure = "verification failed: witnesses do not commute";
                out.witnesses.clear();
                return out;
            }
    }
    out.presentation = cur;
    out.ok = true;
    return out;
}

} // namespace qtorus
