#include "qtorus/lemma_suite.hpp"

#include <functional>

#include "qtorus/random_gen.hpp"

namespace qtorus {

namespace {

std::vector<LatticePoint> window_points(std::size_t n, Int w) {
    std::vector<LatticePoint> pts;
    LatticePoint cur(n, -w);
    while (true) {
        pts.push_back(cur);
        std::size_t ax = 0;
        while (ax < n && cur[ax] == w) cur[ax++] = -w;
        if (ax == n) break;
        ++cur[ax];
    }
    return pts;
}

struct WindowOperator {
    std::vector<LatticePoint> pts;
    std::map<LatticePoint, std::size_t> index;
    FieldKind field;
    // column c: image terms as (inside index, coeff) and whether anything
    // falls outside the window
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> inside;
    std::vector<std::vector<Scalar>> outside_rows; // built lazily via map

    std::map<LatticePoint, std::size_t> outside_index;
    std::vector<std::map<std::size_t, Scalar>> outside_cols;
};

WindowOperator build_operator(const TorusElement& d, Int w,
                              const std::function<TorusElement(const TorusElement&)>& op) {
    const auto& pres = d.pres();
    WindowOperator out;
    out.field = pres->field();
    out.pts = window_points(pres->rank(), w);
    for (std::size_t i = 0; i < out.pts.size(); ++i) out.index[out.pts[i]] = i;
    out.inside.resize(out.pts.size());
    out.outside_cols.resize(out.pts.size());
    for (std::size_t c = 0; c < out.pts.size(); ++c) {
        TorusElement img = op(TorusElement::monomial(pres, out.pts[c], Scalar::integer(1)));
        for (const auto& [lam, coeff] : img.terms()) {
            auto it = out.index.find(lam);
            if (it != out.index.end()) {
                out.inside[c].emplace_back(it->second, coeff);
            } else {
                auto [oit, inserted] = out.outside_index.try_emplace(lam, out.outside_index.size());
                out.outside_cols[c][oit->second] = coeff;
            }
        }
    }
    return out;
}

// basis vectors (in window coordinates) of the largest subspace of
// ker(outside constraints) invariant under the operator
std::vector<SVec> stable_subspace(const WindowOperator& op) {
    std::size_t dim = op.pts.size();
    SMat constraints(op.outside_index.size(), dim, op.field);
    for (std::size_t c = 0; c < dim; ++c)
        for (const auto& [r, v] : op.outside_cols[c]) constraints.at(r, c) = v;
    std::vector<SVec> basis = s_kernel(std::move(constraints));

    auto apply = [&](const SVec& v) {
        SVec img(dim, Scalar::zero(op.field));
        for (std::size_t c = 0; c < dim; ++c) {
            if (v[c].is_zero()) continue;
            for (const auto& [r, coeff] : op.inside[c]) img[r] = img[r] + coeff * v[c];
        }
        return img;
    };

    while (!basis.empty()) {
        std::size_t k = basis.size();
        // keep c with apply(B c) in span(B): kernel of [L B | -B] projected
        SMat stacked(dim, 2 * k, op.field);
        for (std::size_t j = 0; j < k; ++j) {
            SVec img = apply(basis[j]);
            for (std::size_t r = 0; r < dim; ++r) {
                stacked.at(r, j) = img[r];
                stacked.at(r, k + j) = -basis[j][r];
            }
        }
        std::vector<SVec> pairs = s_kernel(std::move(stacked));
        // span of the projected c-parts
        SMat proj(k, pairs.size(), op.field);
        for (std::size_t c = 0; c < pairs.size(); ++c)
            for (std::size_t r = 0; r < k; ++r) proj.at(r, c) = pairs[c][r];
        // extract an independent generating set of columns via the kernel
        // of nothing: use rank-revealing elimination on the transpose
        std::vector<SVec> coeffs;
        {
            // gather columns, reduce to a basis by incremental rank test
            std::vector<SVec> cols;
            for (std::size_t c = 0; c < pairs.size(); ++c) {
                SVec col(k, Scalar::zero(op.field));
                for (std::size_t r = 0; r < k; ++r) col[r] = proj.at(r, c);
                cols.push_back(std::move(col));
            }
            std::size_t rank_so_far = 0;
            SMat acc(k, cols.size(), op.field);
            std::size_t used = 0;
            for (const auto& col : cols) {
                for (std::size_t r = 0; r < k; ++r) acc.at(r, used) = col[r];
                SMat sub(k, used + 1, op.field);
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c2 = 0; c2 <= used; ++c2) sub.at(r, c2) = acc.at(r, c2);
                std::size_t rk = s_rank(std::move(sub));
                if (rk > rank_so_far) {
                    rank_so_far = rk;
                    coeffs.push_back(col);
                    ++used;
                }
            }
        }
        if (coeffs.size() == k) break; // stable
        std::vector<SVec> next;
        for (const auto& c : coeffs) {
            SVec v(dim, Scalar::zero(op.field));
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t r = 0; r < dim; ++r) v[r] = v[r] + basis[j][r] * c[j];
            next.push_back(std::move(v));
        }
        basis = std::move(next);
    }
    return basis;
}

bool support_in_origin(const TorusElement& a) {
    for (const auto& [lam, c] : a.terms())
        for (Int v : lam)
            if (v != 0) return false;
    return true;
}

} // namespace

bool left_mult_has_no_eigenpair(const TorusElement& d, Int window) {
    const auto& pres = d.pres();
    WindowOperator op =
        build_operator(d, window, [&](const TorusElement& q) { return qt_mul(d, q); });
    (void)pres;
    return stable_subspace(op).empty();
}

bool ad_action_is_nilpotent_on_window(const TorusElement& d, Int window) {
    WindowOperator op =
        build_operator(d, window, [&](const TorusElement& q) { return qt_commutator(d, q); });
    std::vector<SVec> basis = stable_subspace(op);
    std::size_t k = basis.size();
    if (k == 0) return true;
    std::size_t dim = op.pts.size();

    // matrix C of the action on the stable subspace
    SMat bmat(dim, k, op.field);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t r = 0; r < dim; ++r) bmat.at(r, j) = basis[j][r];
    std::vector<SVec> c_cols;
    for (std::size_t j = 0; j < k; ++j) {
        SVec img(dim, Scalar::zero(op.field));
        for (std::size_t c = 0; c < dim; ++c) {
            if (basis[j][c].is_zero()) continue;
            for (const auto& [r, coeff] : op.inside[c]) img[r] = img[r] + coeff * basis[j][c];
        }
        auto sol = s_solve(bmat, img);
        if (!sol) return false; // not invariant: cannot certify
        c_cols.push_back(std::move(*sol));
    }
    // nilpotency: C^k = 0
    std::vector<SVec> power = c_cols;
    auto mul_c = [&](const std::vector<SVec>& m) {
        std::vector<SVec> r(k, SVec(k, Scalar::zero(op.field)));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t t = 0; t < k; ++t) r[j][i] = r[j][i] + c_cols[j][t] * m[t][i];
        return r;
    };
    for (std::size_t step = 1; step < k; ++step) power = mul_c(power);
    for (const auto& col : power)
        for (const auto& v : col)
            if (!v.is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------

namespace {

DegreeBasis random_degree_basis(Rng& rng, std::size_t n) {
    return DegreeBasis(random_unimodular(rng, n, 3));
}

} // namespace

LemmaReport lemma_deg_prop(const PresentationPtr& p, const SuiteOptions& o) {
    LemmaReport rep{"deg-prop", 0, 0, ""};
    Rng rng(o.seed);
    for (std::size_t t = 0; t < o.trials; ++t) {
        ++rep.cases;
        DegreeBasis eps = random_degree_basis(rng, p->rank());
        TorusElement a = random_nonzero_element(rng, p, 4, 3);
        TorusElement b = random_nonzero_element(rng, p, 4, 3);
        bool ok = *degree(qt_mul(a, b), eps) == *degree(a, eps) + *degree(b, eps);
        auto dsum = degree(a + b, eps);
        if (dsum && *dsum > std::max(*degree(a, eps), *degree(b, eps))) ok = false;
        Scalar s = random_nonzero_scalar(rng, p->field());
        if (*degree(a.scaled(s), eps) != *degree(a, eps)) ok = false;
        if (!ok) ++rep.violations;
    }
    return rep;
}

LemmaReport lemma_dpm(const PresentationPtr& p, const SuiteOptions& o) {
    LemmaReport rep{"dpm", 0, 0, ""};
    Rng rng(o.seed + 1);
    DegreeBasis eps = DegreeBasis::standard(p->rank());
    for (std::size_t t = 0; t < o.trials; ++t) {
        ++rep.cases;
        ModVector v(p, o.ell);
        while (v.is_zero())
            for (auto& c : v.coords) c = random_element(rng, p, 3, 3);
        TorusElement q = random_nonzero_element(rng, p, 3, 3);
        ModVector vq = v.right_mul(q);
        if (vq.is_zero() || *vec_degree(vq, eps) != *vec_degree(v, eps) + *degree(q, eps))
            ++rep.violations;
    }
    return rep;
}

LemmaReport lemma_diag_q(const PresentationPtr& p, const SuiteOptions& o) {
    LemmaReport rep{"diag-q", 0, 0, ""};
    Rng rng(o.seed + 2);
    Int w = p->rank() >= 3 ? std::min<Int>(o.window, 1) : o.window;
    while (rep.cases < o.trials) {
        if (rep.cases % 2 == 0) {
            // (a): d with support not inside {0}
            TorusElement d = random_nonzero_element(rng, p, 2, 2);
            if (support_in_origin(d)) d = d + TorusElement::generator(p, rng() % p->rank());
            ++rep.cases;
            if (!left_mult_has_no_eigenpair(d, w)) ++rep.violations;
        } else {
            // (b): non-central d (commutative tori have none; record as ok)
            TorusElement d = random_nonzero_element(rng, p, 3, 2);
            if (centre_split(d).bracket.is_zero()) {
                LatticePoint lam(p->rank(), 0);
                lam[rng() % p->rank()] = 1;
                d = d + TorusElement::monomial(p, lam, Scalar::integer(1));
            }
            ++rep.cases;
            if (centre_split(d).bracket.is_zero()) continue;
            if (!ad_action_is_nilpotent_on_window(d, w)) ++rep.violations;
        }
    }
    return rep;
}

LemmaReport lemma_qua_pro33(const PresentationPtr& p, const SuiteOptions& o) {
    LemmaReport rep{"qua-pro33", 0, 0, ""};
    Rng rng(o.seed + 3);
    for (std::size_t t = 0; t < o.trials; ++t) {
        ++rep.cases;
        TorusElement a = random_element(rng, p, 5, 3);
        CentreSplit s = centre_split(a);
        bool ok = (s.central + s.bracket) == a;
        ok = ok && qt_commutator(s.central, random_element(rng, p, 3, 2)).is_zero();
        // each noncentral point is a scalar multiple of a commutator
        // [x^alpha, x^beta] with alpha + beta = lambda; probe one point
        if (ok && !s.bracket.is_zero()) {
            const auto& [lam, coeff] = *s.bracket.terms().begin();
            bool witnessed = false;
            for (std::size_t ax = 0; ax < p->rank() && !witnessed; ++ax) {
                LatticePoint alpha(p->rank(), 0), beta = lam;
                alpha[ax] = 1;
                beta[ax] -= 1;
                Scalar c1 = cocycle(*p, alpha, beta);
                Scalar c2 = cocycle(*p, beta, alpha);
                // x^alpha x^beta - x^beta x^alpha = (c1 - c2) x^lambda
                if (c1 != c2) witnessed = true;
            }
            ok = witnessed;
        }
        if (!ok) ++rep.violations;
    }
    return rep;
}

LemmaReport lemma_cc(const PresentationPtr& p, const SuiteOptions& o) {
    LemmaReport rep{"cc", 0, 0, ""};
    Rng rng(o.seed + 4);
    for (std::size_t t = 0; t < o.trials; ++t) {
        ++rep.cases;
        TorusMatrix x = random_matrix(rng, p, o.ell, 3, 2);
        GlSplit s = gl_split(x);
        bool ok = centre_split(s.central).bracket.is_zero() && in_sl(s.sl_part);
        ok = ok && (s.sl_part + TorusMatrix::identity(p, o.ell).scaled(s.central)) == x;
        // uniqueness: central part is forced by the trace
        if (!ok) ++rep.violations;
    }
    return rep;
}

LemmaReport lemma_ctd_sl(const PresentationPtr& p, const SuiteOptions& o) {
    LemmaReport rep{"ctd-sl", 0, 0, ""};
    Rng rng(o.seed + 5);
    std::vector<TorusMatrix> gens = sl_generators(p, o.ell);
    CentralLattice xi = central_lattice(*p);
    for (std::size_t t = 0; t < o.trials; ++t) {
        ++rep.cases;
        // random central monomial from the lattice basis
        TorusElement z = TorusElement::unit(p);
        for (std::size_t r = 0; r < xi.basis.rows; ++r) {
            long e = static_cast<long>(rng() % 3) - 1;
            if (e == 0) continue;
            LatticePoint row(p->rank());
            for (std::size_t j = 0; j < p->rank(); ++j) row[j] = e * xi.basis.at_int(r, j);
            z = qt_mul(z, TorusElement::monomial(p, row, Scalar::integer(1)));
        }
        const TorusMatrix& g = gens[rng() % gens.size()];
        TorusMatrix x = random_matrix(rng, p, o.ell, 2, 2);
        if (lie_bracket(g, x.scaled(z)) != lie_bracket(g, x).scaled(z)) ++rep.violations;
    }
    return rep;
}

LemmaReport lemma_como1(const PresentationPtr& p, const SuiteOptions& o) {
    LemmaReport rep{"como1", 0, 0, ""};
    Rng rng(o.seed + 6);
    // a few systems per presentation, probed repeatedly
    std::vector<OrthogonalSystem> systems;
    for (int k = 0; k < 3; ++k) {
        MorphismWord w = random_word(rng, p, o.ell, 1 + rng() % 3, true);
        try {
            systems.push_back(system_from_morphism(w));
        } catch (const Error&) {
            // verification inside system_from_morphism counts as a violation
            ++rep.violations;
        }
    }
    for (std::size_t t = 0; t < o.trials; ++t) {
        ++rep.cases;
        if (systems.empty()) break;
        const OrthogonalSystem& sys = systems[rng() % systems.size()];
        const PresentationPtr& at = sys.idempotents.front().pres();
        std::size_t i = rng() % sys.idempotents.size();
        std::size_t j = rng() % sys.idempotents.size();
        TorusMatrix prod = mat_mul(sys.idempotents[i], sys.idempotents[j]);
        bool ok = (i == j) ? prod == sys.idempotents[i] : prod.is_zero();
        // recomposition of a random vector
        ModVector v(at, o.ell);
        for (auto& c : v.coords) c = random_element(rng, at, 2, 2);
        ModVector sum(at, o.ell);
        for (const auto& e : sys.idempotents) sum = sum + apply_matrix(e, v);
        ok = ok && sum == v;
        if (!ok) ++rep.violations;
    }
    return rep;
}

LemmaReport lemma_lem811(const PresentationPtr& p, const SuiteOptions& o) {
    LemmaReport rep{"lem811", 0, 0, ""};
    Rng rng(o.seed + 7);
    for (std::size_t t = 0; t < o.trials; ++t) {
        // random indivisible u0 in V^+
        ModVector u0(p, o.ell);
        for (auto& c : u0.coords)
            for (int pts = static_cast<int>(rng() % 3); pts-- > 0;) {
                LatticePoint lam(p->rank());
                for (auto& v : lam) v = static_cast<Int>(rng() % 3);
                c.add_term(lam, random_scalar(rng, p->field()));
            }
        if (u0.is_zero() || !is_indivisible(u0)) continue;
        ++rep.cases;
        TorusElement q = random_nonzero_element(rng, p, 3, 3);
        if (in_positive_part(u0.right_mul(q)) != in_positive_part(q)) ++rep.violations;
    }
    return rep;
}

LemmaReport lemma_lem812(const PresentationPtr& p, const SuiteOptions& o) {
    LemmaReport rep{"lem812", 0, 0, ""};
    Rng rng(o.seed + 8);
    DegreeBasis eps = DegreeBasis::standard(p->rank());
    // complemented U with a minimal vector of positive degree
    MorphismWord w(p, o.ell);
    w.push(int_elementary(p, o.ell, o.ell - 1, 0, TorusElement::generator(p, 0)));
    OrthogonalSystem sys = system_from_morphism(w);
    SubmoduleSpec u = submodule(sys.idempotents[0]);
    ModVector u0 = minimal_vector(u, eps, 6);
    long d0 = *vec_degree(u0, eps);

    for (std::size_t t = 0; t < o.trials; ++t) {
        ++rep.cases;
        // random v in V^+ of degree < d0 slices paired with q in Q^{++}
        ModVector v(p, o.ell);
        for (auto& c : v.coords)
            for (int pts = static_cast<int>(rng() % 2) + 1; pts-- > 0;) {
                LatticePoint lam(p->rank());
                long budget = d0 > 0 ? d0 - 1 : 0;
                for (auto& x : lam) x = static_cast<Int>(rng() % (budget + 1));
                c.add_term(lam, random_scalar(rng, p->field()));
            }
        TorusElement q(p);
        {
            LatticePoint lam(p->rank(), 0);
            lam[rng() % p->rank()] = 1 + static_cast<Int>(rng() % 2);
            q.add_term(lam, random_nonzero_scalar(rng, p->field()));
        }
        if (v.right_mul(q) == u0) ++rep.violations;
    }
    return rep;
}

std::vector<LemmaReport> run_lemma_suites(const PresentationPtr& p, const SuiteOptions& o) {
    std::vector<LemmaReport> out;
    out.push_back(lemma_deg_prop(p, o));
    out.push_back(lemma_dpm(p, o));
    out.push_back(lemma_diag_q(p, o));
    out.push_back(lemma_qua_pro33(p, o));
    out.push_back(lemma_cc(p, o));
    out.push_back(lemma_ctd_sl(p, o));
    out.push_back(lemma_como1(p, o));
    out.push_back(lemma_lem811(p, o));
    out.push_back(lemma_lem812(p, o));
    return out;
}

} // namespace qtorus
