#include "qtorus/module.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qtorus {

ModVector ModVector::basis_vector(PresentationPtr p, std::size_t ell, std::size_t i) {
    ModVector v(std::move(p), ell);
    v.coords[i] = TorusElement::unit(v.pres);
    return v;
}

bool ModVector::is_zero() const {
    for (const auto& c : coords)
        if (!c.is_zero()) return false;
    return true;
}

bool ModVector::operator==(const ModVector& o) const {
    return ell() == o.ell() && same_presentation(pres, o.pres) && coords == o.coords;
}

ModVector ModVector::operator+(const ModVector& o) const {
    if (ell() != o.ell()) throw SizeMismatch("module vector rank mismatch");
    ModVector r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] = r.coords[i] + o.coords[i];
    return r;
}

ModVector ModVector::operator-(const ModVector& o) const {
    if (ell() != o.ell()) throw SizeMismatch("module vector rank mismatch");
    ModVector r = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) r.coords[i] = r.coords[i] - o.coords[i];
    return r;
}

ModVector ModVector::scaled(const Scalar& s) const {
    ModVector r = *this;
    for (auto& c : r.coords) c = c.scaled(s);
    return r;
}

ModVector ModVector::right_mul(const TorusElement& q) const {
    ModVector r = *this;
    for (auto& c : r.coords) c = qt_mul(c, q);
    return r;
}

std::string ModVector::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i) os << coords[i].str() << (i + 1 < coords.size() ? "; " : "");
    os << ")";
    return os.str();
}

ModVector apply_matrix(const TorusMatrix& m, const ModVector& v) {
    if (m.size() != v.ell()) throw SizeMismatch("matrix/vector size mismatch");
    ModVector r(v.pres, v.ell());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t k = 0; k < m.size(); ++k)
            if (!m.at(i, k).is_zero() && !v.coords[k].is_zero())
                r.coords[i] = r.coords[i] + qt_mul(m.at(i, k), v.coords[k]);
    return r;
}

std::optional<long> vec_degree(const ModVector& v, const DegreeBasis& eps) {
    std::optional<long> best;
    for (const auto& c : v.coords) {
        auto d = degree(c, eps);
        if (d && (!best || *d > *best)) best = d;
    }
    return best;
}

bool in_positive_part(const ModVector& v) {
    for (const auto& c : v.coords)
        if (!in_positive_part(c)) return false;
    return true;
}

bool is_indivisible(const ModVector& u) {
    if (u.is_zero()) throw ZeroVector("indivisibility is defined for nonzero vectors");
    if (!in_positive_part(u)) throw NotPositive("indivisibility is defined on V^+");
    std::size_t n = u.pres->rank();
    for (std::size_t axis = 0; axis < n; ++axis) {
        bool axis_divides_all = true;
        for (const auto& c : u.coords)
            if (!c.is_zero() && !divides(axis, c)) {
                axis_divides_all = false;
                break;
            }
        if (axis_divides_all) return false;
    }
    return true;
}

OrthogonalSystem make_orthogonal_system(std::vector<TorusMatrix> idempotents) {
    if (idempotents.empty()) throw SystemInvalid("empty orthogonal system");
    const auto& pres = idempotents.front().pres();
    std::size_t ell = idempotents.front().size();
    TorusMatrix sum(pres, ell);
    for (std::size_t i = 0; i < idempotents.size(); ++i) {
        for (std::size_t j = 0; j < idempotents.size(); ++j) {
            TorusMatrix prod = mat_mul(idempotents[i], idempotents[j]);
            if (i == j ? prod != idempotents[i] : !prod.is_zero())
                throw SystemInvalid("e_i e_j != delta_ij e_i at (" + std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
        }
        sum = sum + idempotents[i];
    }
    if (sum != TorusMatrix::identity(pres, ell))
        throw SystemInvalid("idempotents do not sum to the identity");
    return OrthogonalSystem{std::move(idempotents)};
}

OrthogonalSystem system_from_morphism(const MorphismWord& w) {
    if (!w.is_associative())
        throw NotAssociativeWord("an odd number of anti generators is not associative");
    if (w.has_centroid_twist())
        throw NotAssociativeWord("centroid twists are not associative on matrix units");
    std::vector<TorusMatrix> images;
    for (std::size_t i = 0; i < w.ell(); ++i)
        images.push_back(w.apply(TorusMatrix::matrix_unit(w.source(), w.ell(), i, i)));
    return make_orthogonal_system(std::move(images));
}

SubmoduleSpec submodule(const TorusMatrix& e) {
    if (mat_mul(e, e) != e) throw SystemInvalid("submodule spec needs an idempotent");
    return SubmoduleSpec{e};
}

namespace {

// lattice points in N^n with eps-trace <= t, in lexicographic order
void enumerate_points(const IVec& weights, long t, LatticePoint& cur, std::size_t axis,
                      std::vector<LatticePoint>& out) {
    if (axis == weights.size()) {
        out.push_back(cur);
        return;
    }
    for (Int v = 0;; ++v) {
        cur[axis] = v;
        long used = 0;
        for (std::size_t i = 0; i <= axis; ++i) used += cur[i] * weights[i];
        if (used > t) break;
        enumerate_points(weights, t, cur, axis + 1, out);
    }
    cur[axis] = 0;
}

std::vector<LatticePoint> positive_slice_points(const DegreeBasis& eps, long t) {
    if (!eps.proper_on_positive())
        throw NotPositive("slice enumeration needs positive trace weights");
    std::vector<LatticePoint> pts;
    if (t < 0) return pts;
    LatticePoint cur(eps.weights().size(), 0);
    enumerate_points(eps.weights(), t, cur, 0, pts);
    return pts;
}

} // namespace

std::vector<ModVector> plus_slice(const SubmoduleSpec& u, long t, const DegreeBasis& eps) {
    const auto& pres = u.e.pres();
    std::size_t ell = u.e.size();
    std::vector<LatticePoint> pts = positive_slice_points(eps, t);
    if (pts.empty()) return {};

    // columns: basis x^lambda e_i of V_t; rows: coordinates of (e-1) images
    std::vector<std::pair<std::size_t, LatticePoint>> cols;
    for (std::size_t i = 0; i < ell; ++i)
        for (const auto& lam : pts) cols.emplace_back(i, lam);

    std::map<std::pair<std::size_t, LatticePoint>, std::size_t> row_index;
    std::vector<std::map<std::size_t, Scalar>> col_entries(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        ModVector b(pres, ell);
        b.coords[cols[c].first] = TorusElement::monomial(pres, cols[c].second, Scalar::integer(1));
        ModVector img = apply_matrix(u.e, b) - b;
        for (std::size_t i = 0; i < ell; ++i)
            for (const auto& [lam, coeff] : img.coords[i].terms()) {
                auto key = std::make_pair(i, lam);
                auto [it, inserted] = row_index.try_emplace(key, row_index.size());
                col_entries[c][it->second] = coeff;
            }
    }

    SMat m(row_index.size(), cols.size(), pres->field());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, coeff] : col_entries[c]) m.at(r, c) = coeff;

    std::vector<ModVector> basis;
    for (const SVec& k : s_kernel(std::move(m))) {
        ModVector v(pres, ell);
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (!k[c].is_zero()) v.coords[cols[c].first].add_term(cols[c].second, k[c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

// leading term in degree-then-lex order
std::pair<LatticePoint, Scalar> leading_term(const TorusElement& a, const DegreeBasis& eps) {
    const LatticePoint* best = nullptr;
    for (const auto& [lam, c] : a.terms()) {
        if (!best) {
            best = &lam;
            continue;
        }
        long tb = eps.trace(*best), tl = eps.trace(lam);
        if (tl > tb || (tl == tb && lam > *best)) best = &lam;
    }
    return {*best, a.terms().at(*best)};
}

} // namespace

ModVector minimal_vector(const SubmoduleSpec& u, const DegreeBasis& eps, long t_max) {
    for (long t = 0; t <= t_max; ++t) {
        std::vector<ModVector> basis = plus_slice(u, t, eps);
        if (basis.empty()) continue;
        ModVector v = basis.front();
        // normalize: leading coefficient of the first nonzero coordinate
        for (const auto& c : v.coords)
            if (!c.is_zero()) {
                v = v.scaled(leading_term(c, eps).second.inv());
                break;
            }
        if (!is_indivisible(v))
            throw VerificationFailed("minimal vector is divisible; this cannot happen");
        return v;
    }
    throw WindowExhausted("no nonzero vector of degree <= " + std::to_string(t_max) +
                          " in the submodule");
}

std::optional<TorusElement> solve_membership(const ModVector& v, const ModVector& u0,
                                             const DegreeBasis& eps) {
    if (u0.is_zero()) throw ZeroVector("membership base vector must be nonzero");
    const auto& pres = u0.pres;
    std::size_t n = pres->rank();
    if (v.is_zero()) return TorusElement(pres);

    std::size_t pivot = 0;
    while (u0.coords[pivot].is_zero()) ++pivot;
    const TorusElement& base = u0.coords[pivot];
    const TorusElement& target = v.coords[pivot];
    if (target.is_zero()) return std::nullopt; // u0_pivot * q = 0 forces q = 0

    // per-axis extremes add under multiplication, so the support box of q
    // is forced by base and target
    IVec lo(n), hi(n);
    for (std::size_t ax = 0; ax < n; ++ax) {
        Int bmin = 0, bmax = 0, tmin = 0, tmax = 0;
        bool first = true;
        for (const auto& [lam, c] : base.terms()) {
            if (first || lam[ax] < bmin) bmin = lam[ax];
            if (first || lam[ax] > bmax) bmax = lam[ax];
            first = false;
        }
        first = true;
        for (const auto& [lam, c] : target.terms()) {
            if (first || lam[ax] < tmin) tmin = lam[ax];
            if (first || lam[ax] > tmax) tmax = lam[ax];
            first = false;
        }
        lo[ax] = tmin - bmin;
        hi[ax] = tmax - bmax;
        if (lo[ax] > hi[ax]) return std::nullopt;
    }

    auto in_box = [&](const LatticePoint& p) {
        for (std::size_t ax = 0; ax < n; ++ax)
            if (p[ax] < lo[ax] || p[ax] > hi[ax]) return false;
        return true;
    };

    // graded division on the pivot coordinate: the lex-leading term of
    // base * q never cancels, so each step is forced
    auto lex_leading = [](const TorusElement& a) {
        return std::prev(a.terms().end()); // std::map is lex-ordered
    };

    TorusElement q(pres);
    TorusElement r = target;
    std::size_t guard = 0;
    while (!r.is_zero()) {
        if (++guard > 100000) throw VerificationFailed("graded division did not terminate");
        auto rl = lex_leading(r);
        auto bl = lex_leading(base);
        LatticePoint beta(n);
        for (std::size_t ax = 0; ax < n; ++ax) beta[ax] = rl->first[ax] - bl->first[ax];
        if (!in_box(beta)) return std::nullopt;
        Scalar coeff = rl->second / (bl->second * cocycle(*pres, bl->first, beta));
        TorusElement term = TorusElement::monomial(pres, beta, coeff);
        q = q + term;
        r = r - qt_mul(base, term);
    }

    // verify on every coordinate
    if (u0.right_mul(q) == v) return q;
    return std::nullopt;
}

long recommended_window(const TorusMatrix& e, const DegreeBasis& eps) {
    long d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = 0; j < e.size(); ++j)
            for (const auto& [lam, c] : e.at(i, j).terms())
                d = std::max(d, std::labs(eps.trace(lam)));
    return 2 * d + 4;
}

CyclicCertificate certify_cyclic(const SubmoduleSpec& u, const DegreeBasis& eps, long t_max) {
    CyclicCertificate out{CyclicCertificate::Kind::WindowExhausted, {}, {}, t_max};
    try {
        out.generator = minimal_vector(u, eps, t_max);
    } catch (const WindowExhausted&) {
        return out;
    }
    long d0 = *vec_degree(out.generator, eps);

    for (long t = 0; t <= t_max; ++t) {
        std::vector<ModVector> basis = plus_slice(u, t, eps);
        std::size_t expected =
            t - d0 >= 0 ? positive_slice_points(eps, t - d0).size() : 0;
        for (const auto& v : basis) {
            auto q = solve_membership(v, out.generator, eps);
            if (!q || !in_positive_part(*q)) {
                out.kind = CyclicCertificate::Kind::CounterWitness;
                out.witness = v;
                out.window = t;
                return out;
            }
        }
        if (basis.size() != expected)
            throw VerificationFailed("slice dimension mismatch despite solvable members");
    }

    out.kind = t_max >= recommended_window(u.e, eps) ? CyclicCertificate::Kind::Cyclic
                                                     : CyclicCertificate::Kind::WindowExhausted;
    return out;
}

Conjugator build_conjugator(const OrthogonalSystem& o, const DegreeBasis& eps, long t_max) {
    std::size_t ell = o.idempotents.size();
    const auto& pres = o.idempotents.front().pres();
    if (ell != o.idempotents.front().size())
        throw SizeMismatch("conjugator construction needs |O| = ell");

    Conjugator out;
    out.g = TorusMatrix(pres, ell);
    out.g_inv = TorusMatrix(pres, ell);

    for (std::size_t i = 0; i < ell; ++i) {
        long window = t_max > 0 ? t_max : recommended_window(o.idempotents[i], eps);
        ModVector ui;
        try {
            ui = minimal_vector(submodule(o.idempotents[i]), eps, window);
        } catch (const WindowExhausted&) {
            throw WindowExhausted("V_" + std::to_string(i + 1) +
                                  " has no minimal vector within the window");
        }
        out.generators.push_back(ui);
        for (std::size_t k = 0; k < ell; ++k) out.g.at(k, i) = ui.coords[k];
    }

    // h_{ij} solves u_i q = (j-th column of e_i); existence of all h
    // entries proves each V_i = u_i Q (cyclic)
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t j = 0; j < ell; ++j) {
            ModVector column(pres, ell);
            for (std::size_t k = 0; k < ell; ++k) column.coords[k] = o.idempotents[i].at(k, j);
            auto q = solve_membership(column, out.generators[i], eps);
            if (!q) {
                // distinguish a genuinely non-cyclic module from a short window
                CyclicCertificate cert = certify_cyclic(
                    submodule(o.idempotents[i]), eps,
                    t_max > 0 ? t_max : recommended_window(o.idempotents[i], eps));
                if (cert.kind == CyclicCertificate::Kind::CounterWitness)
                    throw NotCyclic("V_" + std::to_string(i + 1) + " is not cyclic; witness " +
                                    cert.witness.str());
                throw NotInvertible("membership solving failed for column " + std::to_string(j + 1) +
                                    " of V_" + std::to_string(i + 1));
            }
            out.g_inv.at(i, j) = *q;
        }

    TorusMatrix id = TorusMatrix::identity(pres, ell);
    if (mat_mul(out.g, out.g_inv) != id || mat_mul(out.g_inv, out.g) != id)
        throw NotInvertible("assembled conjugator is not invertible");
    for (std::size_t i = 0; i < ell; ++i) {
        TorusMatrix conj = mat_mul(mat_mul(out.g, TorusMatrix::matrix_unit(pres, ell, i, i)), out.g_inv);
        if (conj != o.idempotents[i])
            throw SystemInvalid("conjugator does not transport the standard system");
    }
    return out;
}

} // namespace qtorus
