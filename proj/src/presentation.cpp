#include "qtorus/presentation.hpp"

#include <algorithm>
#include <numeric>

namespace qtorus {

Presentation::Presentation(std::size_t n, const std::vector<std::vector<Scalar>>& upper)
    : Presentation(n, upper, FieldKind::rational()) {}

Presentation::Presentation(std::size_t n, const std::vector<std::vector<Scalar>>& upper,
                           const FieldKind& floor) {
    n_ = n;
    if (n == 0) throw SizeMismatch("presentation rank must be positive");

    // exact rational ones are neutral placeholders and do not affect the
    // coefficient field
    auto neutral = [](const Scalar& v) {
        return v.kind() == ScalarKind::Rational && v.is_one();
    };
    field_ = floor;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (i >= upper.size() || j >= upper[i].size() || neutral(upper[i][j])) continue;
            field_ = Scalar::join(field_, upper[i][j].field());
        }

    q_.assign(n * n, Scalar::one(field_));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Scalar v = (i < upper.size() && j < upper[i].size() && !neutral(upper[i][j]))
                           ? upper[i][j].coerced(field_)
                           : Scalar::one(field_);
            if (v.is_zero()) throw DivisionByZero("quantum matrix entries must be nonzero");
            q_[i * n + j] = v;
            q_[j * n + i] = v.inv();
        }
}

Presentation Presentation::commutative(std::size_t n, const FieldKind& f) {
    Presentation p;
    p.n_ = n;
    p.field_ = f;
    p.q_.assign(n * n, Scalar::one(f));
    return p;
}

const Scalar& Presentation::q(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw SizeMismatch("quantum matrix index out of range");
    return q_[i * n_ + j];
}

Presentation Presentation::opposite() const {
    Presentation p;
    p.n_ = n_;
    p.field_ = field_;
    p.q_.resize(q_.size(), Scalar::one(field_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            p.q_[i * n_ + j] = q_[j * n_ + i]; // q_ij -> q_ij^{-1} = q_ji
    return p;
}

bool Presentation::operator==(const Presentation& o) const {
    return n_ == o.n_ && field_ == o.field_ && q_ == o.q_;
}

bool same_presentation(const PresentationPtr& a, const PresentationPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

MultiplicativeForm multiplicative_form(const Presentation& p) {
    std::size_t n = p.rank();
    MultiplicativeForm f;
    f.zeta_exponents = IMat(n, n);
    f.s_exponents = IMat(n, n);

    bool initialized = false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            auto mono = p.q(i, j).monomial_form();
            if (!mono)
                throw UnsupportedScalarKind("entry q(" + std::to_string(i + 1) + "," +
                                            std::to_string(j + 1) +
                                            ") is not a root of unity times a power of s");
            if (!initialized) {
                f.root_order = mono->root_order;
                f.root = mono->root;
                initialized = true;
            }
            long a = mono->root_exponent % static_cast<long>(f.root_order);
            if (a < 0) a += static_cast<long>(f.root_order);
            f.zeta_exponents.at(i, j) = a;
            f.zeta_exponents.at(j, i) = (f.root_order - a) % static_cast<long>(f.root_order);
            f.s_exponents.at(i, j) = mono->s_exponent;
            f.s_exponents.at(j, i) = -mono->s_exponent;
        }
    if (!initialized) {
        f.root_order = 1;
        f.root = Scalar::one(p.field());
    }
    return f;
}

Presentation change_basis(const Presentation& p, const IMat& a) {
    std::size_t n = p.rank();
    if (a.rows != n || a.cols != n) throw SizeMismatch("base change must be n x n");
    if (!is_unimodular(a)) throw NotUnimodular("base change must have determinant +-1");

    std::vector<std::vector<Scalar>> upper(n, std::vector<Scalar>());
    for (std::size_t i = 0; i < n; ++i) {
        upper[i].assign(n, Scalar::one(p.field()));
        for (std::size_t j = i + 1; j < n; ++j) {
            Scalar v = Scalar::one(p.field());
            for (std::size_t s = 0; s < n; ++s)
                for (std::size_t t = 0; t < n; ++t) {
                    if (s == t || p.q(s, t).is_one()) continue;
                    Int e = to_int(a.at(i, s) * a.at(j, t));
                    if (e != 0) v = v * p.q(s, t).pow(e);
                }
            upper[i][j] = v;
        }
    }
    return Presentation(n, upper, p.field());
}

CentralLattice central_lattice(const Presentation& p) {
    std::size_t n = p.rank();
    MultiplicativeForm f = multiplicative_form(p);
    long M = static_cast<long>(f.root_order);

    // lambda central  <=>  lambda * A == 0 mod M  and  lambda * B == 0,
    // where A, B are the exponent matrices. Solve with one kernel:
    // (lambda, mu) * [[A | B], [M*I | 0]] = 0.
    IMat stacked(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            stacked.at(i, j) = f.zeta_exponents.at(i, j);
            stacked.at(i, n + j) = f.s_exponents.at(i, j);
            stacked.at(n + i, j) = (i == j) ? M : 0;
        }
    IMat ker = left_kernel(stacked);
    IMat gens(ker.rows, n);
    for (std::size_t i = 0; i < ker.rows; ++i)
        for (std::size_t j = 0; j < n; ++j) gens.at(i, j) = ker.at(i, j);

    CentralLattice out;
    out.basis = row_basis(gens);
    out.index = lattice_index(out.basis, n);
    return out;
}

bool is_central_point(const Presentation& p, const IVec& lambda) {
    std::size_t n = p.rank();
    if (lambda.size() != n) throw SizeMismatch("lattice point dimension mismatch");
    // x^lambda central iff prod_i q_ij^{lambda_i} = 1 for every j
    for (std::size_t j = 0; j < n; ++j) {
        Scalar v = Scalar::one(p.field());
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j || lambda[i] == 0 || p.q(i, j).is_one()) continue;
            v = v * p.q(i, j).pow(lambda[i]);
        }
        if (!v.is_one()) return false;
    }
    return true;
}

bool is_fgc(const Presentation& p) {
    for (std::size_t i = 0; i < p.rank(); ++i)
        for (std::size_t j = i + 1; j < p.rank(); ++j) {
            if (p.q(i, j).is_zero()) return false;
            if (!p.q(i, j).mult_order().has_value()) return false;
        }
    return true;
}

bool is_canonical_shape(const Presentation& p) {
    std::size_t n = p.rank();
    bool trailing = false; // once a trivial block is seen, all later blocks trivial
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool block_pair = (j == i + 1) && (i % 2 == 0);
            if (!block_pair && !p.q(i, j).is_one()) return false;
        }
    for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
        bool nontrivial = !p.q(2 * k, 2 * k + 1).is_one();
        if (trailing && nontrivial) return false;
        if (!nontrivial) trailing = true;
    }
    return true;
}

// ---------------------------------------------------------------------------
// canonicalization

namespace {

long gcd_with(const mpz_class& a, long m) {
    long r = to_int(((a % m) + m) % m);
    return std::gcd(r, m);
}

// mirrored congruence operations on the alternating exponent matrix S,
// with the same row operations accumulated in A (so S_new = T S T^t,
// A_new = T A)
struct Reduction {
    IMat s;   // alternating integer matrix, entries tracked exactly
    IMat a;   // accumulated base change
    long m;   // exponent modulus

    void swap_pair(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t k = 0; k < s.cols; ++k) std::swap(s.at(i, k), s.at(j, k));
        for (std::size_t k = 0; k < s.cols; ++k) std::swap(s.at(k, i), s.at(k, j));
        for (std::size_t k = 0; k < a.cols; ++k) std::swap(a.at(i, k), a.at(j, k));
    }

    // row i += c * row j, mirrored on columns
    void add_pair(std::size_t i, std::size_t j, long c) {
        if (c == 0) return;
        for (std::size_t k = 0; k < s.cols; ++k) s.at(i, k) += c * s.at(j, k);
        for (std::size_t k = 0; k < s.cols; ++k) s.at(k, i) += c * s.at(k, j);
        for (std::size_t k = 0; k < a.cols; ++k) a.at(i, k) += c * a.at(j, k);
    }

    void negate(std::size_t i) {
        for (std::size_t k = 0; k < s.cols; ++k) s.at(i, k) = -s.at(i, k);
        for (std::size_t k = 0; k < s.cols; ++k) s.at(k, i) = -s.at(k, i);
        for (std::size_t k = 0; k < a.cols; ++k) a.at(i, k) = -a.at(i, k);
    }

    bool zero_mod(const mpz_class& v) const { return ((v % m) + m) % m == 0; }
    long norm(const mpz_class& v) const { return to_int(((v % m) + m) % m); }
};

} // namespace

CanonicalPresentation canonical_presentation(const Presentation& p) {
    if (!is_fgc(p)) throw NotFgc("canonical presentations exist only for fgc tori");
    std::size_t n = p.rank();
    MultiplicativeForm f = multiplicative_form(p);

    Reduction red{f.zeta_exponents, IMat::identity(n), static_cast<long>(f.root_order)};
    long M = red.m;

    std::size_t t = 0;
    while (t + 1 < n) {
        // pivot: remaining entry of maximal order (minimal gcd with M)
        bool found = false;
        std::size_t pi = 0, pj = 0;
        long best_g = M + 1;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (red.zero_mod(red.s.at(i, j))) continue;
                long g = gcd_with(red.s.at(i, j), M);
                if (g < best_g) {
                    best_g = g;
                    pi = i;
                    pj = j;
                    found = true;
                }
            }
        if (!found) break;

        red.swap_pair(pi, t); // pj > pi >= t, so pj is not disturbed
        red.swap_pair(pj, t + 1);

        // clear rows t and t+1 beyond the block, improving the pivot when
        // an entry is not divisible by gcd(pivot, M)
        bool done = false;
        std::size_t guard = 0;
        while (!done) {
            if (++guard > 64 * n * n) throw CanonicalizationFailed("pivot clearing did not converge");
            done = true;
            long pvt = red.norm(red.s.at(t, t + 1));
            long g = gcd_with(pvt, M);
            for (std::size_t k = t + 2; k < n; ++k) {
                long x = red.norm(red.s.at(t, k));
                if (x == 0) continue;
                if (x % g == 0) {
                    // c * pvt == -x (mod M)
                    long mg = M / g;
                    long c = static_cast<long>(
                        (__int128)((mg - (x / g) % mg) % mg) * mod_inv(pvt / g, mg) % mg);
                    red.add_pair(k, t + 1, c);
                } else {
                    // fold an improved combination into the pivot slot
                    long best_c = 0, best = g;
                    for (long c = 0; c < M; ++c) {
                        long v = red.norm(x + c * pvt);
                        long gg = v == 0 ? M : std::gcd(v, M);
                        if (gg < best) { best = gg; best_c = c; }
                    }
                    red.add_pair(k, t + 1, best_c);
                    red.swap_pair(k, t + 1);
                }
                done = false;
                break;
            }
            if (!done) continue;
            for (std::size_t k = t + 2; k < n; ++k) {
                long y = red.norm(red.s.at(t + 1, k));
                if (y == 0) continue;
                if (y % g == 0) {
                    // row k += c * row t adds c * s(t+1,t) = -c * pvt to s(t+1,k)
                    long mg = M / g;
                    long c = static_cast<long>((__int128)((y / g) % mg) * mod_inv(pvt / g, mg) % mg);
                    red.add_pair(k, t, c);
                } else {
                    long best_c = 0, best = g;
                    for (long c = 0; c < M; ++c) {
                        long v = red.norm(y - c * pvt);
                        long gg = v == 0 ? M : std::gcd(v, M);
                        if (gg < best) { best = gg; best_c = c; }
                    }
                    red.add_pair(k, t, best_c);
                    red.swap_pair(k, t); // improved value now sits in the pivot row pair
                }
                done = false;
                break;
            }
            if (!done) continue;
            // divisor chain: the pivot gcd must divide every remaining
            // entry, otherwise the block-order multiset would depend on
            // the coordinatization; fold the offending row into row t
            for (std::size_t u = t + 2; u < n && done; ++u)
                for (std::size_t v = u + 1; v < n && done; ++v) {
                    long x = red.norm(red.s.at(u, v));
                    if (x % g != 0) {
                        red.add_pair(t, u, 1);
                        done = false;
                    }
                }
        }
        t += 2;
    }

    // normalize each block exponent to min(e, M - e) and sort blocks by
    // decreasing order, ties by ascending exponent
    std::size_t nblocks = 0;
    std::vector<std::pair<unsigned long, long>> keys; // (order, exponent)
    for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
        long e = red.norm(red.s.at(2 * k, 2 * k + 1));
        if (e == 0) {
            keys.emplace_back(1, 0);
            continue;
        }
        if (M - e < e) {
            red.swap_pair(2 * k, 2 * k + 1);
            e = red.norm(red.s.at(2 * k, 2 * k + 1));
        }
        keys.emplace_back(static_cast<unsigned long>(M / std::gcd(e, M)), e);
        ++nblocks;
    }
    (void)nblocks;
    for (std::size_t i = 0; 2 * i + 1 < n; ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; 2 * j + 1 < n; ++j) {
            if (keys[j].first > keys[best].first ||
                (keys[j].first == keys[best].first && keys[j].second < keys[best].second))
                best = j;
        }
        if (best != i) {
            red.swap_pair(2 * i, 2 * best);
            red.swap_pair(2 * i + 1, 2 * best + 1);
            std::swap(keys[i], keys[best]);
        }
    }

    if (!is_unimodular(red.a))
        throw CanonicalizationFailed("accumulated base change lost unimodularity");
    Presentation pc = change_basis(p, red.a);
    if (!is_canonical_shape(pc))
        throw CanonicalizationFailed("reduction finished but shape verification failed");
    return {red.a, std::move(pc)};
}

SymbolDecomposition symbol_decomposition(const Presentation& pc) {
    if (!is_canonical_shape(pc)) throw NotCanonical("presentation is not in canonical shape");
    if (!is_fgc(pc)) throw NotFgc("symbol decomposition requires an fgc torus");
    std::size_t n = pc.rank();

    SymbolDecomposition out;
    for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
        if (pc.q(2 * k, 2 * k + 1).is_one()) break;
        auto ord = pc.q(2 * k, 2 * k + 1).mult_order();
        out.orders.push_back(*ord);
        out.etale_indices.push_back(2 * k);
        ++out.blocks;
    }
    for (std::size_t j = 0; j < n; ++j) {
        IVec tj(n, 0);
        tj[j] = (j < 2 * out.blocks) ? static_cast<Int>(out.orders[j / 2]) : 1;
        out.central_generators.push_back(std::move(tj));
    }
    return out;
}

} // namespace qtorus
