#include "qtorus/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qtorus {

std::string kind_name(ScalarKind k) {
    switch (k) {
    case ScalarKind::Rational: return "rational";
    case ScalarKind::Cyclotomic: return "cyclotomic";
    case ScalarKind::RationalFunction: return "rational_function";
    case ScalarKind::Prime: return "prime";
    }
    return "?";
}

std::string FieldKind::describe() const {
    std::ostringstream os;
    os << kind_name(kind);
    if (kind == ScalarKind::Cyclotomic || kind == ScalarKind::RationalFunction)
        os << "(m=" << order << ")";
    if (kind == ScalarKind::Prime) os << "(p=" << p << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// number-theory helpers

unsigned long euler_phi(unsigned long m) {
    unsigned long result = m;
    for (unsigned long q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            result -= result / q;
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
    base %= mod;
    if (base < 0) base += mod;
    if (exp < 0) return mod_pow(mod_inv(base, mod), -exp, mod);
    std::int64_t r = 1 % mod;
    while (exp > 0) {
        if (exp & 1) r = static_cast<std::int64_t>((__int128)r * base % mod);
        base = static_cast<std::int64_t>((__int128)base * base % mod);
        exp >>= 1;
    }
    return r;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t mod) {
    a %= mod;
    if (a < 0) a += mod;
    if (a == 0) throw DivisionByZero("inverse of 0 mod " + std::to_string(mod));
    std::int64_t old_r = a, r = mod, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t = old_r - q * r; old_r = r; r = t;
        t = old_s - q * s; old_s = s; s = t;
    }
    if (old_r != 1) throw DivisionByZero("not invertible mod " + std::to_string(mod));
    old_s %= mod;
    if (old_s < 0) old_s += mod;
    return old_s;
}

unsigned long order_mod_p(std::int64_t a, std::int64_t p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw ZeroArgument("order of 0 in F_p");
    std::int64_t x = a;
    unsigned long k = 1;
    while (x != 1) {
        x = static_cast<std::int64_t>((__int128)x * a % p);
        ++k;
        if (k > static_cast<unsigned long>(p)) throw VerificationFailed("order search overran p");
    }
    return k;
}

// ---------------------------------------------------------------------------
// dense polynomials over Q (constant term first)

namespace {

using QPoly = std::vector<Rat>;

void qp_trim(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    qp_trim(c);
    return c;
}

QPoly qp_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qp_trim(a);
    return a;
}

std::pair<QPoly, QPoly> qp_divmod(QPoly a, const QPoly& b) {
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    QPoly q(a.size() - b.size() + 1, Rat(0));
    Rat lead_inv = 1 / b.back();
    for (std::size_t shift = q.size(); shift-- > 0;) {
        std::size_t k = shift + b.size() - 1;
        if (a[k] == 0) continue;
        Rat c = a[k] * lead_inv;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    }
    qp_trim(a);
    qp_trim(q);
    return {q, a};
}

} // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(unsigned m) {
    static std::map<unsigned, std::vector<mpz_class>> cache;
    static std::recursive_mutex mtx;
    std::lock_guard<std::recursive_mutex> lock(mtx);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;

    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, computed over Q then
    // verified integral.
    QPoly poly(m + 1, Rat(0));
    poly[0] = -1;
    poly[m] = 1;
    for (unsigned d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        const auto& phid = cyclotomic_polynomial(d);
        QPoly div(phid.size());
        for (std::size_t i = 0; i < phid.size(); ++i) div[i] = Rat(phid[i]);
        auto [q, r] = qp_divmod(poly, div);
        if (!r.empty()) throw VerificationFailed("cyclotomic polynomial division had remainder");
        poly = q;
    }
    std::vector<mpz_class> out(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (poly[i].get_den() != 1) throw VerificationFailed("cyclotomic polynomial not integral");
        out[i] = poly[i].get_num();
    }
    auto [pos, inserted] = cache.emplace(m, std::move(out));
    (void)inserted;
    return pos->second;
}

// ---------------------------------------------------------------------------
// arithmetic in Q(zeta_m): vectors reduced modulo Phi_m

namespace {

QPoly phi_as_qpoly(unsigned m) {
    const auto& z = cyclotomic_polynomial(m);
    QPoly p(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) p[i] = Rat(z[i]);
    return p;
}

using CycVec = Scalar::CycVec;

CycVec cyc_reduce(QPoly a, unsigned m) {
    auto [q, r] = qp_divmod(std::move(a), phi_as_qpoly(m));
    (void)q;
    return r;
}

CycVec cyc_add(CycVec a, const CycVec& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    qp_trim(a);
    return a;
}

CycVec cyc_sub(const CycVec& a, const CycVec& b) { return qp_sub(a, b); }

CycVec cyc_mul(const CycVec& a, const CycVec& b, unsigned m) {
    return cyc_reduce(qp_mul(a, b), m);
}

bool cyc_is_zero(const CycVec& a) { return a.empty(); }

CycVec cyc_const(const Rat& r) {
    CycVec v;
    if (r != 0) v.push_back(r);
    return v;
}

CycVec cyc_neg(CycVec a) {
    for (auto& c : a) c = -c;
    return a;
}

// extended Euclid against Phi_m; Phi_m is irreducible over Q so any nonzero
// residue is invertible
CycVec cyc_inv(const CycVec& a, unsigned m) {
    if (cyc_is_zero(a)) throw DivisionByZero("inverse of zero cyclotomic value");
    QPoly r0 = phi_as_qpoly(m), r1 = a;
    QPoly s0 = {}, s1 = {Rat(1)};
    while (true) {
        auto [q, r2] = qp_divmod(r0, r1);
        QPoly s2 = qp_sub(s0, qp_mul(q, s1));
        if (r2.empty()) break;
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    // r1 = gcd (a nonzero constant), s1 the cofactor of `a`
    if (r1.size() != 1) throw DivisionByZero("residue not invertible mod Phi_m");
    Rat g_inv = 1 / r1[0];
    for (auto& c : s1) c *= g_inv;
    return cyc_reduce(std::move(s1), m);
}

CycVec cyc_embed(const CycVec& a, unsigned m_from, unsigned m_to) {
    if (m_to % m_from != 0) throw KindMismatch("cyclotomic order does not divide target order");
    unsigned step = m_to / m_from;
    // zeta_m -> zeta_{m'}^step
    CycVec result, power{Rat(1)};
    CycVec gen(step + 1, Rat(0));
    gen[step] = 1;
    CycVec gen_red = cyc_reduce(QPoly(gen), m_to);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0) result = cyc_add(std::move(result), cyc_mul(cyc_const(a[i]), power, m_to));
        if (i + 1 < a.size()) power = cyc_mul(power, gen_red, m_to);
    }
    return result;
}

// ---------------------------------------------------------------------------
// polynomials in s over Q(zeta_m)

using SPoly = Scalar::SPoly;

void sp_trim(SPoly& a) {
    while (!a.empty() && cyc_is_zero(a.back())) a.pop_back();
}

SPoly sp_add(SPoly a, const SPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = cyc_add(std::move(a[i]), b[i]);
    sp_trim(a);
    return a;
}

SPoly sp_neg(SPoly a) {
    for (auto& c : a) c = cyc_neg(std::move(c));
    return a;
}

SPoly sp_sub(SPoly a, const SPoly& b) { return sp_add(std::move(a), sp_neg(b)); }

SPoly sp_mul(const SPoly& a, const SPoly& b, unsigned m) {
    if (a.empty() || b.empty()) return {};
    SPoly c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (cyc_is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (cyc_is_zero(b[j])) continue;
            c[i + j] = cyc_add(std::move(c[i + j]), cyc_mul(a[i], b[j], m));
        }
    }
    sp_trim(c);
    return c;
}

std::pair<SPoly, SPoly> sp_divmod(SPoly a, const SPoly& b, unsigned m) {
    if (b.empty()) throw DivisionByZero("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    SPoly q(a.size() - b.size() + 1);
    CycVec lead_inv = cyc_inv(b.back(), m);
    for (std::size_t shift = q.size(); shift-- > 0;) {
        std::size_t k = shift + b.size() - 1;
        if (cyc_is_zero(a[k])) continue;
        CycVec c = cyc_mul(a[k], lead_inv, m);
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = cyc_sub(a[shift + i], cyc_mul(c, b[i], m));
    }
    sp_trim(a);
    sp_trim(q);
    return {q, a};
}

SPoly sp_make_monic(SPoly a, unsigned m) {
    if (a.empty()) return a;
    CycVec inv = cyc_inv(a.back(), m);
    for (auto& c : a) c = cyc_mul(std::move(c), inv, m);
    return a;
}

SPoly sp_gcd(SPoly a, SPoly b, unsigned m) {
    while (!b.empty()) {
        auto [q, r] = sp_divmod(std::move(a), b, m);
        (void)q;
        a = std::move(b);
        b = sp_make_monic(std::move(r), m);
    }
    return sp_make_monic(std::move(a), m);
}

SPoly sp_const(CycVec c) {
    SPoly p;
    if (!cyc_is_zero(c)) p.push_back(std::move(c));
    return p;
}

std::int64_t rat_mod_p(const Rat& r, std::int64_t p) {
    mpz_class num = r.get_num() % p;
    mpz_class den = r.get_den() % p;
    std::int64_t n = num.get_si(), d = den.get_si();
    if (n < 0) n += p;
    if (d < 0) d += p;
    if (d == 0) throw OutsideSubring("denominator vanishes mod " + std::to_string(p));
    return static_cast<std::int64_t>((__int128)n * mod_inv(d, p) % p);
}

std::int64_t cyc_mod_p(const CycVec& c, std::int64_t p, std::int64_t zeta_image) {
    std::int64_t acc = 0;
    // Horner from the top coefficient
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = static_cast<std::int64_t>((__int128)acc * zeta_image % p);
        acc = (acc + rat_mod_p(c[i], p)) % p;
    }
    return acc;
}

std::int64_t sp_mod_p(const SPoly& a, const ResidueMap& h) {
    std::int64_t acc = 0;
    for (std::size_t i = a.size(); i-- > 0;) {
        acc = static_cast<std::int64_t>((__int128)acc * h.s_image % h.p);
        acc = (acc + cyc_mod_p(a[i], h.p, h.zeta_image)) % h.p;
    }
    return acc;
}

int cyc_cmp(const CycVec& a, const CycVec& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return cmp(a[i], b[i]) < 0 ? -1 : 1;
    return 0;
}

int sp_cmp(const SPoly& a, const SPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (int c = cyc_cmp(a[i], b[i]); c != 0) return c;
    return 0;
}

} // namespace

// ---------------------------------------------------------------------------
// ResidueMap

void ResidueMap::validate() const {
    if (p < 2) throw BadCharacteristic("residue map needs p >= 2");
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) throw BadCharacteristic("p = " + std::to_string(p) + " is not prime");
    if (s_image % p == 0) throw VerificationFailed("s must map to a nonzero residue");
    if (zeta_order > 1) {
        if ((p - 1) % zeta_order != 0)
            throw BadCharacteristic("zeta order must divide p-1");
        if (order_mod_p(zeta_image, p) != zeta_order)
            throw VerificationFailed("zeta image does not have exact order m");
    }
}

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::rational(const Rat& v) {
    Scalar s;
    s.kind_ = ScalarKind::Rational;
    s.rat_ = v;
    s.rat_.canonicalize();
    return s;
}

Scalar Scalar::zeta(unsigned m) {
    if (m == 0) throw ZeroArgument("zeta order must be positive");
    Scalar s;
    s.kind_ = ScalarKind::Cyclotomic;
    s.order_ = m;
    QPoly x = {Rat(0), Rat(1)};
    s.cyc_ = cyc_reduce(std::move(x), m);
    return s;
}

Scalar Scalar::transcendental(unsigned m) {
    Scalar s;
    s.kind_ = ScalarKind::RationalFunction;
    s.order_ = m == 0 ? 1 : m;
    s.num_.resize(2);
    s.num_[1] = cyc_const(Rat(1));
    s.den_ = {cyc_const(Rat(1))};
    return s;
}

Scalar Scalar::prime_element(std::int64_t p, std::int64_t value) {
    if (p < 2) throw BadCharacteristic("p must be at least 2");
    Scalar s;
    s.kind_ = ScalarKind::Prime;
    s.p_ = p;
    s.res_ = value % p;
    if (s.res_ < 0) s.res_ += p;
    return s;
}

Scalar Scalar::zero(const FieldKind& f) {
    switch (f.kind) {
    case ScalarKind::Rational: return rational(Rat(0));
    case ScalarKind::Cyclotomic: {
        Scalar s;
        s.kind_ = f.kind;
        s.order_ = f.order;
        return s;
    }
    case ScalarKind::RationalFunction: {
        Scalar s;
        s.kind_ = f.kind;
        s.order_ = f.order;
        s.den_ = {cyc_const(Rat(1))};
        return s;
    }
    case ScalarKind::Prime: return prime_element(f.p, 0);
    }
    throw KindMismatch("unknown field kind");
}

Scalar Scalar::one(const FieldKind& f) {
    Scalar s = zero(f);
    switch (f.kind) {
    case ScalarKind::Rational: s.rat_ = 1; break;
    case ScalarKind::Cyclotomic: s.cyc_ = cyc_const(Rat(1)); break;
    case ScalarKind::RationalFunction: s.num_ = {cyc_const(Rat(1))}; break;
    case ScalarKind::Prime: s.res_ = 1 % f.p; break;
    }
    return s;
}

FieldKind Scalar::field() const { return {kind_, order_, p_}; }

bool Scalar::is_zero() const {
    switch (kind_) {
    case ScalarKind::Rational: return rat_ == 0;
    case ScalarKind::Cyclotomic: return cyc_.empty();
    case ScalarKind::RationalFunction: return num_.empty();
    case ScalarKind::Prime: return res_ == 0;
    }
    return false;
}

bool Scalar::is_one() const {
    switch (kind_) {
    case ScalarKind::Rational: return rat_ == 1;
    case ScalarKind::Cyclotomic: return cyc_.size() == 1 && cyc_[0] == 1;
    case ScalarKind::RationalFunction:
        return num_.size() == 1 && num_[0].size() == 1 && num_[0][0] == 1 &&
               den_.size() == 1 && den_[0].size() == 1 && den_[0][0] == 1;
    case ScalarKind::Prime: return res_ == 1 % p_;
    }
    return false;
}

bool Scalar::operator==(const Scalar& o) const {
    if (kind_ != o.kind_ || order_ != o.order_ || p_ != o.p_) return false;
    switch (kind_) {
    case ScalarKind::Rational: return rat_ == o.rat_;
    case ScalarKind::Cyclotomic: return cyc_ == o.cyc_;
    case ScalarKind::RationalFunction: return num_ == o.num_ && den_ == o.den_;
    case ScalarKind::Prime: return res_ == o.res_;
    }
    return false;
}

bool Scalar::operator<(const Scalar& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_;
    if (order_ != o.order_) return order_ < o.order_;
    if (p_ != o.p_) return p_ < o.p_;
    switch (kind_) {
    case ScalarKind::Rational: return rat_ < o.rat_;
    case ScalarKind::Cyclotomic: return cyc_cmp(cyc_, o.cyc_) < 0;
    case ScalarKind::RationalFunction:
        if (int c = sp_cmp(num_, o.num_); c != 0) return c < 0;
        return sp_cmp(den_, o.den_) < 0;
    case ScalarKind::Prime: return res_ < o.res_;
    }
    return false;
}

void Scalar::check_same(const Scalar& a, const Scalar& b) {
    if (a.kind_ != b.kind_ || a.order_ != b.order_ || a.p_ != b.p_)
        throw KindMismatch(a.field().describe() + " vs " + b.field().describe());
}

void Scalar::normalize() {
    switch (kind_) {
    case ScalarKind::Rational:
        rat_.canonicalize();
        break;
    case ScalarKind::Cyclotomic:
        qp_trim(cyc_);
        break;
    case ScalarKind::RationalFunction: {
        sp_trim(num_);
        sp_trim(den_);
        if (den_.empty()) throw DivisionByZero("rational function with zero denominator");
        if (num_.empty()) {
            den_ = {cyc_const(Rat(1))};
            break;
        }
        SPoly g = sp_gcd(num_, den_, order_);
        if (g.size() > 1 || (g.size() == 1 && !(g[0].size() == 1 && g[0][0] == 1))) {
            num_ = sp_divmod(std::move(num_), g, order_).first;
            den_ = sp_divmod(std::move(den_), g, order_).first;
        }
        CycVec lead_inv = cyc_inv(den_.back(), order_);
        for (auto& c : num_) c = cyc_mul(std::move(c), lead_inv, order_);
        for (auto& c : den_) c = cyc_mul(std::move(c), lead_inv, order_);
        break;
    }
    case ScalarKind::Prime:
        res_ %= p_;
        if (res_ < 0) res_ += p_;
        break;
    }
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(*this, o);
    Scalar r = *this;
    switch (kind_) {
    case ScalarKind::Rational: r.rat_ += o.rat_; break;
    case ScalarKind::Cyclotomic: r.cyc_ = cyc_add(std::move(r.cyc_), o.cyc_); break;
    case ScalarKind::RationalFunction:
        r.num_ = sp_add(sp_mul(num_, o.den_, order_), sp_mul(o.num_, den_, order_));
        r.den_ = sp_mul(den_, o.den_, order_);
        break;
    case ScalarKind::Prime: r.res_ = (res_ + o.res_) % p_; break;
    }
    r.normalize();
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
    Scalar r = *this;
    switch (kind_) {
    case ScalarKind::Rational: r.rat_ = -r.rat_; break;
    case ScalarKind::Cyclotomic: r.cyc_ = cyc_neg(std::move(r.cyc_)); break;
    case ScalarKind::RationalFunction: r.num_ = sp_neg(std::move(r.num_)); break;
    case ScalarKind::Prime: r.res_ = (p_ - res_) % p_; break;
    }
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(*this, o);
    Scalar r = *this;
    switch (kind_) {
    case ScalarKind::Rational: r.rat_ *= o.rat_; break;
    case ScalarKind::Cyclotomic: r.cyc_ = cyc_mul(cyc_, o.cyc_, order_); break;
    case ScalarKind::RationalFunction:
        r.num_ = sp_mul(num_, o.num_, order_);
        r.den_ = sp_mul(den_, o.den_, order_);
        break;
    case ScalarKind::Prime:
        r.res_ = static_cast<std::int64_t>((__int128)res_ * o.res_ % p_);
        break;
    }
    r.normalize();
    return r;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw DivisionByZero("scalar inverse of zero");
    Scalar r = *this;
    switch (kind_) {
    case ScalarKind::Rational: r.rat_ = 1 / rat_; break;
    case ScalarKind::Cyclotomic: r.cyc_ = cyc_inv(cyc_, order_); break;
    case ScalarKind::RationalFunction: std::swap(r.num_, r.den_); break;
    case ScalarKind::Prime: r.res_ = mod_inv(res_, p_); break;
    }
    r.normalize();
    return r;
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Scalar acc = one(field());
    Scalar base = *this;
    unsigned long u = static_cast<unsigned long>(e);
    while (u > 0) {
        if (u & 1UL) acc = acc * base;
        base = base * base;
        u >>= 1UL;
    }
    return acc;
}

bool Scalar::is_root_of_unity() const {
    if (is_zero()) return false;
    return mult_order().has_value();
}

std::optional<unsigned long> Scalar::mult_order() const {
    if (is_zero()) throw ZeroArgument("multiplicative order of zero");
    switch (kind_) {
    case ScalarKind::Rational:
        if (rat_ == 1) return 1;
        if (rat_ == -1) return 2;
        return std::nullopt;
    case ScalarKind::Cyclotomic: {
        // torsion of Q(zeta_m)^x is {+- zeta_m^j}: enumerate 2m candidates
        Scalar z = zeta(order_);
        Scalar cand = one(field());
        for (unsigned j = 0; j < order_; ++j) {
            if (*this == cand || *this == -cand) {
                Scalar x = *this;
                unsigned long k = 1;
                unsigned long bound = 2UL * order_ + 2;
                while (!x.is_one()) {
                    x = x * *this;
                    if (++k > bound) return std::nullopt;
                }
                return k;
            }
            cand = cand * z;
        }
        return std::nullopt;
    }
    case ScalarKind::RationalFunction: {
        if (num_.size() <= 1 && den_.size() <= 1) {
            Scalar c;
            c.kind_ = ScalarKind::Cyclotomic;
            c.order_ = order_;
            c.cyc_ = cyc_mul(num_.empty() ? CycVec{} : num_[0],
                             cyc_inv(den_[0], order_), order_);
            return c.mult_order();
        }
        return std::nullopt;
    }
    case ScalarKind::Prime:
        return order_mod_p(res_, p_);
    }
    return std::nullopt;
}

Scalar Scalar::coerced(const FieldKind& target) const {
    if (field() == target) return *this;
    if (kind_ == ScalarKind::Rational && target.kind == ScalarKind::Prime)
        return prime_element(target.p, rat_mod_p(rat_, target.p));
    if (kind_ == ScalarKind::Prime || target.kind == ScalarKind::Prime)
        throw KindMismatch("no embedding between " + field().describe() + " and " + target.describe());

    switch (target.kind) {
    case ScalarKind::Cyclotomic: {
        Scalar r = zero(target);
        if (kind_ == ScalarKind::Rational) {
            r.cyc_ = cyc_const(rat_);
            return r;
        }
        if (kind_ == ScalarKind::Cyclotomic) {
            r.cyc_ = cyc_embed(cyc_, order_, target.order);
            return r;
        }
        break;
    }
    case ScalarKind::RationalFunction: {
        Scalar r = zero(target);
        if (kind_ == ScalarKind::Rational) {
            r.num_ = sp_const(cyc_const(rat_));
            return r;
        }
        if (kind_ == ScalarKind::Cyclotomic) {
            r.num_ = sp_const(cyc_embed(cyc_, order_, target.order));
            return r;
        }
        if (kind_ == ScalarKind::RationalFunction) {
            r.num_.resize(num_.size());
            r.den_.resize(den_.size());
            for (std::size_t i = 0; i < num_.size(); ++i)
                r.num_[i] = cyc_embed(num_[i], order_, target.order);
            for (std::size_t i = 0; i < den_.size(); ++i)
                r.den_[i] = cyc_embed(den_[i], order_, target.order);
            r.normalize();
            return r;
        }
        break;
    }
    default:
        break;
    }
    throw KindMismatch("no embedding from " + field().describe() + " into " + target.describe());
}

FieldKind Scalar::join(const FieldKind& a, const FieldKind& b) {
    if (a == b) return a;
    // rationals with denominators prime to p embed canonically into F_p
    if (a.kind == ScalarKind::Prime && b.kind == ScalarKind::Rational) return a;
    if (b.kind == ScalarKind::Prime && a.kind == ScalarKind::Rational) return b;
    if (a.kind == ScalarKind::Prime || b.kind == ScalarKind::Prime)
        throw KindMismatch("cannot join " + a.describe() + " with " + b.describe());
    unsigned m = std::lcm(a.order, b.order);
    if (a.kind == ScalarKind::RationalFunction || b.kind == ScalarKind::RationalFunction)
        return FieldKind::rational_function(m);
    if (a.kind == ScalarKind::Cyclotomic || b.kind == ScalarKind::Cyclotomic)
        return FieldKind::cyclotomic(m);
    return FieldKind::rational();
}

namespace {

// the zeta image for an order dividing the map's order: compatible with
// the embedding zeta_m -> zeta_M^{M/m}
std::int64_t zeta_image_for(const ResidueMap& h, unsigned m) {
    if (m <= 1) return 1;
    if (h.zeta_order % m != 0)
        throw KindMismatch("residue map fixes zeta order " + std::to_string(h.zeta_order) +
                           ", incompatible with order " + std::to_string(m));
    return mod_pow(h.zeta_image, h.zeta_order / m, h.p);
}

} // namespace

Scalar Scalar::residue(const ResidueMap& h) const {
    switch (kind_) {
    case ScalarKind::Rational:
        return prime_element(h.p, rat_mod_p(rat_, h.p));
    case ScalarKind::Cyclotomic:
        return prime_element(h.p, cyc_mod_p(cyc_, h.p, zeta_image_for(h, order_)));
    case ScalarKind::RationalFunction: {
        ResidueMap eff = h;
        eff.zeta_image = zeta_image_for(h, order_);
        eff.zeta_order = order_;
        std::int64_t d = sp_mod_p(den_, eff);
        if (d == 0) throw OutsideSubring("denominator vanishes under the residue map");
        std::int64_t n = sp_mod_p(num_, eff);
        return prime_element(h.p, static_cast<std::int64_t>((__int128)n * mod_inv(d, h.p) % h.p));
    }
    case ScalarKind::Prime:
        if (p_ != h.p) throw KindMismatch("prime scalar already lives in a different F_p");
        return *this;
    }
    throw KindMismatch("unhandled kind in residue");
}

Scalar root_of_unity_in(unsigned m, unsigned long M) {
    unsigned long torsion = (m % 2 == 0) ? m : 2UL * m;
    if (torsion % M != 0)
        throw KindMismatch("Q(zeta_" + std::to_string(m) + ") has no primitive root of order " + std::to_string(M));
    // generator of the torsion subgroup {+- zeta_m^j}
    Scalar g = (m % 2 == 0) ? Scalar::zeta(m) : -Scalar::zeta(m);
    return g.pow(static_cast<long>(torsion / M));
}

std::optional<MonomialForm> Scalar::monomial_form() const {
    if (is_zero()) return std::nullopt;
    switch (kind_) {
    case ScalarKind::Rational: {
        if (rat_ == 1) return MonomialForm{2, integer(-1), 0, 0};
        if (rat_ == -1) return MonomialForm{2, integer(-1), 1, 0};
        return std::nullopt;
    }
    case ScalarKind::Cyclotomic: {
        unsigned long M = (order_ % 2 == 0) ? order_ : 2UL * order_;
        Scalar root = root_of_unity_in(order_, M);
        Scalar cand = one(field());
        for (unsigned long j = 0; j < M; ++j) {
            if (*this == cand) return MonomialForm{M, root, static_cast<long>(j), 0};
            cand = cand * root;
        }
        return std::nullopt;
    }
    case ScalarKind::RationalFunction: {
        // need num = c * s^a with den = s^b (monic), c a root of unity
        long a = -1, b = -1;
        for (std::size_t i = 0; i < num_.size(); ++i)
            if (!cyc_is_zero(num_[i])) {
                if (a >= 0) return std::nullopt;
                a = static_cast<long>(i);
            }
        for (std::size_t i = 0; i < den_.size(); ++i)
            if (!cyc_is_zero(den_[i])) {
                if (b >= 0) return std::nullopt;
                b = static_cast<long>(i);
            }
        Scalar c;
        c.kind_ = ScalarKind::Cyclotomic;
        c.order_ = order_;
        c.cyc_ = cyc_mul(num_[a], cyc_inv(den_[b], order_), order_);
        auto inner = c.monomial_form();
        if (!inner) return std::nullopt;
        return MonomialForm{inner->root_order, inner->root.coerced(field()),
                            inner->root_exponent, a - b};
    }
    case ScalarKind::Prime: {
        // fixed primitive root of F_p^x; exponent by enumeration
        std::int64_t g = 0;
        for (std::int64_t c = 1; c < p_; ++c)
            if (order_mod_p(c, p_) == static_cast<unsigned long>(p_ - 1)) {
                g = c;
                break;
            }
        if (g == 0) return std::nullopt; // p = 2 has trivial group; g stays 1
        std::int64_t x = 1;
        for (std::int64_t j = 0; j < p_ - 1; ++j) {
            if (x == res_)
                return MonomialForm{static_cast<unsigned long>(p_ - 1), prime_element(p_, g), j, 0};
            x = static_cast<std::int64_t>((__int128)x * g % p_);
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// printing

namespace {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r.get_num();
    if (r.get_den() != 1) os << "/" << r.get_den();
    return os.str();
}

std::string cyc_str(const CycVec& c, unsigned m) {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << rat_str(c[i]);
        } else {
            if (c[i] != 1) os << rat_str(c[i]) << "*";
            os << "zeta(" << m << ")";
            if (i != 1) os << "^" << i;
        }
    }
    return os.str();
}

std::string spoly_str(const SPoly& a, unsigned m) {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (cyc_is_zero(a[i])) continue;
        if (!first) os << " + ";
        first = false;
        bool coeff_is_one = a[i].size() == 1 && a[i][0] == 1;
        bool need_coeff = (i == 0) || !coeff_is_one;
        if (need_coeff) {
            bool wrap = a[i].size() > 1 || std::count_if(a[i].begin(), a[i].end(),
                                                         [](const Rat& r) { return r != 0; }) > 1;
            if (wrap) os << "(" << cyc_str(a[i], m) << ")";
            else os << cyc_str(a[i], m);
        }
        if (i > 0) {
            if (need_coeff) os << "*";
            os << "s";
            if (i != 1) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace

std::string Scalar::str() const {
    switch (kind_) {
    case ScalarKind::Rational: return rat_str(rat_);
    case ScalarKind::Cyclotomic: return cyc_str(cyc_, order_);
    case ScalarKind::RationalFunction: {
        bool den_is_one = den_.size() == 1 && den_[0].size() == 1 && den_[0][0] == 1;
        std::string n = spoly_str(num_, order_);
        if (den_is_one) return n;
        return "(" + n + ") / (" + spoly_str(den_, order_) + ")";
    }
    case ScalarKind::Prime: return std::to_string(res_);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// literal parser

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;
    const FieldKind* target; // nullptr: infer smallest field

    explicit Parser(const std::string& t, const FieldKind* tgt) : text(t), target(tgt) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw ParseError(what + " at position " + std::to_string(pos) + " in \"" + text + "\"");
    }

    long parse_long() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) fail("expected integer");
        return std::stol(text.substr(start, pos - start));
    }

    mpz_class parse_bigint() {
        skip_ws();
        std::size_t start = pos;
        std::size_t digits = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == digits) fail("expected integer");
        return mpz_class(text.substr(start, pos - start));
    }

    Scalar lift_int(const mpz_class& v) {
        if (target && target->kind == ScalarKind::Prime) {
            mpz_class r = v % target->p;
            return Scalar::prime_element(target->p, r.get_si());
        }
        return Scalar::rational(Rat(v));
    }

    Scalar parse_factor() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of literal");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Scalar inner = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return maybe_pow(inner);
        }
        if (c == '-') {
            ++pos;
            return -parse_factor();
        }
        if (c == '+') {
            ++pos;
            return parse_factor();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return maybe_pow(lift_int(parse_bigint()));
        }
        if (text.compare(pos, 4, "zeta") == 0) {
            pos += 4;
            if (!eat('(')) fail("expected '(' after zeta");
            long m = parse_long();
            if (m <= 0) fail("zeta order must be positive");
            if (!eat(')')) fail("expected ')' after zeta order");
            if (target && target->kind == ScalarKind::Prime)
                fail("zeta literal not available over F_p");
            return maybe_pow(Scalar::zeta(static_cast<unsigned>(m)));
        }
        if (c == 's') {
            ++pos;
            if (target && target->kind == ScalarKind::Prime)
                fail("transcendental literal not available over F_p");
            return maybe_pow(Scalar::transcendental());
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    Scalar maybe_pow(Scalar base) {
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            long e = parse_long();
            return base.pow(e);
        }
        return base;
    }

    static std::pair<Scalar, Scalar> unified(const Scalar& a, const Scalar& b) {
        FieldKind k = Scalar::join(a.field(), b.field());
        return {a.coerced(k), b.coerced(k)};
    }

    Scalar parse_term() {
        Scalar acc = parse_factor();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                auto [x, y] = unified(acc, parse_factor());
                acc = x * y;
            } else if (pos < text.size() && text[pos] == '/') {
                ++pos;
                auto [x, y] = unified(acc, parse_factor());
                if (y.is_zero()) fail("division by zero");
                acc = x / y;
            } else {
                break;
            }
        }
        return acc;
    }

    Scalar parse_expr() {
        Scalar acc = parse_term();
        while (true) {
            skip_ws();
            if (pos < text.size() && text[pos] == '+') {
                ++pos;
                auto [x, y] = unified(acc, parse_term());
                acc = x + y;
            } else if (pos < text.size() && text[pos] == '-') {
                ++pos;
                auto [x, y] = unified(acc, parse_term());
                acc = x - y;
            } else {
                break;
            }
        }
        return acc;
    }
};

} // namespace

Scalar parse_scalar(const std::string& text) {
    Parser p(text, nullptr);
    Scalar s = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");
    return s;
}

Scalar parse_scalar(const std::string& text, const FieldKind& target) {
    Parser p(text, &target);
    Scalar s = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing characters");
    if (target.kind == ScalarKind::Prime) return s; // already evaluated mod p
    return s.coerced(target);
}

} // namespace qtorus
