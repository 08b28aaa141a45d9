#include "qtorus/element.hpp"

#include <sstream>

namespace qtorus {

TorusElement TorusElement::monomial(PresentationPtr pres, LatticePoint lambda, Scalar coeff) {
    TorusElement e(std::move(pres));
    if (lambda.size() != e.rank()) throw SizeMismatch("lattice point rank mismatch");
    e.add_term(lambda, coeff.coerced(e.pres_->field()));
    return e;
}

TorusElement TorusElement::unit(PresentationPtr pres) {
    auto n = pres->rank();
    return monomial(std::move(pres), LatticePoint(n, 0), Scalar::integer(1));
}

TorusElement TorusElement::generator(PresentationPtr pres, std::size_t axis, long exponent) {
    auto n = pres->rank();
    if (axis >= n) throw SizeMismatch("generator index out of range");
    LatticePoint lambda(n, 0);
    lambda[axis] = exponent;
    return monomial(std::move(pres), std::move(lambda), Scalar::integer(1));
}

TorusElement TorusElement::constant(PresentationPtr pres, const Scalar& value) {
    auto n = pres->rank();
    return monomial(std::move(pres), LatticePoint(n, 0), value);
}

Scalar TorusElement::coeff(const LatticePoint& lambda) const {
    auto it = terms_.find(lambda);
    if (it == terms_.end()) return Scalar::zero(pres_->field());
    return it->second;
}

void TorusElement::add_term(const LatticePoint& lambda, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(lambda, coeff);
    if (!inserted) {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

namespace {

void check_pres(const TorusElement& a, const TorusElement& b) {
    if (!same_presentation(a.pres(), b.pres()))
        throw PresentationMismatch("operands live over different presentations");
}

} // namespace

TorusElement TorusElement::operator+(const TorusElement& o) const {
    check_pres(*this, o);
    TorusElement r = *this;
    for (const auto& [lam, c] : o.terms_) r.add_term(lam, c);
    return r;
}

TorusElement TorusElement::operator-() const {
    TorusElement r = *this;
    for (auto& [lam, c] : r.terms_) c = -c;
    return r;
}

TorusElement TorusElement::operator-(const TorusElement& o) const { return *this + (-o); }

TorusElement TorusElement::scaled(const Scalar& s) const {
    TorusElement r(pres_);
    if (s.is_zero()) return r;
    Scalar sc = s.coerced(pres_->field());
    for (const auto& [lam, c] : terms_) r.add_term(lam, c * sc);
    return r;
}

bool TorusElement::operator==(const TorusElement& o) const {
    if (!same_presentation(pres_, o.pres_)) return false;
    return terms_ == o.terms_;
}

std::string TorusElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [lam, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*x^(";
        for (std::size_t i = 0; i < lam.size(); ++i) {
            if (i) os << ",";
            os << lam[i];
        }
        os << ")";
    }
    return os.str();
}

Scalar cocycle(const Presentation& p, const LatticePoint& lambda, const LatticePoint& mu) {
    std::size_t n = p.rank();
    if (lambda.size() != n || mu.size() != n) throw SizeMismatch("cocycle point rank mismatch");
    Scalar v = Scalar::one(p.field());
    for (std::size_t i = 1; i < n; ++i) {
        if (lambda[i] == 0) continue;
        for (std::size_t j = 0; j < i; ++j) {
            if (mu[j] == 0 || p.q(i, j).is_one()) continue;
            long e = lambda[i] * mu[j];
            v = v * p.q(i, j).pow(e);
        }
    }
    return v;
}

TorusElement qt_mul(const TorusElement& a, const TorusElement& b) {
    check_pres(a, b);
    TorusElement r(a.pres());
    const Presentation& p = *a.pres();
    for (const auto& [lam, c] : a.terms())
        for (const auto& [mu, d] : b.terms()) {
            LatticePoint sum(lam.size());
            for (std::size_t i = 0; i < lam.size(); ++i) sum[i] = lam[i] + mu[i];
            r.add_term(sum, c * d * cocycle(p, lam, mu));
        }
    return r;
}

TorusElement qt_commutator(const TorusElement& a, const TorusElement& b) {
    return qt_mul(a, b) - qt_mul(b, a);
}

TorusElement qt_pow(const TorusElement& a, long e) {
    if (e < 0) {
        auto inv = invert(a);
        if (!inv) throw NotInvertible("negative power of a non-invertible element");
        return qt_pow(*inv, -e);
    }
    TorusElement acc = TorusElement::unit(a.pres());
    TorusElement base = a;
    unsigned long u = static_cast<unsigned long>(e);
    while (u > 0) {
        if (u & 1UL) acc = qt_mul(acc, base);
        base = qt_mul(base, base);
        u >>= 1UL;
    }
    return acc;
}

DegreeBasis::DegreeBasis(IMat a) : a_(std::move(a)) {
    if (!is_unimodular(a_)) throw NotUnimodular("degree basis must be unimodular");
    IMat inv = inverse_unimodular(a_);
    w_.assign(a_.rows, 0);
    for (std::size_t i = 0; i < inv.rows; ++i) {
        mpz_class acc = 0;
        for (std::size_t j = 0; j < inv.cols; ++j) acc += inv.at(i, j);
        w_[i] = to_int(acc);
    }
}

DegreeBasis DegreeBasis::standard(std::size_t n) { return DegreeBasis(IMat::identity(n)); }

long DegreeBasis::trace(const LatticePoint& lambda) const {
    if (lambda.size() != w_.size()) throw SizeMismatch("trace rank mismatch");
    long t = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) t += lambda[i] * w_[i];
    return t;
}

bool DegreeBasis::proper_on_positive() const {
    for (Int v : w_)
        if (v <= 0) return false;
    return true;
}

std::optional<long> degree(const TorusElement& a, const DegreeBasis& eps) {
    std::optional<long> best;
    for (const auto& [lam, c] : a.terms()) {
        long t = eps.trace(lam);
        if (!best || t > *best) best = t;
    }
    return best;
}

std::optional<long> min_degree(const TorusElement& a, const DegreeBasis& eps) {
    std::optional<long> best;
    for (const auto& [lam, c] : a.terms()) {
        long t = eps.trace(lam);
        if (!best || t < *best) best = t;
    }
    return best;
}

CentreSplit centre_split(const TorusElement& a) {
    CentreSplit out{TorusElement(a.pres()), TorusElement(a.pres())};
    for (const auto& [lam, c] : a.terms()) {
        if (is_central_point(*a.pres(), lam))
            out.central.add_term(lam, c);
        else
            out.bracket.add_term(lam, c);
    }
    return out;
}

std::optional<TorusElement> invert(const TorusElement& a) {
    if (a.support_size() != 1) return std::nullopt;
    const auto& [lam, s] = *a.terms().begin();
    LatticePoint neg(lam.size());
    for (std::size_t i = 0; i < lam.size(); ++i) neg[i] = -lam[i];
    Scalar c = (s * cocycle(*a.pres(), lam, neg)).inv();
    TorusElement inv = TorusElement::monomial(a.pres(), neg, c);
    if (!qt_mul(a, inv).is_zero() && qt_mul(a, inv) == TorusElement::unit(a.pres()) &&
        qt_mul(inv, a) == TorusElement::unit(a.pres()))
        return inv;
    throw VerificationFailed("monomial inverse failed its defining identity");
}

bool in_positive_part(const TorusElement& a) {
    for (const auto& [lam, c] : a.terms())
        for (Int v : lam)
            if (v < 0) return false;
    return true;
}

bool divides(std::size_t axis, const TorusElement& a) {
    if (!in_positive_part(a)) throw NotInPositivePart("divisibility is defined on Q^+");
    if (axis >= a.rank()) throw SizeMismatch("axis out of range");
    if (a.is_zero()) return false;
    for (const auto& [lam, c] : a.terms())
        if (lam[axis] <= 0) return false;
    return true;
}

TorusElement op_map(const TorusElement& a, const PresentationPtr& opposite_pres) {
    if (!same_presentation(opposite_pres, share(a.pres()->opposite())))
        throw PresentationMismatch("target presentation is not the opposite");
    TorusElement r(opposite_pres);
    for (const auto& [lam, c] : a.terms())
        r.add_term(lam, c * cocycle(*a.pres(), lam, lam).inv());
    return r;
}

} // namespace qtorus
