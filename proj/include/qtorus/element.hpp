#pragma once

#include <map>
#include <optional>
#include <string>

#include "qtorus/presentation.hpp"

namespace qtorus {

using LatticePoint = IVec;

/// Element sum_lambda s_lambda x^lambda of the quantum torus presented by
/// `pres`; zero coefficients are never stored. The monomial normalization
/// is x^lambda = x_1^{l_1} ... x_n^{l_n}, so
/// x^lambda * x^mu = tau(lambda, mu) x^{lambda+mu} with
/// tau(lambda, mu) = prod_{i>j} q_ij^{lambda_i mu_j}.
class TorusElement {
public:
    using TermMap = std::map<LatticePoint, Scalar>;

    TorusElement() = default;
    explicit TorusElement(PresentationPtr pres) : pres_(std::move(pres)) {}
    static TorusElement monomial(PresentationPtr pres, LatticePoint lambda, Scalar coeff);
    static TorusElement unit(PresentationPtr pres);
    static TorusElement generator(PresentationPtr pres, std::size_t axis, long exponent = 1);
    static TorusElement constant(PresentationPtr pres, const Scalar& value);

    const PresentationPtr& pres() const { return pres_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t support_size() const { return terms_.size(); }
    std::size_t rank() const { return pres_ ? pres_->rank() : 0; }

    Scalar coeff(const LatticePoint& lambda) const; // zero scalar if absent
    void add_term(const LatticePoint& lambda, const Scalar& coeff);

    TorusElement operator+(const TorusElement& o) const;
    TorusElement operator-(const TorusElement& o) const;
    TorusElement operator-() const;
    TorusElement scaled(const Scalar& s) const;
    bool operator==(const TorusElement& o) const;
    bool operator!=(const TorusElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    PresentationPtr pres_;
    TermMap terms_;
};

/// tau(lambda, mu) = prod_{i>j} q_ij^{lambda_i mu_j}
Scalar cocycle(const Presentation& p, const LatticePoint& lambda, const LatticePoint& mu);

TorusElement qt_mul(const TorusElement& a, const TorusElement& b);
TorusElement qt_commutator(const TorusElement& a, const TorusElement& b);
TorusElement qt_pow(const TorusElement& a, long e); // invertible base for e < 0

/// Z-basis of the exponent lattice, rows = basis vectors in standard
/// coordinates; provides the epsilon-trace.
class DegreeBasis {
public:
    explicit DegreeBasis(IMat a); // throws NotUnimodular
    static DegreeBasis standard(std::size_t n);

    long trace(const LatticePoint& lambda) const;
    const IMat& matrix() const { return a_; }
    const IVec& weights() const { return w_; }
    bool proper_on_positive() const; // all weights positive (slices of Q^+ finite)

private:
    IMat a_;
    IVec w_;
};

/// Max epsilon-trace over the support; nullopt encodes degree -infinity.
std::optional<long> degree(const TorusElement& a, const DegreeBasis& eps);
std::optional<long> min_degree(const TorusElement& a, const DegreeBasis& eps);

struct CentreSplit {
    TorusElement central; // support inside Xi
    TorusElement bracket; // the [Q,Q] component
};
CentreSplit centre_split(const TorusElement& a);

/// Nonempty exactly when the support is a single point; the returned
/// element is the verified two-sided inverse.
std::optional<TorusElement> invert(const TorusElement& a);

bool in_positive_part(const TorusElement& a);
/// x_axis divides a (a in Q^+, 0-based axis): every support point has a
/// positive entry on that axis.
bool divides(std::size_t axis, const TorusElement& a);

/// The canonical anti-isomorphism Q -> Q^op (the identity map on elements,
/// re-expressed in the opposite presentation's monomial basis):
/// s x^lambda -> s * tau(lambda,lambda)^{-1} X^lambda.
TorusElement op_map(const TorusElement& a, const PresentationPtr& opposite_pres);

} // namespace qtorus
