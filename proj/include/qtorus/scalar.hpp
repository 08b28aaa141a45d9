#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qtorus/errors.hpp"

namespace qtorus {

using Rat = mpq_class;

enum class ScalarKind { Rational, Cyclotomic, RationalFunction, Prime };

std::string kind_name(ScalarKind k);

/// Field descriptor: which exact coefficient field a value lives in.
/// `order` is the cyclotomic order m (1 when no root of unity is involved),
/// `p` the characteristic for prime fields.
struct FieldKind {
    ScalarKind kind = ScalarKind::Rational;
    unsigned order = 1;
    std::int64_t p = 0;

    bool operator==(const FieldKind& o) const = default;
    static FieldKind rational() { return {ScalarKind::Rational, 1, 0}; }
    static FieldKind cyclotomic(unsigned m) { return {ScalarKind::Cyclotomic, m, 0}; }
    static FieldKind rational_function(unsigned m) { return {ScalarKind::RationalFunction, m, 0}; }
    static FieldKind prime(std::int64_t p) { return {ScalarKind::Prime, 1, p}; }
    std::string describe() const;
};

/// Residue homomorphism into F_p: sends the transcendental s to a fixed
/// nonzero residue and zeta_m to a residue of exact multiplicative order m
/// (which requires m | p-1). Defined on the subring of scalars whose
/// denominators stay nonzero mod p.
struct ResidueMap {
    std::int64_t p = 0;
    unsigned zeta_order = 1;
    std::int64_t zeta_image = 1;
    std::int64_t s_image = 1;

    void validate() const; // throws BadCharacteristic / VerificationFailed on malformed maps
};

struct MonomialForm;

/// Element of one of the supported exact fields:
///   Rational            Q
///   Cyclotomic(m)       Q(zeta_m), residues mod the m-th cyclotomic polynomial
///   RationalFunction(m) Q(zeta_m)(s), reduced fractions with monic denominator
///   Prime(p)            F_p
/// Representations are canonical, so operator== is value equality.
class Scalar {
public:
    // polynomial in zeta_m, reduced mod Phi_m, trailing zeros trimmed
    using CycVec = std::vector<Rat>;
    // polynomial in s with Q(zeta_m) coefficients, trailing zeros trimmed
    using SPoly = std::vector<CycVec>;

    Scalar() : kind_(ScalarKind::Rational), rat_(0) {} // rational zero

    static Scalar rational(const Rat& v);
    static Scalar integer(long v) { return rational(Rat(v)); }
    static Scalar zeta(unsigned m);                   // primitive m-th root of unity in Q(zeta_m)
    static Scalar transcendental(unsigned m = 1);     // s in Q(zeta_m)(s)
    static Scalar prime_element(std::int64_t p, std::int64_t value);
    static Scalar zero(const FieldKind& f);
    static Scalar one(const FieldKind& f);

    FieldKind field() const;
    ScalarKind kind() const { return kind_; }
    unsigned cyclotomic_order() const { return order_; }
    std::int64_t characteristic() const { return p_; }

    bool is_zero() const;
    bool is_one() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    /// Total order for use as a map key; not meaningful arithmetically.
    bool operator<(const Scalar& o) const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inv() const;                    // throws DivisionByZero
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
    Scalar pow(long e) const;

    /// Smallest k >= 1 with a^k = 1, or nullopt for infinite order.
    /// Throws ZeroArgument on 0.
    std::optional<unsigned long> mult_order() const;
    bool is_root_of_unity() const;

    /// Embed into a larger field of the tower. Allowed: Rational ->
    /// Cyclotomic(m) -> RationalFunction(m), and order enlargement m | m'.
    Scalar coerced(const FieldKind& target) const;   // throws KindMismatch if impossible
    /// Smallest common field of two descriptors; throws KindMismatch if none.
    static FieldKind join(const FieldKind& a, const FieldKind& b);

    /// Image under a residue map; throws OutsideSubring when a denominator
    /// vanishes mod p, KindMismatch on prime/prime mismatch.
    Scalar residue(const ResidueMap& h) const;

    /// For values of the form (root of unity) * s^k: the exponents with
    /// respect to the field's canonical primitive root; nullopt otherwise.
    std::optional<MonomialForm> monomial_form() const;

    std::string str() const;

    // access for serialization
    const Rat& rational_value() const { return rat_; }
    const CycVec& cyclotomic_coeffs() const { return cyc_; }
    const SPoly& numerator() const { return num_; }
    const SPoly& denominator() const { return den_; }
    std::int64_t prime_residue() const { return res_; }

private:
    ScalarKind kind_;
    unsigned order_ = 1;
    std::int64_t p_ = 0;
    Rat rat_;
    CycVec cyc_;
    SPoly num_, den_;
    std::int64_t res_ = 0;

    void normalize();
    static void check_same(const Scalar& a, const Scalar& b);
};

/// Multiplicative coordinates of a scalar of the form root^a * s^k:
/// `root` is the canonical primitive root of the field's torsion subgroup
/// (order `root_order`), so that value == root^root_exponent * s^s_exponent.
struct MonomialForm {
    unsigned long root_order;
    Scalar root;
    long root_exponent; // defined mod root_order
    long s_exponent;
};

/// phi(m), and the m-th cyclotomic polynomial as integer coefficients
/// (constant term first). Cached internally.
unsigned long euler_phi(unsigned long m);
const std::vector<mpz_class>& cyclotomic_polynomial(unsigned m);

/// In Q(zeta_m), mu_infinity(Q(zeta_m)) = {+-zeta_m^j}; this returns a
/// primitive M-th root for any M dividing lcm(2, m).
Scalar root_of_unity_in(unsigned m, unsigned long M);

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod);
std::int64_t mod_inv(std::int64_t a, std::int64_t mod);
unsigned long order_mod_p(std::int64_t a, std::int64_t p); // order in F_p^x, a != 0

/// Scalar literal grammar:  expr := term (('+'|'-') term)*,
/// term := factor ('*' factor)*, factor := 'a' | 'a/b' | 'zeta(m)' ['^' j]
/// | 's' ['^' j] | '(' expr ')'.  E.g. "3/2 * zeta(4)^1 * s^-2".
Scalar parse_scalar(const std::string& text);
/// As above but forcing the result into `target` (used when a file fixes
/// the coefficient field up front).
Scalar parse_scalar(const std::string& text, const FieldKind& target);

} // namespace qtorus
