#pragma once

#include "qtorus/linalg.hpp"
#include "qtorus/morphism.hpp"

namespace qtorus {

/// Element of the free right module V = Q^{+ell}: v = sum e_i q_i.
struct ModVector {
    PresentationPtr pres;
    std::vector<TorusElement> coords;

    ModVector() = default;
    ModVector(PresentationPtr p, std::size_t ell)
        : pres(std::move(p)), coords(ell, TorusElement(pres)) {}
    static ModVector basis_vector(PresentationPtr p, std::size_t ell, std::size_t i);

    std::size_t ell() const { return coords.size(); }
    bool is_zero() const;
    bool operator==(const ModVector& o) const;

    ModVector operator+(const ModVector& o) const;
    ModVector operator-(const ModVector& o) const;
    ModVector scaled(const Scalar& s) const;
    /// Right action v * q.
    ModVector right_mul(const TorusElement& q) const;

    std::string str() const;
};

/// Left action of a matrix: (M v)_i = sum_k M_ik v_k.
ModVector apply_matrix(const TorusMatrix& m, const ModVector& v);

std::optional<long> vec_degree(const ModVector& v, const DegreeBasis& eps);

bool in_positive_part(const ModVector& v);
/// u != 0, u in V^+, and no axis x_i divides every nonzero coordinate.
bool is_indivisible(const ModVector& u);

/// Complete orthogonal system of idempotents (e_i e_j = delta_ij e_i,
/// sum e_i = 1), verified at construction.
struct OrthogonalSystem {
    std::vector<TorusMatrix> idempotents;
};
OrthogonalSystem make_orthogonal_system(std::vector<TorusMatrix> idempotents);

/// (w(E_11), ..., w(E_ll)) for an associative word w.
OrthogonalSystem system_from_morphism(const MorphismWord& w);

/// Submodule U = e(V) for an idempotent e; membership u in U is exactly
/// e u = u, so degree slices are finite-dimensional linear algebra.
struct SubmoduleSpec {
    TorusMatrix e;
};
SubmoduleSpec submodule(const TorusMatrix& e); // verifies idempotency

/// Basis of U_t = {v in V^+ : deg v <= t, e v = v} over the coefficient
/// field. eps must have all-positive trace weights.
std::vector<ModVector> plus_slice(const SubmoduleSpec& u, long t, const DegreeBasis& eps);

/// First nonzero slice vector scanning t = 0..t_max, normalized so the
/// first nonzero coordinate has leading coefficient 1; always indivisible.
/// Throws WindowExhausted if no slice is populated.
ModVector minimal_vector(const SubmoduleSpec& u, const DegreeBasis& eps, long t_max);

/// Exact q with u0 * q = v, if one exists (graded division bounded by the
/// support box that the degree laws force).
std::optional<TorusElement> solve_membership(const ModVector& v, const ModVector& u0,
                                             const DegreeBasis& eps);

struct CyclicCertificate {
    enum class Kind { Cyclic, CounterWitness, WindowExhausted } kind;
    ModVector generator;    // for Cyclic (and the attempted u0 otherwise)
    ModVector witness;      // for CounterWitness: v0 in U^+ \ u0 Q^+
    long window = 0;        // last degree checked
};

/// Window-bounded cyclicity certification: checks every slice t <= t_max
/// against u0 Q^+. Reports Cyclic only when the window also covers the
/// instance-derived bound 2 * (max entry degree of e) + 4.
CyclicCertificate certify_cyclic(const SubmoduleSpec& u, const DegreeBasis& eps, long t_max);

long recommended_window(const TorusMatrix& e, const DegreeBasis& eps);

/// g with g E_ii g^{-1} = e_i: columns are cyclic generators of the
/// V_i = e_i(V), the inverse is assembled by membership solving and the
/// pair is verified exactly. Throws NotCyclic / NotInvertible.
struct Conjugator {
    TorusMatrix g, g_inv;
    std::vector<ModVector> generators;
};
Conjugator build_conjugator(const OrthogonalSystem& o, const DegreeBasis& eps, long t_max);

} // namespace qtorus
