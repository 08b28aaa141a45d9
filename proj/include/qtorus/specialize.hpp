#pragma once

#include "qtorus/module.hpp"

namespace qtorus {

/// One checked condition of a specialization certificate.
struct ConditionOutcome {
    std::string name;
    bool ok = false;
    std::string witness;
};

struct SpecializationCertificate {
    ResidueMap map;
    std::vector<ConditionOutcome> conditions;
    bool valid() const {
        for (const auto& c : conditions)
            if (!c.ok) return false;
        return true;
    }
};

/// Smallest prime p (with residue assignments) such that
///   p > max(3, ell, ell'), p does not divide m, m | p-1,
///   zeta_m maps to a residue of exact order m,
///   s maps to a residue of multiplicative order > order_bound,
///   every forbidden scalar has a nonzero, defined residue.
/// Throws NoPrimeInRange when prime_limit is passed.
ResidueMap propose_prime(const std::vector<const Presentation*>& presentations, std::size_t ell,
                         std::size_t ell_prime, const std::vector<Scalar>& forbidden,
                         long order_bound, long prime_limit = 10000);

Presentation specialize_presentation(const Presentation& p, const ResidueMap& h);
TorusElement specialize_element(const TorusElement& x, const ResidueMap& h,
                                const PresentationPtr& target);
TorusMatrix specialize_matrix(const TorusMatrix& x, const ResidueMap& h,
                              const PresentationPtr& target);
/// Rebuilds the word over the reduced presentations; Int and twist
/// witnesses are re-verified (WitnessDegenerates when a pair collapses).
MorphismWord specialize_word(const MorphismWord& w, const ResidueMap& h);

/// Evaluates every certificate condition; failures are recorded outcomes,
/// never exceptions.
SpecializationCertificate certify(const Presentation& p, const Presentation* p_prime,
                                  std::size_t ell, std::size_t ell_prime,
                                  const std::vector<TorusElement>& designated_elements,
                                  const std::vector<TorusMatrix>& designated_matrices,
                                  const ResidueMap& h);

} // namespace qtorus
