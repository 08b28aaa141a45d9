#pragma once

#include "qtorus/specialize.hpp"

namespace qtorus {

/// Result of the conjugacy pipeline: g with Int(g) carrying the standard
/// MAD of the target onto the image of the source's standard MAD.
struct ConjugacyReport {
    TorusMatrix g, g_inv;
    std::vector<ModVector> generators;  // cyclic generators of the V_i
    std::vector<long> generator_degrees;
    bool mad_check = false;
    std::vector<unsigned> extensions;   // cyclotomic enlargements (none here)
};

/// The final-step pipeline: O = (w(E_11), ..., w(E_ll)), g from the cyclic
/// generators of the V_i = w(E_ii)(V), then the literal MAD-transport
/// identity w(b) = g b g^{-1} is verified on every basis element b of the
/// standard MAD. Throws NotAssociativeWord / NotCyclic / WindowExhausted /
/// VerificationFailed.
ConjugacyReport main_conjugacy(const MorphismWord& w, const DegreeBasis& eps, long t_max,
                               unsigned long spot_check_seed = 1);

/// Monomial witnesses y_i = c_i x^{mu_i} with y_i^{ell_i} = x^{lambda_i}
/// and pairwise commuting y's; the scalar root extraction may enlarge the
/// cyclotomic order (recorded per witness, with the enlarged presentation).
struct RootSolveResult {
    bool ok = false;
    PresentationPtr presentation;       // possibly enlarged coefficient field
    std::vector<TorusElement> witnesses;
    std::vector<unsigned> extensions;   // new cyclotomic orders, 0 = none
    std::string failure;                // the violated constraint when !ok
};
RootSolveResult solve_commuting_roots(const PresentationPtr& p,
                                      const std::vector<std::pair<unsigned long, LatticePoint>>& targets);

} // namespace qtorus
