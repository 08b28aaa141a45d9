#pragma once

#include "qtorus/module.hpp"

namespace qtorus {

struct LemmaReport {
    std::string name;
    std::size_t cases = 0;
    std::size_t violations = 0;
    std::string detail;
};

struct SuiteOptions {
    unsigned long seed = 1;
    std::size_t trials = 100; // cases per lemma
    std::size_t ell = 2;
    Int window = 2; // slice window for the diagonalizability checks
};

/// Truncated-window verification of the diagonalizability lemma:
/// (a) for supp(d) not contained in {0}, no pair (q != 0, omega) with
///     d q = omega q exists: the invariant subspace of the window is zero;
/// (b) for non-central d, ad d on the window's invariant subspace is
///     nilpotent, so it has no nonzero eigenvalue in any extension of F.
bool left_mult_has_no_eigenpair(const TorusElement& d, Int window);
bool ad_action_is_nilpotent_on_window(const TorusElement& d, Int window);

LemmaReport lemma_deg_prop(const PresentationPtr& p, const SuiteOptions& o);
LemmaReport lemma_dpm(const PresentationPtr& p, const SuiteOptions& o);
LemmaReport lemma_diag_q(const PresentationPtr& p, const SuiteOptions& o);
LemmaReport lemma_qua_pro33(const PresentationPtr& p, const SuiteOptions& o);
LemmaReport lemma_cc(const PresentationPtr& p, const SuiteOptions& o);
LemmaReport lemma_ctd_sl(const PresentationPtr& p, const SuiteOptions& o);
LemmaReport lemma_como1(const PresentationPtr& p, const SuiteOptions& o);
LemmaReport lemma_lem811(const PresentationPtr& p, const SuiteOptions& o);
LemmaReport lemma_lem812(const PresentationPtr& p, const SuiteOptions& o);

std::vector<LemmaReport> run_lemma_suites(const PresentationPtr& p, const SuiteOptions& o);

} // namespace qtorus
