#pragma once

#include <json.hpp>

#include "qtorus/conjugacy.hpp"
#include "qtorus/lemma_suite.hpp"

namespace qtorus {

using nlohmann::json;

/// Presentation file: {"rank": n, "q": [["1","zeta(3)^1"],["1","1"]]}.
/// Only the strict upper triangle is read. An optional {"p": 7} switches
/// literal parsing into F_p.
json presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const json& j);

/// Element: [{"exp": [l1,...,ln], "coef": "literal"}, ...].
json element_to_json(const TorusElement& x);
TorusElement element_from_json(const json& j, const PresentationPtr& pres);

/// Matrix: {"size": ell, "entries": [[element, ...], ...]}.
json matrix_to_json(const TorusMatrix& m);
TorusMatrix matrix_from_json(const json& j, const PresentationPtr& pres);

json vector_to_json(const ModVector& v);

json imat_to_json(const IMat& m);
IMat imat_from_json(const json& j);

/// Word: {"ell": l, "generators": [{"type": "lattice", "A": ...},
/// {"type": "int_elementary", "i": 1, "j": 2, "q": element}, ...]}; the
/// source presentation comes from the caller. Indices are 1-based.
json word_to_json(const MorphismWord& w);
MorphismWord word_from_json(const json& j, const PresentationPtr& source);

json central_lattice_to_json(const CentralLattice& xi);
json certificate_to_json(const SpecializationCertificate& cert);
json residue_map_to_json(const ResidueMap& h);
json conjugacy_report_to_json(const ConjugacyReport& r);
json lemma_reports_to_json(const std::vector<LemmaReport>& reports);

} // namespace qtorus
