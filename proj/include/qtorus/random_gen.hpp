#pragma once

#include <random>

#include "qtorus/morphism.hpp"

namespace qtorus {

using Rng = std::mt19937_64;

/// Product of random elementary operations; entries stay within `bound`.
IMat random_unimodular(Rng& rng, std::size_t n, Int bound);

/// Entries are powers of one primitive root (fgc by construction).
Presentation random_fgc_presentation(Rng& rng, std::size_t n, unsigned max_order);

/// Mixed: with `s_probability` (out of 100), one entry becomes c * s^{+-1}.
Presentation random_presentation(Rng& rng, std::size_t n, unsigned max_order,
                                 unsigned s_probability);

Scalar random_scalar(Rng& rng, const FieldKind& f);
Scalar random_nonzero_scalar(Rng& rng, const FieldKind& f);

TorusElement random_element(Rng& rng, const PresentationPtr& pres, std::size_t max_points,
                            Int exp_bound);
TorusElement random_nonzero_element(Rng& rng, const PresentationPtr& pres, std::size_t max_points,
                                    Int exp_bound);

TorusMatrix random_matrix(Rng& rng, const PresentationPtr& pres, std::size_t ell,
                          std::size_t max_points, Int exp_bound);
/// Random element of sl: random matrix with the central part of its trace
/// subtracted from a diagonal slot.
TorusMatrix random_sl_matrix(Rng& rng, const PresentationPtr& pres, std::size_t ell,
                             std::size_t max_points, Int exp_bound);

/// Single-point element with a random nonzero coefficient.
TorusElement random_monomial(Rng& rng, const PresentationPtr& pres, Int exp_bound);

/// Random composite of lattice base changes, verified Int factors and
/// (optionally paired) anti generators.
MorphismWord random_word(Rng& rng, const PresentationPtr& source, std::size_t ell,
                         std::size_t depth, bool associative_only);

} // namespace qtorus
