#pragma once

#include "qtorus/element.hpp"

namespace qtorus {

/// Letter-expansion normalization: writes a word in the single letters
/// x_i^{+-1} and sorts it into increasing index order by adjacent
/// transpositions, multiplying in one q-factor per swap. This is a second,
/// independent route to the product of monomials (no cocycle formula).

/// Scalar c with x^lambda * x^mu = c * x^{lambda+mu}.
Scalar letter_product_factor(const Presentation& p, const LatticePoint& lambda,
                             const LatticePoint& mu);

/// Scalar c with (x^lambda)^e = c * x^{e*lambda} (e may be negative).
Scalar letter_power_factor(const Presentation& p, const LatticePoint& lambda, long e);

/// Expansion of the product x^{rows[0]}^{e_0} * ... * x^{rows[k-1]}^{e_{k-1}}
/// over p: coefficient and exponent.
std::pair<Scalar, LatticePoint> letter_expand(const Presentation& p,
                                              const std::vector<LatticePoint>& monomials,
                                              const std::vector<long>& exponents);

} // namespace qtorus
