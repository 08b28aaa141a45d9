#include "qtorus/letters.hpp"

namespace qtorus {

namespace {

struct Letter {
    std::size_t index;
    int sign; // +1 for x_i, -1 for x_i^{-1}
};

void append_letters(std::vector<Letter>& word, const LatticePoint& lambda) {
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        long e = lambda[i];
        for (long k = 0; k < std::labs(e); ++k) word.push_back({i, e > 0 ? 1 : -1});
    }
}

// bubble sort by generator index; each swap of adjacent letters
// x_i^e x_j^f with i > j contributes the factor q_ij^{e f}
std::pair<Scalar, LatticePoint> normalize_word(const Presentation& p, std::vector<Letter> word) {
    Scalar factor = Scalar::one(p.field());
    bool swapped = true;
    while (swapped) {
        swapped = false;
        for (std::size_t k = 0; k + 1 < word.size(); ++k) {
            if (word[k].index > word[k + 1].index) {
                const Letter& a = word[k];
                const Letter& b = word[k + 1];
                if (!p.q(a.index, b.index).is_one())
                    factor = factor * p.q(a.index, b.index).pow(a.sign * b.sign);
                std::swap(word[k], word[k + 1]);
                swapped = true;
            }
        }
    }
    LatticePoint exp(p.rank(), 0);
    for (const Letter& l : word) exp[l.index] += l.sign;
    return {factor, exp};
}

} // namespace

Scalar letter_product_factor(const Presentation& p, const LatticePoint& lambda,
                             const LatticePoint& mu) {
    std::vector<Letter> word;
    append_letters(word, lambda);
    append_letters(word, mu);
    return normalize_word(p, std::move(word)).first;
}

Scalar letter_power_factor(const Presentation& p, const LatticePoint& lambda, long e) {
    std::vector<Letter> word;
    if (e >= 0) {
        for (long k = 0; k < e; ++k) append_letters(word, lambda);
        return normalize_word(p, std::move(word)).first;
    }
    // x^{-lambda} repeated; relate through (x^lambda)^e * (x^lambda)^{-e} = 1
    LatticePoint neg(lambda.size());
    for (std::size_t i = 0; i < lambda.size(); ++i) neg[i] = -lambda[i];
    // (x^lambda)^e = c * x^{e lambda}: compute c via the positive expansion
    // of the inverse monomial: x^{-lambda} = d * (x^lambda)^{-1} with
    // d = factor(lambda, -lambda), hence (x^lambda)^{-1} = d^{-1} x^{-lambda}.
    Scalar d = letter_product_factor(p, lambda, neg);
    Scalar c_pos = letter_power_factor(p, neg, -e); // (x^{-lambda})^{-e} = c_pos x^{e lambda}
    return c_pos * d.pow(e);
}

std::pair<Scalar, LatticePoint> letter_expand(const Presentation& p,
                                              const std::vector<LatticePoint>& monomials,
                                              const std::vector<long>& exponents) {
    if (monomials.size() != exponents.size())
        throw SizeMismatch("letter_expand argument length mismatch");
    Scalar factor = Scalar::one(p.field());
    LatticePoint acc(p.rank(), 0);
    for (std::size_t t = 0; t < monomials.size(); ++t) {
        Scalar c = letter_power_factor(p, monomials[t], exponents[t]);
        LatticePoint part(p.rank());
        for (std::size_t i = 0; i < p.rank(); ++i) part[i] = exponents[t] * monomials[t][i];
        factor = factor * c * letter_product_factor(p, acc, part);
        for (std::size_t i = 0; i < p.rank(); ++i) acc[i] += part[i];
    }
    return {factor, acc};
}

} // namespace qtorus
