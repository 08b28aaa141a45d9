#include "qtorus/specialize.hpp"

#include <numeric>

namespace qtorus {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

struct FieldNeeds {
    unsigned m = 1;       // lcm of cyclotomic orders in play
    bool uses_s = false;
};

void absorb(FieldNeeds& needs, const FieldKind& f) {
    if (f.kind == ScalarKind::Prime)
        throw KindMismatch("cannot re-specialize prime-field data");
    needs.m = std::lcm(needs.m, f.order);
    if (f.kind == ScalarKind::RationalFunction) needs.uses_s = true;
}

} // namespace

ResidueMap propose_prime(const std::vector<const Presentation*>& presentations, std::size_t ell,
                         std::size_t ell_prime, const std::vector<Scalar>& forbidden,
                         long order_bound, long prime_limit) {
    FieldNeeds needs;
    for (const Presentation* p : presentations)
        if (p) absorb(needs, p->field());
    for (const Scalar& f : forbidden) absorb(needs, f.field());

    long min_p = std::max<long>({3, static_cast<long>(ell), static_cast<long>(ell_prime)});
    for (long p = min_p + 1; p <= prime_limit; ++p) {
        if (!is_prime(p)) continue;
        if (needs.m > 1 && (p % needs.m == 0 || (p - 1) % needs.m != 0)) continue;

        std::vector<long> zeta_candidates, s_candidates;
        if (needs.m > 1) {
            for (long z = 2; z < p; ++z)
                if (order_mod_p(z, p) == needs.m) zeta_candidates.push_back(z);
            if (zeta_candidates.empty()) continue;
        } else {
            zeta_candidates.push_back(1);
        }
        if (needs.uses_s) {
            for (long s = 2; s < p; ++s)
                if (static_cast<long>(order_mod_p(s, p)) > order_bound) s_candidates.push_back(s);
            if (s_candidates.empty()) continue;
        } else {
            s_candidates.push_back(1);
        }

        for (long z : zeta_candidates)
            for (long s : s_candidates) {
                ResidueMap h{p, needs.m, z, s};
                bool ok = true;
                for (const Scalar& f : forbidden) {
                    try {
                        if (f.residue(h).is_zero()) ok = false;
                    } catch (const OutsideSubring&) {
                        ok = false;
                    }
                    if (!ok) break;
                }
                if (ok) {
                    h.validate();
                    return h;
                }
            }
    }
    throw NoPrimeInRange("no admissible prime below " + std::to_string(prime_limit));
}

Presentation specialize_presentation(const Presentation& p, const ResidueMap& h) {
    std::size_t n = p.rank();
    std::vector<std::vector<Scalar>> upper(n, std::vector<Scalar>());
    for (std::size_t i = 0; i < n; ++i) {
        upper[i].assign(n, Scalar::prime_element(h.p, 1));
        for (std::size_t j = i + 1; j < n; ++j) {
            Scalar r = p.q(i, j).residue(h);
            if (r.is_zero())
                throw OutsideSubring("quantum matrix entry vanishes mod " + std::to_string(h.p));
            upper[i][j] = r;
        }
    }
    return Presentation(n, upper, FieldKind::prime(h.p));
}

TorusElement specialize_element(const TorusElement& x, const ResidueMap& h,
                                const PresentationPtr& target) {
    TorusElement r(target);
    for (const auto& [lam, c] : x.terms()) r.add_term(lam, c.residue(h));
    return r;
}

TorusMatrix specialize_matrix(const TorusMatrix& x, const ResidueMap& h,
                              const PresentationPtr& target) {
    TorusMatrix r(target, x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            r.at(i, j) = specialize_element(x.at(i, j), h, target);
    return r;
}

MorphismWord specialize_word(const MorphismWord& w, const ResidueMap& h) {
    PresentationPtr source = share(specialize_presentation(*w.source(), h));
    MorphismWord out(source, w.ell());
    PresentationPtr station = source;
    PresentationPtr original = w.source();

    for (const Generator& g : w.generators()) {
        if (const auto* lbc = std::get_if<GenLatticeBaseChange>(&g)) {
            out.push(GenLatticeBaseChange{lbc->a});
        } else if (std::holds_alternative<GenScalarMap>(g)) {
            throw ChainMismatch("cannot specialize a word that already maps scalars");
        } else if (const auto* ig = std::get_if<GenInt>(&g)) {
            TorusMatrix rg = specialize_matrix(ig->g, h, out.target());
            TorusMatrix rginv = specialize_matrix(ig->g_inv, h, out.target());
            TorusMatrix id = TorusMatrix::identity(out.target(), w.ell());
            if (mat_mul(rg, rginv) != id || mat_mul(rginv, rg) != id)
                throw WitnessDegenerates("an Int witness pair collapses mod " +
                                         std::to_string(h.p));
            out.push(GenInt{std::move(rg), std::move(rginv)});
        } else if (std::holds_alternative<GenTranspose>(g)) {
            out.push(GenTranspose{});
        } else if (std::holds_alternative<GenIotaOp>(g)) {
            out.push(GenIotaOp{});
        } else if (const auto* tw = std::get_if<GenCentroidTwist>(&g)) {
            TorusElement z = specialize_element(tw->z, h, out.target());
            TorusElement zi = specialize_element(tw->z_inv, h, out.target());
            if (qt_mul(z, zi) != TorusElement::unit(out.target()))
                throw WitnessDegenerates("a centroid twist collapses mod " + std::to_string(h.p));
            out.push(GenCentroidTwist{std::move(z), std::move(zi)});
        }
    }
    (void)station;
    (void)original;
    return out;
}

namespace {

void check_presentation_conditions(SpecializationCertificate& cert, const Presentation& p,
                                   const ResidueMap& h, const std::string& tag) {
    ConditionOutcome entries{tag + "_entries_nonzero", true, ""};
    bool reducible = true;
    for (std::size_t i = 0; i < p.rank() && entries.ok; ++i)
        for (std::size_t j = i + 1; j < p.rank() && entries.ok; ++j) {
            try {
                if (p.q(i, j).residue(h).is_zero()) {
                    entries.ok = false;
                    entries.witness = "q(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                }
            } catch (const Error& e) {
                entries.ok = false;
                reducible = false;
                entries.witness =
                    "q(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + e.what();
            }
        }
    cert.conditions.push_back(entries);

    ConditionOutcome fgc{tag + "_reduced_fgc", false, ""};
    ConditionOutcome index{tag + "_index_coprime_to_p", false, ""};
    if (entries.ok && reducible) {
        Presentation reduced = specialize_presentation(p, h);
        fgc.ok = is_fgc(reduced); // finite fields force finite orders
        CentralLattice xi = central_lattice(reduced);
        if (xi.index.has_value()) {
            index.ok = (*xi.index % h.p) != 0;
            index.witness = "[A:Z(A)] = " + xi.index->get_str();
        } else {
            index.witness = "index infinite";
        }
    } else {
        fgc.witness = "presentation did not reduce";
        index.witness = "presentation did not reduce";
    }
    cert.conditions.push_back(fgc);
    cert.conditions.push_back(index);
}

} // namespace

SpecializationCertificate certify(const Presentation& p, const Presentation* p_prime,
                                  std::size_t ell, std::size_t ell_prime,
                                  const std::vector<TorusElement>& designated_elements,
                                  const std::vector<TorusMatrix>& designated_matrices,
                                  const ResidueMap& h) {
    SpecializationCertificate cert;
    cert.map = h;

    ConditionOutcome chr{"char_very_good", true, "p = " + std::to_string(h.p)};
    if (h.p <= 3) chr.ok = false;
    if (ell > 0 && h.p % static_cast<long>(ell) == 0) chr.ok = false;
    if (ell_prime > 0 && h.p % static_cast<long>(ell_prime) == 0) chr.ok = false;
    cert.conditions.push_back(chr);

    check_presentation_conditions(cert, p, h, "A");
    if (p_prime) check_presentation_conditions(cert, *p_prime, h, "Aprime");

    for (std::size_t k = 0; k < designated_elements.size(); ++k) {
        ConditionOutcome c{"designated_element_" + std::to_string(k + 1) + "_nonzero", false, ""};
        try {
            PresentationPtr target = share(specialize_presentation(*designated_elements[k].pres(), h));
            c.ok = !specialize_element(designated_elements[k], h, target).is_zero();
        } catch (const Error& e) {
            c.witness = e.what();
        }
        cert.conditions.push_back(c);
    }
    for (std::size_t k = 0; k < designated_matrices.size(); ++k) {
        ConditionOutcome c{"designated_matrix_" + std::to_string(k + 1) + "_nonzero", false, ""};
        try {
            PresentationPtr target = share(specialize_presentation(*designated_matrices[k].pres(), h));
            c.ok = !specialize_matrix(designated_matrices[k], h, target).is_zero();
        } catch (const Error& e) {
            c.witness = e.what();
        }
        cert.conditions.push_back(c);
    }
    return cert;
}

} // namespace qtorus
