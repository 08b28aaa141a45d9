#include "qtorus/json_io.hpp"

namespace qtorus {

namespace {

json scalar_to_json(const Scalar& s) { return s.str(); }

Scalar scalar_from_json(const json& j, const FieldKind& target) {
    if (j.is_number_integer()) return parse_scalar(std::to_string(j.get<long>()), target);
    if (!j.is_string()) throw ParseError("scalar literal must be a string");
    return parse_scalar(j.get<std::string>(), target);
}

} // namespace

json presentation_to_json(const Presentation& p) {
    json q = json::array();
    for (std::size_t i = 0; i < p.rank(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < p.rank(); ++j) row.push_back(p.q(i, j).str());
        q.push_back(row);
    }
    json out{{"rank", p.rank()}, {"q", q}};
    if (p.field().kind == ScalarKind::Prime) out["p"] = p.field().p;
    return out;
}

Presentation presentation_from_json(const json& j) {
    if (!j.contains("rank")) throw ParseError("presentation file needs a \"rank\"");
    std::size_t n = j.at("rank").get<std::size_t>();
    FieldKind target = FieldKind::rational();
    bool prime = j.contains("p");
    if (prime) target = FieldKind::prime(j.at("p").get<long>());

    std::vector<std::vector<Scalar>> upper(n, std::vector<Scalar>(n, Scalar::integer(1)));
    if (j.contains("q")) {
        const json& q = j.at("q");
        for (std::size_t i = 0; i < n && i < q.size(); ++i)
            for (std::size_t jj = i + 1; jj < n && jj < q[i].size(); ++jj)
                upper[i][jj] = prime ? scalar_from_json(q[i][jj], target)
                                     : parse_scalar(q[i][jj].is_string()
                                                        ? q[i][jj].get<std::string>()
                                                        : std::to_string(q[i][jj].get<long>()));
    }
    return prime ? Presentation(n, upper, target) : Presentation(n, upper);
}

json element_to_json(const TorusElement& x) {
    json out = json::array();
    for (const auto& [lam, c] : x.terms()) {
        json exp = json::array();
        for (Int v : lam) exp.push_back(v);
        out.push_back(json{{"exp", exp}, {"coef", scalar_to_json(c)}});
    }
    return out;
}

TorusElement element_from_json(const json& j, const PresentationPtr& pres) {
    TorusElement x(pres);
    if (!j.is_array()) throw ParseError("element must be an array of terms");
    for (const json& term : j) {
        LatticePoint lam;
        for (const json& v : term.at("exp")) lam.push_back(v.get<Int>());
        if (lam.size() != pres->rank()) throw ParseError("term exponent rank mismatch");
        Scalar c = scalar_from_json(term.at("coef"), pres->field());
        x.add_term(lam, c.coerced(pres->field()));
    }
    return x;
}

json matrix_to_json(const TorusMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(element_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return json{{"size", m.size()}, {"entries", rows}};
}

TorusMatrix matrix_from_json(const json& j, const PresentationPtr& pres) {
    std::size_t ell = j.at("size").get<std::size_t>();
    TorusMatrix m(pres, ell);
    const json& rows = j.at("entries");
    for (std::size_t i = 0; i < ell; ++i)
        for (std::size_t jj = 0; jj < ell; ++jj)
            m.at(i, jj) = element_from_json(rows.at(i).at(jj), pres);
    return m;
}

json vector_to_json(const ModVector& v) {
    json out = json::array();
    for (const auto& c : v.coords) out.push_back(element_to_json(c));
    return out;
}

json imat_to_json(const IMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m.at_int(i, j));
        rows.push_back(row);
    }
    return rows;
}

IMat imat_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("integer matrix must be a nonempty array");
    IMat m(j.size(), j[0].size());
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (j[i].size() != m.cols) throw ParseError("ragged integer matrix");
        for (std::size_t jj = 0; jj < m.cols; ++jj) m.at(i, jj) = j[i][jj].get<Int>();
    }
    return m;
}

json word_to_json(const MorphismWord& w) {
    json gens = json::array();
    for (const Generator& g : w.generators()) {
        if (const auto* lbc = std::get_if<GenLatticeBaseChange>(&g)) {
            gens.push_back(json{{"type", "lattice"}, {"A", imat_to_json(lbc->a)}});
        } else if (const auto* sm = std::get_if<GenScalarMap>(&g)) {
            if (sm->type == GenScalarMap::Type::Residue)
                gens.push_back(json{{"type", "residue"},
                                    {"p", sm->residue.p},
                                    {"zeta_order", sm->residue.zeta_order},
                                    {"zeta_image", sm->residue.zeta_image},
                                    {"s_image", sm->residue.s_image}});
            else
                gens.push_back(json{{"type", "embed"}, {"order", sm->target.order}});
        } else if (const auto* ig = std::get_if<GenInt>(&g)) {
            gens.push_back(json{{"type", "int"},
                                {"g", matrix_to_json(ig->g)},
                                {"g_inv", matrix_to_json(ig->g_inv)}});
        } else if (std::holds_alternative<GenTranspose>(g)) {
            gens.push_back(json{{"type", "transpose"}});
        } else if (std::holds_alternative<GenIotaOp>(g)) {
            gens.push_back(json{{"type", "iota_op"}});
        } else if (const auto* tw = std::get_if<GenCentroidTwist>(&g)) {
            gens.push_back(json{{"type", "centroid_twist"},
                                {"z", element_to_json(tw->z)},
                                {"z_inv", element_to_json(tw->z_inv)}});
        }
    }
    return json{{"ell", w.ell()}, {"generators", gens}};
}

MorphismWord word_from_json(const json& j, const PresentationPtr& source) {
    std::size_t ell = j.at("ell").get<std::size_t>();
    MorphismWord w(source, ell);
    for (const json& g : j.at("generators")) {
        std::string type = g.at("type").get<std::string>();
        const PresentationPtr& at = w.target();
        if (type == "lattice") {
            w.push(GenLatticeBaseChange{imat_from_json(g.at("A"))});
        } else if (type == "residue") {
            GenScalarMap sm;
            sm.type = GenScalarMap::Type::Residue;
            sm.residue = ResidueMap{g.at("p").get<long>(),
                                    g.value("zeta_order", 1u),
                                    g.value("zeta_image", static_cast<long>(1)),
                                    g.value("s_image", static_cast<long>(1))};
            sm.residue.validate();
            w.push(std::move(sm));
        } else if (type == "embed") {
            GenScalarMap sm;
            sm.type = GenScalarMap::Type::CyclotomicEmbed;
            FieldKind f = at->field();
            unsigned order = g.at("order").get<unsigned>();
            sm.target = f.kind == ScalarKind::RationalFunction ? FieldKind::rational_function(order)
                                                               : FieldKind::cyclotomic(order);
            w.push(std::move(sm));
        } else if (type == "int") {
            w.push(int_explicit(matrix_from_json(g.at("g"), at),
                                matrix_from_json(g.at("g_inv"), at)));
        } else if (type == "int_elementary") {
            std::size_t i = g.at("i").get<std::size_t>(), jj = g.at("j").get<std::size_t>();
            if (i < 1 || jj < 1 || i > ell || jj > ell)
                throw ParseError("elementary indices are 1-based and bounded by ell");
            w.push(int_elementary(at, ell, i - 1, jj - 1, element_from_json(g.at("q"), at)));
        } else if (type == "int_diagonal") {
            std::vector<TorusElement> units;
            for (const json& u : g.at("units")) units.push_back(element_from_json(u, at));
            w.push(int_diagonal(at, units));
        } else if (type == "int_permutation") {
            std::vector<std::size_t> perm;
            for (const json& v : g.at("perm")) {
                std::size_t img = v.get<std::size_t>();
                if (img < 1 || img > ell) throw ParseError("permutation images are 1-based");
                perm.push_back(img - 1);
            }
            w.push(int_permutation(at, ell, perm));
        } else if (type == "transpose") {
            w.push(GenTranspose{});
        } else if (type == "iota_op") {
            w.push(GenIotaOp{});
        } else if (type == "centroid_twist") {
            w.push(GenCentroidTwist{element_from_json(g.at("z"), at),
                                    element_from_json(g.at("z_inv"), at)});
        } else {
            throw ParseError("unknown generator type \"" + type + "\"");
        }
    }
    return w;
}

json central_lattice_to_json(const CentralLattice& xi) {
    json out{{"basis", imat_to_json(xi.basis)}};
    if (xi.index)
        out["index"] = xi.index->get_si();
    else
        out["index"] = "infinite";
    return out;
}

json residue_map_to_json(const ResidueMap& h) {
    return json{{"p", h.p},
                {"zeta_order", h.zeta_order},
                {"zeta_image", h.zeta_image},
                {"s_image", h.s_image}};
}

json certificate_to_json(const SpecializationCertificate& cert) {
    json conditions = json::array();
    for (const auto& c : cert.conditions) {
        json entry{{"condition", c.name}, {"outcome", c.ok}};
        if (!c.witness.empty()) entry["witness"] = c.witness;
        conditions.push_back(entry);
    }
    return json{{"residue_map", residue_map_to_json(cert.map)},
                {"conditions", conditions},
                {"valid", cert.valid()}};
}

json conjugacy_report_to_json(const ConjugacyReport& r) {
    json gens = json::array();
    for (const auto& u : r.generators) gens.push_back(vector_to_json(u));
    return json{{"ell", r.g.size()},
                {"generators", gens},
                {"generator_degrees", r.generator_degrees},
                {"mad_check", r.mad_check},
                {"extensions", r.extensions},
                {"g", matrix_to_json(r.g)},
                {"g_inv", matrix_to_json(r.g_inv)}};
}

json lemma_reports_to_json(const std::vector<LemmaReport>& reports) {
    json out = json::array();
    for (const auto& r : reports)
        out.push_back(json{{"lemma", r.name}, {"cases", r.cases}, {"violations", r.violations}});
    return out;
}

} // namespace qtorus
