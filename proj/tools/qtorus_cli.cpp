#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qtorus/json_io.hpp"

using namespace qtorus;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return j;
}

PresentationPtr load_presentation(const std::string& path) {
    return share(presentation_from_json(load_json(path)));
}

// designated elements: either a monomial literal "coef * x^(1,2)", a plain
// scalar literal, or a path to an element JSON file
TorusElement parse_designated(const std::string& text, const PresentationPtr& pres) {
    auto pos = text.find("x^(");
    if (pos != std::string::npos) {
        std::string coef = text.substr(0, pos);
        while (!coef.empty() && (coef.back() == '*' || coef.back() == ' ')) coef.pop_back();
        auto close = text.find(')', pos);
        if (close == std::string::npos) throw ParseError("unterminated monomial exponent");
        LatticePoint lam;
        std::string body = text.substr(pos + 3, close - pos - 3);
        std::size_t start = 0;
        while (start <= body.size()) {
            auto comma = body.find(',', start);
            std::string piece = body.substr(start, comma == std::string::npos ? comma : comma - start);
            lam.push_back(std::stol(piece));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        Scalar c = coef.empty() ? Scalar::integer(1) : parse_scalar(coef);
        return TorusElement::monomial(pres, lam, c.coerced(pres->field()));
    }
    if (std::ifstream probe(text); probe.good())
        return element_from_json(load_json(text), pres);
    return TorusElement::constant(pres, parse_scalar(text).coerced(pres->field()));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run(int argc, char** argv) {
    CLI::App app{"exact quantum-torus arithmetic and the MAD conjugacy pipeline"};
    app.require_subcommand(1);

    std::string pres_file, second_file, word_file, matrix_file;
    long prime_limit = 10000, order_bound = 48, t_max = 0;
    unsigned long seed = 1;
    std::size_t trials = 200, ell = 2;
    std::vector<std::string> designated;

    auto* centre = app.add_subcommand("centre", "central grading group of a presentation");
    centre->add_option("file", pres_file)->required();

    auto* fgc = app.add_subcommand("fgc", "finite generation over the centroid");
    fgc->add_option("file", pres_file)->required();

    auto* canonical = app.add_subcommand("canonical", "canonical presentation and symbol algebras");
    canonical->add_option("file", pres_file)->required();

    auto* specialize = app.add_subcommand("specialize", "residue map proposal and certification");
    specialize->add_option("file", pres_file)->required();
    specialize->add_option("file2", second_file);
    specialize->add_option("--prime-limit", prime_limit);
    specialize->add_option("--order-bound", order_bound);
    specialize->add_option("--ell", ell);
    specialize->add_option("--designate", designated);

    auto* madcheck = app.add_subcommand("mad-check", "standard-MAD extension decision");
    madcheck->add_option("file", pres_file)->required();
    madcheck->add_option("--matrix", matrix_file)->required();

    auto* conjugate = app.add_subcommand("conjugate", "main-theorem pipeline for a word");
    conjugate->add_option("file", pres_file)->required();
    conjugate->add_option("--word", word_file)->required();
    conjugate->add_option("--t-max", t_max);

    auto* verify = app.add_subcommand("verify-lemmas", "run the lemma property suites");
    verify->add_option("file", pres_file)->required();
    verify->add_option("--seed", seed);
    verify->add_option("--trials", trials);
    verify->add_option("--ell", ell);

    CLI11_PARSE(app, argc, argv);

    if (centre->parsed()) {
        emit(central_lattice_to_json(central_lattice(*load_presentation(pres_file))));
        return 0;
    }

    if (fgc->parsed()) {
        PresentationPtr p = load_presentation(pres_file);
        json orders = json::array();
        for (std::size_t i = 0; i < p->rank(); ++i)
            for (std::size_t j = i + 1; j < p->rank(); ++j) {
                auto ord = p->q(i, j).mult_order();
                orders.push_back(json{{"i", i + 1},
                                      {"j", j + 1},
                                      {"order", ord ? json(*ord) : json("infinite")}});
            }
        emit(json{{"fgc", is_fgc(*p)}, {"entry_orders", orders}});
        return 0;
    }

    if (canonical->parsed()) {
        PresentationPtr p = load_presentation(pres_file);
        CanonicalPresentation canon = canonical_presentation(*p);
        SymbolDecomposition dec = symbol_decomposition(canon.presentation);
        json tvecs = json::array();
        for (const auto& t : dec.central_generators) {
            json v = json::array();
            for (Int x : t) v.push_back(x);
            tvecs.push_back(v);
        }
        json etale = json::array();
        for (std::size_t i : dec.etale_indices) etale.push_back(i + 1);
        emit(json{{"A", imat_to_json(canon.base_change)},
                  {"canonical", presentation_to_json(canon.presentation)},
                  {"symbol",
                   json{{"blocks", dec.blocks},
                        {"orders", dec.orders},
                        {"central_generators", tvecs},
                        {"etale_generators", etale}}}});
        return 0;
    }

    if (specialize->parsed()) {
        PresentationPtr p = load_presentation(pres_file);
        PresentationPtr p2;
        if (!second_file.empty()) p2 = load_presentation(second_file);

        std::vector<TorusElement> elements;
        std::vector<Scalar> forbidden;
        for (std::size_t i = 0; i < p->rank(); ++i)
            for (std::size_t j = i + 1; j < p->rank(); ++j) forbidden.push_back(p->q(i, j));
        if (p2)
            for (std::size_t i = 0; i < p2->rank(); ++i)
                for (std::size_t j = i + 1; j < p2->rank(); ++j) forbidden.push_back(p2->q(i, j));
        for (const std::string& d : designated) {
            TorusElement e = parse_designated(d, p);
            elements.push_back(e);
            for (const auto& [lam, c] : e.terms()) forbidden.push_back(c);
        }

        ResidueMap h = propose_prime({p.get(), p2 ? p2.get() : nullptr}, ell, ell, forbidden,
                                     order_bound, prime_limit);
        SpecializationCertificate cert =
            certify(*p, p2 ? p2.get() : nullptr, ell, ell, elements, {}, h);
        emit(certificate_to_json(cert));
        return cert.valid() ? 0 : 3;
    }

    if (madcheck->parsed()) {
        PresentationPtr p = load_presentation(pres_file);
        TorusMatrix d = matrix_from_json(load_json(matrix_file), p);
        MadExtensionResult r = mad_extension_test(d);
        json out{{"in_standard_mad", r.in_standard_mad}};
        if (!r.in_standard_mad) {
            out["failing_step"] = r.failing_step;
            out["entry"] = json::array({r.entry_i + 1, r.entry_j + 1});
            out["witness"] = element_to_json(r.witness);
        }
        emit(out);
        return 0;
    }

    if (conjugate->parsed()) {
        PresentationPtr p = load_presentation(pres_file);
        MorphismWord w = word_from_json(load_json(word_file), p);
        ConjugacyReport r = main_conjugacy(w, DegreeBasis::standard(p->rank()), t_max);
        emit(conjugacy_report_to_json(r));
        return r.mad_check ? 0 : 3;
    }

    if (verify->parsed()) {
        PresentationPtr p = load_presentation(pres_file);
        SuiteOptions o;
        o.seed = seed;
        o.trials = trials;
        o.ell = ell;
        std::vector<LemmaReport> reports = run_lemma_suites(p, o);
        emit(lemma_reports_to_json(reports));
        bool all_ok = true;
        for (const auto& r : reports) all_ok = all_ok && r.violations == 0;
        std::cout << (all_ok ? "all lemma suites passed" : "lemma violations found") << "\n";
        return all_ok ? 0 : 3;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const WindowExhausted& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const NoPrimeInRange& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const VerificationFailed& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const SystemInvalid& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const NotCyclic& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const NotInvertible& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const WitnessDegenerates& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
