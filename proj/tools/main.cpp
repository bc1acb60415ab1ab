/* Command-line front end. One command per process; reports are printed as
 * human-readable text or, with --json, as a single JSON document whose
 * layout is stable for fixed inputs and seed (timing_ms aside). */

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "semikit/acceptance.hpp"
#include "semikit/bounded.hpp"
#include "semikit/congruence.hpp"
#include "semikit/errors.hpp"
#include "semikit/flatness.hpp"
#include "semikit/order.hpp"
#include "semikit/semiring.hpp"

using json = nlohmann::ordered_json;
using namespace semikit;

namespace {

using Clock = std::chrono::steady_clock;

std::string fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

json int_vec_json(const std::vector<Int>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

std::vector<Int> int_vec_from_json(const json& a) {
    std::vector<Int> v;
    for (const auto& x : a) {
        if (x.is_string())
            v.emplace_back(Int(x.get<std::string>()));
        else
            v.emplace_back(Int(x.get<long long>()));
    }
    return v;
}

/* Report plumbing: every command assembles one of these. */
struct Report {
    json body;
    Clock::time_point t0 = Clock::now();
    bool as_json = false;

    explicit Report(std::string command) { body["command"] = std::move(command); }

    void digest(const std::string& canonical_inputs) {
        body["inputs_digest"] = fnv1a(canonical_inputs);
    }

    void finish(const std::string& human) {
        body["timing_ms"] =
            std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
        if (as_json)
            std::cout << body.dump(2) << "\n";
        else
            std::cout << human;
    }
};

/* "boolean", "minmax:4", ... or a path to a JSON table file. */
FiniteSemiring load_semiring(const std::string& spec) {
    if (spec.find(".json") != std::string::npos || spec.find('/') != std::string::npos) {
        std::ifstream in(spec);
        if (!in) throw invalid_input_error("cannot open semiring file '" + spec + "'");
        json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw invalid_input_error("bad JSON in '" + spec + "': " + e.what());
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
        return FiniteSemiring::from_tables(
            j.at("size").get<uint32_t>(), j.at("add").get<std::vector<uint32_t>>(),
            j.at("mul").get<std::vector<uint32_t>>(), j.at("zero").get<uint32_t>(),
            j.at("one").get<uint32_t>(), std::move(labels))
            .with_name(spec);
    }
    return catalog_get(spec);
}

json semiring_json(const FiniteSemiring& s) {
    json j;
    j["name"] = s.name();
    j["size"] = s.size();
    j["zero"] = s.zero();
    j["one"] = s.one();
    j["add"] = s.add_table();
    j["mul"] = s.mul_table();
    json labels = json::array();
    for (uint32_t i = 0; i < s.size(); ++i) labels.push_back(s.label(i));
    j["labels"] = labels;
    return j;
}

json partition_json(const CongruencePartition& p) {
    json classes = json::array();
    for (const auto& cls : p.classes()) classes.push_back(cls);
    return classes;
}

/* Pairs of order elements: "1,0:1,1;0,1:2,0" or "1:1+w" (w-polynomials). */
std::vector<std::pair<OrderElement, OrderElement>> parse_order_pairs(const RealOrder& order,
                                                                     const std::string& text) {
    std::vector<std::pair<OrderElement, OrderElement>> out;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        if (pair.empty()) continue;
        auto colon = pair.find(':');
        if (colon == std::string::npos)
            throw invalid_input_error("pair '" + pair + "' needs a ':' separator");
        out.emplace_back(order.parse_element(pair.substr(0, colon)),
                         order.parse_element(pair.substr(colon + 1)));
    }
    if (out.empty()) throw invalid_input_error("no generator pairs given");
    return out;
}

std::vector<OrderElement> parse_order_elements(const RealOrder& order, const std::string& text) {
    std::vector<OrderElement> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ';'))
        if (!tok.empty()) out.push_back(order.parse_element(tok));
    if (out.empty()) throw invalid_input_error("no elements given");
    return out;
}

json ideal_json(const RealOrder& order, const IdealLattice& ideal) {
    json j;
    json rows = json::array();
    for (int r = 0; r < ideal.hnf.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < ideal.hnf.cols(); ++c) row.push_back(ideal.hnf(r, c).str());
        rows.push_back(row);
    }
    j["hnf"] = rows;
    j["determinant"] = ideal.determinant.str();
    json gens = json::array();
    for (const auto& g : ideal.generators) gens.push_back(order.str(g));
    j["generators"] = gens;
    return j;
}

json step_json(const RefinementStep& st) {
    json j;
    if (st.kind == RefinementStep::Kind::Subtract) {
        j["op"] = "subtract";
        j["i"] = st.i;
        j["j"] = st.j;
    } else {
        j["op"] = "permute";
        j["perm"] = st.perm;
    }
    return j;
}

RefinementStep step_from_json(const json& j) {
    if (j.at("op") == "subtract")
        return RefinementStep::subtract(j.at("i").get<int>(), j.at("j").get<int>());
    if (j.at("op") == "permute")
        return RefinementStep::permute(j.at("perm").get<std::vector<int>>());
    throw invalid_input_error("unknown step op");
}

json collection_json(const NiceCollection& v) {
    json a = json::array();
    for (const auto& vec : v.vecs) a.push_back(int_vec_json(vec));
    return a;
}

NiceCollection collection_from_json(const json& a) {
    NiceCollection v;
    for (const auto& row : a) v.vecs.push_back(int_vec_from_json(row));
    return v;
}

/* gamma coordinates are polynomials in the generator, so ';' and ',' are
 * both fine as separators. */
std::vector<std::string> split_gamma(const std::string& text) {
    std::vector<std::string> out;
    std::string tok;
    for (char c : text) {
        if (c == ';' || c == ',') {
            if (!tok.empty()) out.push_back(tok);
            tok.clear();
        } else {
            tok += c;
        }
    }
    if (!tok.empty()) out.push_back(tok);
    return out;
}

GammaForm gamma_from_strings(const std::shared_ptr<const NumberField>& field,
                             const std::vector<std::string>& coords) {
    std::vector<FieldElement> parsed;
    for (const auto& c : coords) parsed.push_back(field->parse_element(c));
    return GammaForm(field, std::move(parsed));
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

LatticeVector lattice_vector_from_string(const std::string& text) {
    LatticeVector v;
    for (const auto& tok : split(text, ','))
        try {
            v.emplace_back(Int(tok));
        } catch (const std::exception&) {
            throw invalid_input_error("bad integer '" + tok + "' in vector");
        }
    if (v.empty()) throw invalid_input_error("empty lattice vector");
    return v;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"semikit: exact workbench for finite-semiring congruences, canonical positive "
                 "models of real orders, and flatness certificates"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    std::uint64_t seed = 0;
    std::uint64_t budget = 50'000'000;
    int degree_bound = 10;
    std::int64_t coord_bound = 0;
    app.add_flag("--json", as_json, "emit a JSON report");
    app.add_option("--seed", seed, "seed for randomized runs");
    app.add_option("--budget", budget, "step budget for bounded closures");
    app.add_option("--degree-bound", degree_bound, "degree bound for B[X] universes");
    app.add_option("--coord-bound", coord_bound, "coordinate bound for cone universes");

    /* ---- semiring ---- */
    auto* sr = app.add_subcommand("semiring", "finite semirings as operation tables");
    sr->require_subcommand(1);
    std::string sr_spec;
    uint32_t sr_max_carrier = 24;

    auto* sr_validate = sr->add_subcommand("validate", "check the semiring axioms");
    sr_validate->add_option("spec", sr_spec, "catalog spec or JSON file")->required();
    sr_validate->callback([&] {
        Report rep("semiring validate");
        rep.as_json = as_json;
        rep.digest(sr_spec);
        FiniteSemiring s = load_semiring(sr_spec);
        auto violations = validate_axioms(s);
        rep.body["semiring"] = semiring_json(s);
        rep.body["valid"] = violations.empty();
        json v = json::array();
        for (const auto& viol : violations)
            v.push_back({{"axiom", viol.axiom},
                         {"witness", viol.witness},
                         {"detail", viol.detail}});
        rep.body["violations"] = v;
        std::ostringstream human;
        if (violations.empty()) {
            human << sr_spec << ": all axioms hold (" << s.size() << " elements)\n";
        } else {
            human << sr_spec << ": NOT a semiring, " << violations.size() << " violations\n";
            for (size_t i = 0; i < violations.size() && i < 5; ++i)
                human << "  " << violations[i].axiom << " at (" << violations[i].witness[0] << ","
                      << violations[i].witness[1] << "," << violations[i].witness[2] << ")\n";
        }
        rep.finish(human.str());
        if (!violations.empty()) throw invalid_input_error("axioms violated");
    });

    auto* sr_enum = sr->add_subcommand("enumerate", "list every congruence");
    sr_enum->add_option("spec", sr_spec)->required();
    sr_enum->add_option("--max-carrier", sr_max_carrier, "carrier size budget");
    sr_enum->callback([&] {
        Report rep("semiring enumerate");
        rep.as_json = as_json;
        rep.digest(sr_spec);
        FiniteSemiring s = load_semiring(sr_spec);
        require_valid(s);
        EnumerationBudget eb;
        eb.max_carrier = sr_max_carrier;
        auto lattice = enumerate_congruences(s, eb);
        rep.body["semiring"] = sr_spec;
        rep.body["count"] = lattice.congruences.size();
        json list = json::array();
        for (const auto& info : lattice.congruences) {
            json c;
            c["classes"] = partition_json(info.partition);
            c["principal"] = info.principal;
            json gens = json::array();
            for (const auto& [a, b] : info.generators) gens.push_back({a, b});
            c["generators"] = gens;
            list.push_back(c);
        }
        rep.body["congruences"] = list;
        std::ostringstream human;
        human << sr_spec << ": " << lattice.congruences.size() << " congruences\n";
        for (const auto& info : lattice.congruences) {
            human << "  " << (info.principal ? "principal    " : "non-principal") << " classes=";
            human << info.partition.class_count() << " {";
            bool first = true;
            for (const auto& cls : info.partition.classes()) {
                human << (first ? "" : " ") << "{";
                for (size_t i = 0; i < cls.size(); ++i) human << (i ? "," : "") << cls[i];
                human << "}";
                first = false;
            }
            human << "}\n";
        }
        rep.finish(human.str());
    });

    auto* sr_cp = sr->add_subcommand("c-principal", "is every congruence principal?");
    sr_cp->add_option("spec", sr_spec)->required();
    sr_cp->callback([&] {
        Report rep("semiring c-principal");
        rep.as_json = as_json;
        rep.digest(sr_spec);
        FiniteSemiring s = load_semiring(sr_spec);
        require_valid(s);
        auto verdict = check_c_principal(s);
        rep.body["semiring"] = sr_spec;
        rep.body["c_principal"] = verdict.c_principal;
        rep.body["congruence_count"] = verdict.congruence_count;
        std::ostringstream human;
        human << sr_spec << ": " << (verdict.c_principal ? "c-principal" : "NOT c-principal")
              << " (" << verdict.congruence_count << " congruences)\n";
        if (verdict.witness) {
            rep.body["witness"] = {{"classes", partition_json(verdict.witness->partition)}};
            json gens = json::array();
            for (const auto& [a, b] : verdict.witness->generators) gens.push_back({a, b});
            rep.body["witness"]["generators"] = gens;
            human << "  witness congruence classes: ";
            for (const auto& cls : verdict.witness->partition.classes()) {
                human << "{";
                for (size_t i = 0; i < cls.size(); ++i) human << (i ? "," : "") << cls[i];
                human << "}";
            }
            human << "\n";
        }
        rep.finish(human.str());
    });

    auto* sr_bg = sr->add_subcommand("bg-check", "ring <=> no Boolean quotient");
    sr_bg->add_option("spec", sr_spec)->required();
    sr_bg->callback([&] {
        Report rep("semiring bg-check");
        rep.as_json = as_json;
        rep.digest(sr_spec);
        FiniteSemiring s = load_semiring(sr_spec);
        require_valid(s);
        auto bg = bg_check(s);
        rep.body["semiring"] = sr_spec;
        rep.body["is_ring"] = bg.ring;
        rep.body["has_boolean_quotient"] = bg.boolean_kernel.has_value();
        if (bg.boolean_kernel) rep.body["boolean_kernel"] = *bg.boolean_kernel;
        rep.body["consistent"] = bg.consistent;
        std::ostringstream human;
        human << sr_spec << ": " << (bg.ring ? "ring" : "not a ring") << ", "
              << (bg.boolean_kernel ? "admits" : "does not admit") << " a Boolean quotient -> "
              << (bg.consistent ? "consistent" : "INCONSISTENT") << "\n";
        if (bg.boolean_kernel) {
            human << "  kernel of the quotient map: {";
            for (size_t i = 0; i < bg.boolean_kernel->size(); ++i)
                human << (i ? "," : "") << (*bg.boolean_kernel)[i];
            human << "}\n";
        }
        rep.finish(human.str());
        if (!bg.consistent) throw consistency_error("Borger-Grinberg equivalence violated");
    });

    /* ---- nat ---- */
    auto* nat = app.add_subcommand("nat", "congruences of the naturals");
    nat->require_subcommand(1);
    std::string nat_pairs;
    auto* nat_classify = nat->add_subcommand("classify", "classify the congruence on N");
    nat_classify->add_option("--pairs", nat_pairs, "\"2,5;3,7\"")->required();
    nat_classify->callback([&] {
        Report rep("nat classify");
        rep.as_json = as_json;
        rep.digest(nat_pairs);
        std::vector<std::pair<uint64_t, uint64_t>> gens;
        for (const auto& p : split(nat_pairs, ';')) {
            auto parts = split(p, ',');
            if (parts.size() != 2) throw invalid_input_error("pair '" + p + "' needs two entries");
            gens.emplace_back(std::stoull(parts[0]), std::stoull(parts[1]));
        }
        auto cls = classify_nat_congruence(gens);
        rep.body["pairs"] = nat_pairs;
        rep.body["trivial"] = cls.trivial;
        std::ostringstream human;
        if (cls.trivial) {
            human << "trivial (diagonal) congruence\n";
        } else {
            rep.body["n"] = cls.n;
            rep.body["k"] = cls.k;
            human << "x ~ y iff x = y, or x,y >= " << cls.n << " and x == y (mod " << cls.k
                  << ")  [oracle-checked]\n";
        }
        rep.finish(human.str());
    });

    /* ---- bx ---- */
    auto* bx = app.add_subcommand("bx", "the B[X] non-finite-generation check");
    bx->require_subcommand(1);
    uint32_t bx_max_gen = 3;
    std::string bx_query;
    auto* bx_check = bx->add_subcommand("check", "bounded-closure consistency check");
    bx_check->add_option("--max-gen", bx_max_gen, "generators X^i+1 ~ X^j+1 for i<j<=max-gen");
    bx_check->add_option("--query", bx_query, "two comma-separated exponent sets, e.g. \"0,4:0,5\"");
    bx_check->callback([&] {
        Report rep("bx check");
        rep.as_json = as_json;
        rep.digest(std::to_string(bx_max_gen) + "/" + std::to_string(degree_bound) + "/" + bx_query);
        std::optional<std::pair<BoolPolynomial, BoolPolynomial>> query;
        if (!bx_query.empty()) {
            auto sides = split(bx_query, ':');
            if (sides.size() != 2) throw invalid_input_error("query needs the form \"0,4:0,5\"");
            auto poly = [](const std::string& t) {
                std::set<uint32_t> sup;
                for (const auto& e : split(t, ',')) sup.insert(static_cast<uint32_t>(std::stoul(e)));
                return BoolPolynomial(sup);
            };
            query = std::make_pair(poly(sides[0]), poly(sides[1]));
        }
        auto r = check_bx_nonrelation(bx_max_gen, degree_bound, budget, query);
        rep.body["max_gen"] = r.max_gen;
        rep.body["degree_bound"] = r.degree_bound;
        rep.body["query"] = {r.query_lhs.str(), r.query_rhs.str()};
        rep.body["related"] = r.related;
        rep.body["reached_fixpoint"] = r.reached_fixpoint;
        rep.body["steps"] = r.steps;
        rep.body["caveat"] = r.caveat;
        std::ostringstream human;
        human << "generators X^i+1 ~ X^j+1, 1 <= i < j <= " << r.max_gen << ", degree bound "
              << r.degree_bound << "\n"
              << "query " << r.query_lhs.str() << " ~ " << r.query_rhs.str() << ": "
              << (r.related ? "RELATED" : "not related") << " (" << r.steps << " steps)\n"
              << "note: " << r.caveat << "\n";
        rep.finish(human.str());
    });

    /* ---- order ---- */
    auto* ord = app.add_subcommand("order", "canonical positive models of real orders");
    ord->require_subcommand(1);
    std::string ord_field, ord_pairs, ord_ideal, ord_x, ord_y, ord_a, ord_u;
    int ord_j = 0;
    bool no_cross_check = false;

    auto* ord_classify = ord->add_subcommand("classify", "classify a congruence on S");
    ord_classify->add_option("--field", ord_field, "order spec, e.g. x^2-2@1")->required();
    ord_classify->add_option("--pairs", ord_pairs, "\"1:1+w;0,1:2,0\"")->required();
    ord_classify->add_flag("--no-cross-check", no_cross_check, "skip the closure oracle");
    ord_classify->callback([&] {
        Report rep("order classify");
        rep.as_json = as_json;
        rep.digest(ord_field + "|" + ord_pairs);
        auto order = RealOrder::parse(ord_field);
        auto gens = parse_order_pairs(*order, ord_pairs);
        ClassifyOptions opts;
        opts.cross_check = !no_cross_check;
        auto cls = classify_congruence(*order, gens, opts);
        rep.body["field"] = order->spec_string();
        rep.body["trivial"] = cls.trivial;
        std::ostringstream human;
        if (cls.trivial) {
            human << "trivial (diagonal) congruence\n";
        } else {
            rep.body["j"] = cls.j;
            rep.body["ideal"] = ideal_json(*order, *cls.ideal);
            auto K = k_ideal_of(*order, *cls.ideal);
            auto canon = canonical_generators(*order, cls, K.k_generators);
            json cj = json::array();
            for (const auto& [l, r] : canon)
                cj.push_back({order->str(l), order->str(r)});
            rep.body["canonical_generators"] = cj;
            human << "congruence C_" << cls.j << "(I), I of determinant "
                  << cls.ideal->determinant.str() << "\n";
            human << "HNF basis:";
            for (int c = 0; c < cls.ideal->hnf.cols(); ++c) {
                human << " (";
                for (int r = 0; r < cls.ideal->hnf.rows(); ++r)
                    human << (r ? "," : "") << cls.ideal->hnf(r, c).str();
                human << ")";
            }
            human << "\ncanonical generators:";
            for (const auto& [l, r] : canon)
                human << "  " << order->str(l) << " ~ " << order->str(r);
            human << "\n";
        }
        rep.finish(human.str());
    });

    auto* ord_related = ord->add_subcommand("related", "query the classified relation");
    ord_related->add_option("--field", ord_field)->required();
    ord_related->add_option("--pairs", ord_pairs)->required();
    ord_related->add_option("--x", ord_x)->required();
    ord_related->add_option("--y", ord_y)->required();
    ord_related->callback([&] {
        Report rep("order related");
        rep.as_json = as_json;
        rep.digest(ord_field + "|" + ord_pairs + "|" + ord_x + "|" + ord_y);
        auto order = RealOrder::parse(ord_field);
        auto gens = parse_order_pairs(*order, ord_pairs);
        auto cls = classify_congruence(*order, gens);
        auto x = order->parse_element(ord_x);
        auto y = order->parse_element(ord_y);
        bool rel = is_related(*order, cls, x, y);
        rep.body["field"] = order->spec_string();
        rep.body["x"] = order->str(x);
        rep.body["y"] = order->str(y);
        rep.body["related"] = rel;
        std::ostringstream human;
        human << order->str(x) << " ~ " << order->str(y) << ": " << (rel ? "related" : "not related")
              << "\n";
        rep.finish(human.str());
    });

    auto* ord_quot = ord->add_subcommand("quotient", "finite quotient tables S/C_j(I)");
    ord_quot->add_option("--field", ord_field)->required();
    ord_quot->add_option("--ideal", ord_ideal, "generators, e.g. \"w\" or \"w;2\"")->required();
    ord_quot->add_option("--j", ord_j, "0 or 1")->required();
    ord_quot->callback([&] {
        Report rep("order quotient");
        rep.as_json = as_json;
        rep.digest(ord_field + "|" + ord_ideal + "|" + std::to_string(ord_j));
        if (ord_j != 0 && ord_j != 1) throw invalid_input_error("--j must be 0 or 1");
        auto order = RealOrder::parse(ord_field);
        auto gens = parse_order_elements(*order, ord_ideal);
        OrderCongruenceClass cls;
        cls.trivial = false;
        cls.ideal = ideal_from_generators(*order, gens);
        cls.j = ord_j;
        FiniteSemiring q = quotient_semiring(*order, cls);
        rep.body["field"] = order->spec_string();
        rep.body["ideal"] = ideal_json(*order, *cls.ideal);
        rep.body["j"] = ord_j;
        rep.body["quotient"] = semiring_json(q);
        rep.body["valid"] = is_valid(q);
        std::ostringstream human;
        human << "S/C_" << ord_j << "(I): " << q.size() << " elements, axioms "
              << (is_valid(q) ? "hold" : "VIOLATED") << "\n";
        human << "  elements:";
        for (uint32_t i = 0; i < q.size(); ++i) human << " " << q.label(i);
        human << "\n";
        rep.finish(human.str());
    });

    auto* ord_rel = ord->add_subcommand("integer-relation", "u f(u) = u g(u) + l and m ~ n");
    ord_rel->add_option("--field", ord_field)->required();
    ord_rel->add_option("--a", ord_a, "positive element a")->required();
    ord_rel->add_option("--u", ord_u, "positive element u")->required();
    ord_rel->callback([&] {
        Report rep("order integer-relation");
        rep.as_json = as_json;
        rep.digest(ord_field + "|" + ord_a + "|" + ord_u);
        auto order = RealOrder::parse(ord_field);
        auto a = order->parse_element(ord_a);
        auto u = order->parse_element(ord_u);
        auto rel = derive_integer_relation(*order, a, u);
        rep.body["field"] = order->spec_string();
        rep.body["f"] = rel.f.str();
        rep.body["g"] = rel.g.str();
        rep.body["l"] = rel.l.str();
        rep.body["m"] = rel.m.str();
        rep.body["n"] = rel.n.str();
        std::ostringstream human;
        human << "u f(u) = u g(u) + l with f = " << rel.f.str() << ", g = " << rel.g.str()
              << ", l = " << rel.l.str() << "\n"
              << "any congruence relating a ~ a+u relates the integers m = " << rel.m.str()
              << " and n = " << rel.n.str() << "\n";
        rep.finish(human.str());
    });

    auto* ord_ki = ord->add_subcommand("k-ideal", "the ideal <-> k-ideal correspondence");
    ord_ki->add_option("--field", ord_field)->required();
    ord_ki->add_option("--gens", ord_ideal, "ring ideal generators")->required();
    ord_ki->callback([&] {
        Report rep("order k-ideal");
        rep.as_json = as_json;
        rep.digest(ord_field + "|" + ord_ideal);
        auto order = RealOrder::parse(ord_field);
        auto gens = parse_order_elements(*order, ord_ideal);
        auto ideal = ideal_from_generators(*order, gens);
        auto k = k_ideal_of(*order, ideal);
        auto back = ring_ideal_of(*order, k.k_generators);
        rep.body["field"] = order->spec_string();
        rep.body["ideal"] = ideal_json(*order, ideal);
        json kg = json::array();
        for (const auto& g : k.k_generators) kg.push_back(order->str(g));
        rep.body["k_ideal_generators"] = kg;
        rep.body["round_trip_equal"] = back == ideal;
        std::ostringstream human;
        human << "ideal determinant " << ideal.determinant.str() << ", k-ideal generators:";
        for (const auto& g : k.k_generators) human << " " << order->str(g);
        human << "\nround trip ring->k->ring " << (back == ideal ? "matches" : "DIFFERS") << "\n";
        rep.finish(human.str());
        if (!(back == ideal)) throw consistency_error("k-ideal round trip failed");
    });

    /* ---- flat ---- */
    auto* flat = app.add_subcommand("flat", "flatness witnesses: chains and certificates");
    flat->require_subcommand(1);
    std::string flat_field, flat_gamma, flat_problem, flat_out, flat_input;
    std::vector<std::string> flat_targets;
    int probe_samples = 10, probe_depth = 4;

    auto* flat_cover = flat->add_subcommand("cover", "refine a nice collection to absorb targets");
    flat_cover->add_option("--field", flat_field, "e.g. x^2-2@1");
    flat_cover->add_option("--gamma", flat_gamma, "coordinates, e.g. \"1;w\"");
    flat_cover->add_option("--target", flat_targets, "integer vector, e.g. \"-1,1\" (repeatable)");
    flat_cover->add_option("--problem", flat_problem, "JSON problem file");
    flat_cover->add_option("--out", flat_out, "write the JSON report here too");
    flat_cover->callback([&] {
        Report rep("flat cover");
        rep.as_json = as_json;
        std::shared_ptr<const NumberField> field;
        std::vector<std::string> gamma_strs;
        std::vector<LatticeVector> targets;
        std::optional<NiceCollection> start;
        if (!flat_problem.empty()) {
            std::ifstream in(flat_problem);
            if (!in) throw invalid_input_error("cannot open problem file '" + flat_problem + "'");
            json j;
            in >> j;
            field = NumberField::parse(j.at("field").get<std::string>());
            gamma_strs = j.at("gamma").get<std::vector<std::string>>();
            for (const auto& t : j.at("targets")) targets.push_back(int_vec_from_json(t));
            if (j.contains("start")) start = collection_from_json(j["start"]);
        } else {
            if (flat_field.empty() || flat_gamma.empty() || flat_targets.empty())
                throw invalid_input_error(
                    "need --field, --gamma and --target (or a --problem file)");
            field = NumberField::parse(flat_field);
            gamma_strs = split_gamma(flat_gamma);
            for (const auto& t : flat_targets) targets.push_back(lattice_vector_from_string(t));
        }
        std::string canon = field->spec_string();
        for (const auto& g : gamma_strs) canon += "|" + g;
        for (const auto& t : targets)
            for (const auto& c : t) canon += "," + c.str();
        rep.digest(canon);
        GammaForm gamma = gamma_from_strings(field, gamma_strs);
        NiceCollection w = start ? *start : standard_basis(gamma.n());
        CoverResult res = cover(gamma, w, targets);
        auto chain_verdict = verify_chain(gamma, res.chain);

        rep.body["field"] = field->spec_string();
        rep.body["gamma"] = gamma_strs;
        rep.body["start"] = collection_json(res.chain.start);
        json steps = json::array();
        for (const auto& st : res.chain.steps) steps.push_back(step_json(st));
        rep.body["steps"] = steps;
        rep.body["result"] = collection_json(res.chain.result);
        json certs = json::array();
        std::ostringstream human;
        human << "cover: " << res.chain.steps.size() << " elementary steps, final collection:";
        for (const auto& vec : res.chain.result.vecs) {
            human << " (";
            for (size_t i = 0; i < vec.size(); ++i) human << (i ? "," : "") << vec[i].str();
            human << ")";
        }
        human << "\n";
        bool all_verified = chain_verdict.ok;
        for (const auto& cert : res.certificates) {
            auto v = verify_membership(gamma, res.chain.result, cert);
            all_verified = all_verified && v.ok;
            json cj;
            cj["target"] = int_vec_json(cert.target);
            cj["coefficients"] = int_vec_json(cert.coefficients);
            cj["verified"] = v.ok;
            certs.push_back(cj);
            human << "  target (";
            for (size_t i = 0; i < cert.target.size(); ++i)
                human << (i ? "," : "") << cert.target[i].str();
            human << ") = ";
            for (size_t i = 0; i < cert.coefficients.size(); ++i)
                human << (i ? " + " : "") << cert.coefficients[i].str() << "*v" << i;
            human << (v.ok ? "   [verified]" : "   [FAILED]") << "\n";
        }
        rep.body["certificates"] = certs;
        rep.body["chain_verified"] = chain_verdict.ok;
        human << "chain replay: " << (chain_verdict.ok ? "verified" : "FAILED") << "\n";
        if (!flat_out.empty()) {
            std::ofstream out(flat_out);
            out << rep.body.dump(2) << "\n";
            human << "report written to " << flat_out << "\n";
        }
        rep.finish(human.str());
        if (!all_verified) throw consistency_error("verification failed");
    });

    auto* flat_verify = flat->add_subcommand("verify", "re-audit a cover report");
    flat_verify->add_option("--input", flat_input, "JSON report from 'flat cover'")->required();
    flat_verify->callback([&] {
        Report rep("flat verify");
        rep.as_json = as_json;
        rep.digest(flat_input);
        std::ifstream in(flat_input);
        if (!in) throw invalid_input_error("cannot open '" + flat_input + "'");
        json j;
        in >> j;
        auto field = NumberField::parse(j.at("field").get<std::string>());
        GammaForm gamma = gamma_from_strings(field, j.at("gamma").get<std::vector<std::string>>());
        RefinementChain chain;
        chain.start = collection_from_json(j.at("start"));
        for (const auto& st : j.at("steps")) chain.steps.push_back(step_from_json(st));
        chain.result = collection_from_json(j.at("result"));
        auto chain_verdict = verify_chain(gamma, chain);
        bool all = chain_verdict.ok;
        json certs = json::array();
        std::ostringstream human;
        human << "chain: " << (chain_verdict.ok ? "verified" : "FAILED: " + chain_verdict.diagnostics)
              << "\n";
        if (j.contains("certificates")) {
            for (const auto& cj : j["certificates"]) {
                MembershipCertificate cert;
                cert.target = int_vec_from_json(cj.at("target"));
                cert.coefficients = int_vec_from_json(cj.at("coefficients"));
                auto v = verify_membership(gamma, chain.result, cert);
                all = all && v.ok;
                certs.push_back({{"target", cj.at("target")}, {"verified", v.ok}});
                human << "certificate for (";
                for (size_t i = 0; i < cert.target.size(); ++i)
                    human << (i ? "," : "") << cert.target[i].str();
                human << "): " << (v.ok ? "verified" : "FAILED: " + v.diagnostics) << "\n";
            }
        }
        rep.body["chain_verified"] = chain_verdict.ok;
        rep.body["certificates"] = certs;
        rep.body["all_verified"] = all;
        human << (all ? "all checks passed" : "AUDIT FAILED") << "\n";
        rep.finish(human.str());
        if (!all) throw invalid_input_error("audit failed");
    });

    auto* flat_probe = flat->add_subcommand(
        "probe", "experimental: sample N-span containment vs refinement (open n=3 question)");
    flat_probe->add_option("--field", flat_field)->required();
    flat_probe->add_option("--gamma", flat_gamma)->required();
    flat_probe->add_option("--samples", probe_samples);
    flat_probe->add_option("--depth", probe_depth, "refinement search depth");
    flat_probe->callback([&] {
        Report rep("flat probe");
        rep.as_json = as_json;
        rep.digest(flat_field + "|" + flat_gamma + "|" + std::to_string(probe_samples));
        auto field = NumberField::parse(flat_field);
        GammaForm gamma = gamma_from_strings(field, split_gamma(flat_gamma));
        auto probes = probe_span_vs_refinement(gamma, probe_samples, seed, probe_depth);
        json list = json::array();
        int contained = 0, witnessed = 0, candidates = 0;
        for (const auto& p : probes) {
            if (p.span_contained) ++contained;
            if (p.refinement_found) ++witnessed;
            if (p.span_contained && !p.refinement_found) ++candidates;
            list.push_back({{"v", collection_json(p.v)},
                            {"w", collection_json(p.w)},
                            {"span_contained", p.span_contained},
                            {"refinement_found_within_depth", p.refinement_found}});
        }
        rep.body["samples"] = list;
        rep.body["span_contained"] = contained;
        rep.body["refinement_witnessed"] = witnessed;
        rep.body["unwitnessed_containments"] = candidates;
        std::ostringstream human;
        human << probe_samples << " sampled pairs: " << contained << " with Sp_N(V) inside Sp_N(W), "
              << witnessed << " refinement-witnessed within depth " << probe_depth << ", "
              << candidates << " containments without a witness (inconclusive: the search is "
              << "depth-bounded)\n";
        rep.finish(human.str());
    });

    /* ---- acceptance ---- */
    auto* acc = app.add_subcommand("acceptance", "run an acceptance suite");
    std::string acc_suite = "all";
    acc->add_option("suite", acc_suite, "lattice|bg|bx|posmodel|flatness|all");
    acc->callback([&] {
        Report rep("acceptance");
        rep.as_json = as_json;
        rep.digest(acc_suite + "@" + std::to_string(seed));
        auto report = run_acceptance(acc_suite, seed);
        rep.body["suite"] = report.suite;
        rep.body["seed"] = report.seed;
        json list = json::array();
        std::ostringstream human;
        for (const auto& c : report.criteria) {
            list.push_back({{"id", c.id},
                            {"title", c.title},
                            {"passed", c.ok},
                            {"seconds", c.seconds},
                            {"budget_seconds", c.budget_seconds},
                            {"detail", c.detail}});
            char line[512];
            std::snprintf(line, sizeof(line), "[%s] %-4s %-58s (%.2fs/%.0fs) %s\n",
                          c.ok ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(), c.seconds,
                          c.budget_seconds, c.detail.c_str());
            human << line;
        }
        rep.body["criteria"] = list;
        rep.body["all_passed"] = report.all_passed();
        human << (report.all_passed() ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << "\n";
        rep.finish(human.str());
        if (!report.all_passed()) throw consistency_error("acceptance criteria failed");
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const resource_error& e) {
        std::cerr << "resource budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const invalid_input_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const consistency_error& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
