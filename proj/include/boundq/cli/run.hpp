#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "boundq/cli/parse.hpp"
#include "boundq/cli/report.hpp"
#include "boundq/gamma.hpp"
#include "boundq/hh1.hpp"
#include "boundq/palg.hpp"
#include "boundq/pi1.hpp"
#include "boundq/theta.hpp"

namespace boundq::cli {

struct Budgets {
    HomotopyBudget homotopy;
    GammaBudget gamma;
    FactorBudget factor;
    MaxdiagBudget maxdiag;
};

inline std::string env_name(const std::string& key)
{
    std::string s = "BOUNDQ_";
    for (char c : key) s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline std::optional<std::string> process_env(const std::string& name)
{
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
}

/// Defaults, then `budget` lines of the document, then BOUNDQ_* variables, then flags.
inline Budgets resolve_budgets(const InputDocument& doc, const std::map<std::string, long long>& flags, const EnvLookup& env = process_env)
{
    std::map<std::string, long long> v;
    for (const auto& [k, x] : doc.budget) v[k] = x;
    for (const auto& k : budget_keys())
        if (auto s = env(env_name(k))) {
            if (!detail::is_number(*s) || s->size() > 12) throw InvalidArgument(env_name(k) + " must be a non-negative integer");
            v[k] = std::stoll(*s);
        }
    for (const auto& [k, x] : flags) v[k] = x;

    Budgets b;
    auto get = [&](const char* k, auto& field) {
        if (auto it = v.find(k); it != v.end()) field = static_cast<std::remove_reference_t<decltype(field)>>(it->second);
    };
    get("nodes", b.homotopy.max_nodes);
    get("word_length", b.homotopy.max_word_length);
    get("max_vertices", b.gamma.max_vertices);
    get("max_candidates", b.gamma.max_candidates);
    get("grid", b.maxdiag.grid);
    get("max_states", b.factor.max_states);
    b.gamma.homotopy = b.homotopy;
    b.factor.homotopy = b.homotopy;
    return b;
}

struct Options {
    std::string command;
    std::optional<std::string> ideal;
    std::map<std::string, long long> budget_flags;
};

inline const std::vector<std::string>& commands()
{
    static const std::vector<std::string> c{"validate", "pi1", "homk", "hh1", "theta", "gamma", "maxdiag", "verify"};
    return c;
}

namespace detail {

inline SpanningTree document_tree(const InputDocument& doc)
{
    const Quiver& q = doc.algebra->quiver();
    if (!doc.tree) return spanning_tree(q, 0);
    std::vector<std::size_t> arrows;
    for (const auto& a : *doc.tree) arrows.push_back(q.arrow_index(a));
    return spanning_tree(q, 0, arrows);
}

inline Json tree_json(const Quiver& q, const SpanningTree& t)
{
    Json out = Json::array();
    for (auto a : t.arrows()) out.push_back(q.arrow(a).name);
    return out;
}

inline Json ideal_json(const Ideal& I)
{
    Json out = Json::array();
    for (const auto& r : I.basis()) out.push_back(r.to_string());
    return out;
}

inline Json character_json(const Quiver& q, const Vector& t)
{
    Json out = Json::object();
    for (std::size_t a = 0; a < t.size(); ++a)
        if (!t[a].is_zero()) out[q.arrow(a).name] = scalar_json(t[a]);
    return out;
}

inline Json vector_json(const Vector& v)
{
    Json out = Json::array();
    for (const auto& x : v) out.push_back(scalar_json(x));
    return out;
}

inline Json classes_json(const HH1Space& H, const std::vector<Vector>& classes)
{
    Json out = Json::array();
    for (const auto& c : classes) out.push_back(H.to_string(c));
    return out;
}

inline std::string path_string(const Quiver& q, const Path& p) { return boundq::to_string(q, p); }

}  // namespace detail

/// Runs one command on a parsed document. Input problems throw InvalidArgument.
inline Report run(const InputDocument& doc, const Options& opt, const Budgets& budget)
{
    if (std::find(commands().begin(), commands().end(), opt.command) == commands().end())
        throw InvalidArgument("unknown command '" + opt.command + "'");
    Report rep;
    rep.command = opt.command;
    rep.field = doc.field.name();
    const Quiver& q = doc.algebra->quiver();

    if (opt.command == "validate") {
        Json vertices = Json::array(), arrows = Json::array(), ideals = Json::array();
        for (const auto& v : q.vertices()) vertices.push_back(v);
        for (const auto& a : q.arrows()) arrows.push_back({{"name", a.name}, {"source", q.vertex_name(a.source)}, {"target", q.vertex_name(a.target)}});
        for (const auto& d : doc.ideals) {
            Ideal I = doc.ideal(d.name);
            auto adm = is_admissible(I);
            Json j{{"name", d.name}, {"reduced_basis", detail::ideal_json(I)}, {"admissible", adm.admissible}, {"monomial", is_monomial(I)}};
            if (adm.admissible)
                j["algebra_dim"] = FDAlgebra(I).dim();
            else {
                j["message"] = adm.message;
                rep.failures.push_back("ideal " + d.name + " is not admissible: " + adm.message);
            }
            ideals.push_back(j);
        }
        rep.payload = {{"vertices", vertices}, {"arrows", arrows}, {"ideals", ideals}, {"document", emit_document(doc)}};
        return rep;
    }

    std::string name;
    if (opt.ideal)
        name = *opt.ideal;
    else if (doc.ideals.size() == 1)
        name = doc.ideals.front().name;
    else
        throw InvalidArgument("command '" + opt.command + "' needs --ideal");
    Ideal I = doc.ideal(name);
    require_admissible(I);
    SpanningTree tree = detail::document_tree(doc);
    rep.payload["ideal"] = name;
    rep.payload["reduced_basis"] = detail::ideal_json(I);
    rep.payload["tree"] = detail::tree_json(q, tree);
    rep.payload["base"] = q.vertex_name(tree.base);

    if (opt.command == "pi1") {
        GroupPresentation p = pi1_presentation(I, tree);
        Json gens = Json::array(), rels = Json::array(), pairs = Json::array();
        for (const auto& g : p.generator_names) gens.push_back(g);
        for (const auto& r : p.relators) rels.push_back(p.word_string(r));
        for (const auto& pp : homotopy_pairs(I))
            pairs.push_back({doc.algebra->path_name(pp.u), doc.algebra->path_name(pp.v)});
        AbelianInvariants ab = abelian_invariants(p);
        Json torsion = Json::array();
        for (const auto& d : ab.torsion) torsion.push_back(d.convert_to<long long>());
        rep.payload["generators"] = gens;
        rep.payload["relators"] = rels;
        rep.payload["homotopy_pairs"] = pairs;
        rep.payload["abelian_invariants"] = {{"free_rank", ab.free_rank}, {"torsion", torsion}, {"group", ab.to_string()}};
        return rep;
    }
    if (opt.command == "homk") {
        HomSpace h = hom_space(I, tree);
        Json basis = Json::array();
        for (const auto& t : h.basis) basis.push_back(detail::character_json(q, t));
        rep.payload["dim"] = h.dim();
        rep.payload["basis"] = basis;
        return rep;
    }

    HH1Space H{FDAlgebra(I)};
    if (opt.command == "hh1") {
        Json brackets = Json::array();
        const auto& B = H.basis();
        for (std::size_t i = 0; i < B.size(); ++i)
            for (std::size_t j = i + 1; j < B.size(); ++j) {
                Vector c = H.class_coordinates(H.bracket(B[i], B[j]));
                if (!is_zero(c)) brackets.push_back({{"i", i}, {"j", j}, {"coordinates", detail::vector_json(c)}});
            }
        rep.payload["algebra_dim"] = H.algebra().dim();
        rep.payload["der0_dim"] = H.der0().size();
        rep.payload["int0_dim"] = H.int0().size();
        rep.payload["dim"] = H.dim();
        rep.payload["basis"] = detail::classes_json(H, B);
        rep.payload["brackets"] = brackets;
        return rep;
    }
    Presentation nu = Presentation::natural(I);
    if (opt.command == "theta") {
        HomSpace h = hom_space(I, tree);
        ThetaImage im = image_theta(H, nu, tree);
        Json images = Json::array();
        for (std::size_t i = 0; i < h.basis.size(); ++i)
            images.push_back({{"character", detail::character_json(q, h.basis[i])}, {"class", H.to_string(im.classes[i])}});
        rep.payload["hom_dim"] = h.dim();
        rep.payload["dim"] = im.dim();
        rep.payload["hh1_dim"] = H.dim();
        rep.payload["images"] = images;
        rep.payload["basis"] = detail::classes_json(H, im.basis);
        return rep;
    }
    if (opt.command == "maxdiag") {
        ThetaImage im = image_theta(H, nu, tree);
        auto diag = is_diagonalizable_set(H, im.basis);
        rep.payload["image"] = detail::classes_json(H, im.basis);
        rep.payload["diagonalizable"] = diag.diagonalizable;
        if (!diag.diagonalizable) {
            rep.payload["reason"] = diag.reason;
            rep.failures.push_back("image of theta is not diagonalizable: " + diag.reason);
            return rep;
        }
        auto m = is_maximal_diagonalizable(H, im.basis, budget.maxdiag);
        rep.payload["maximal"] = tri_json(m.answer);
        rep.payload["reason"] = m.reason;
        rep.payload["centralizer_dim"] = m.centralizer_dim;
        rep.payload["candidates"] = m.candidates;
        rep.payload["witness"] = m.witness ? Json(H.to_string(*m.witness)) : Json(nullptr);
        if (m.answer == Tri::unknown) rep.unknowns.push_back("maximality: " + m.reason);
        return rep;
    }
    if (opt.command == "gamma") {
        GammaQuiver g = build_gamma(I, budget.gamma);
        SourceReport s = sources(g);
        Json vertices = Json::array(), arrows = Json::array(), quarantined = Json::array(), srcs = Json::array();
        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            vertices.push_back({{"index", v}, {"reduced_basis", detail::ideal_json(g.vertices[v].ideal)},
                                {"source", std::find(s.sources.begin(), s.sources.end(), v) != s.sources.end()}});
        for (const auto& e : g.edges)
            arrows.push_back({{"from", e.from}, {"to", e.to}, {"arrow", q.arrow(e.bypass.arrow).name},
                              {"path", detail::path_string(q, e.bypass.path)}, {"tau", scalar_json(e.tau)}});
        for (const auto& c : g.quarantined) {
            quarantined.push_back({{"vertex", c.vertex}, {"arrow", q.arrow(c.bypass.arrow).name},
                                   {"path", detail::path_string(q, c.bypass.path)}, {"tau", scalar_json(c.tau)}, {"reason", c.reason}});
            rep.unknowns.push_back("gamma candidate at vertex " + std::to_string(c.vertex) + ": " + c.reason);
        }
        if (g.truncated) rep.unknowns.push_back("gamma search truncated by budget");
        for (auto v : s.sources) srcs.push_back(v);
        Json hyp{{"h1", s.hypotheses.h1}, {"h2", s.hypotheses.h2}, {"multiple_arrows", s.hypotheses.multiple_arrows},
                 {"monomial_found", s.hypotheses.monomial_found}, {"double_bypass", nullptr}};
        if (s.hypotheses.double_bypass) {
            const auto& d = *s.hypotheses.double_bypass;
            hyp["double_bypass"] = {q.arrow(d.outer.arrow).name, detail::path_string(q, d.outer.path), q.arrow(d.inner.arrow).name,
                                    detail::path_string(q, d.inner.path)};
        }
        rep.payload["vertices"] = vertices;
        rep.payload["arrows"] = arrows;
        rep.payload["vertex_count"] = g.vertices.size();
        rep.payload["arrow_count"] = g.edges.size();
        rep.payload["sources"] = srcs;
        rep.payload["unique_source"] = s.unique;
        rep.payload["acyclic"] = g.acyclic;
        rep.payload["quarantined"] = quarantined;
        rep.payload["truncated"] = g.truncated;
        rep.payload["tau_regime"] = g.taus_exhaustive ? "exhaustive" : "heuristic";
        rep.payload["hypotheses"] = hyp;
        if (!g.acyclic) rep.failures.push_back("gamma has an oriented cycle");
        return rep;
    }
    // verify
    VerifyBudget vb;
    vb.gamma = budget.gamma;
    vb.factor = budget.factor;
    vb.maxdiag = budget.maxdiag;
    Theorem1Report r = verify_theorem1(I, vb);
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        std::string st = c.status == Tri::yes ? "pass" : c.status == Tri::no ? "fail" : "unknown";
        checks.push_back({{"name", c.name}, {"status", st}, {"detail", c.detail}});
        if (c.status == Tri::no) rep.failures.push_back(c.name + ": " + c.detail);
        if (c.status == Tri::unknown) rep.unknowns.push_back(c.name + ": " + c.detail);
    }
    Json family = Json::array();
    for (std::size_t i = 0; i < r.maximal_family.size(); ++i)
        family.push_back({{"basis", detail::classes_json(H, r.maximal_family[i])}, {"conjugator", r.family_conjugators[i].to_string()}});
    rep.payload["checks"] = checks;
    rep.payload["maximal_family"] = family;
    rep.payload["vertex_count"] = r.gamma.vertices.size();
    rep.payload["tau_regime"] = r.taus_exhaustive ? "exhaustive" : "heuristic";
    rep.payload["overall"] = r.overall() == Tri::yes ? "pass" : r.overall() == Tri::no ? "fail" : "unknown";
    return rep;
}

}  // namespace boundq::cli
