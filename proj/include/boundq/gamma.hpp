#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boundq/error.hpp"
#include "boundq/exactla.hpp"
#include "boundq/hh1.hpp"
#include "boundq/palg.hpp"
#include "boundq/pi1.hpp"
#include "boundq/quiver.hpp"
#include "boundq/theta.hpp"

namespace boundq {

enum class TransvectionLabel { coincide, direct_successor, direct_predecessor, equal_ideals, unknown };

inline const char* to_string(TransvectionLabel l)
{
    switch (l) {
    case TransvectionLabel::coincide: return "coincide";
    case TransvectionLabel::direct_successor: return "direct-successor";
    case TransvectionLabel::direct_predecessor: return "direct-predecessor";
    case TransvectionLabel::equal_ideals: return "equal-ideals";
    default: return "unknown";
    }
}

struct TransvectionClass {
    TransvectionLabel label = TransvectionLabel::unknown;
    Ideal target;                ///< J = phi(I)
    Automorphism phi;
    HomotopyDecision on_source;  ///< alpha ~_I u
    HomotopyDecision on_target;  ///< alpha ~_J u
};

inline Walk arrow_walk(const Quiver& q, std::size_t a) { return Walk::from_path(Path::from_arrows(q, {a})); }

/// Compares ~_I and ~_J for J = phi_{alpha,u,tau}(I) through the two tests
/// alpha ~_I u and alpha ~_J u. A Yes on J only makes ~_J a direct successor
/// of ~_I; a Yes on I only makes ~_I a direct successor of ~_J.
inline TransvectionClass classify_transvection(const Ideal& I, const Bypass& bp, const Scalar& tau, const HomotopyBudget& budget = {})
{
    if (tau.is_zero()) throw InvalidArgument("transvection parameter must be nonzero");
    const PathAlgebraPtr& alg = I.algebra();
    const Quiver& q = alg->quiver();
    TransvectionClass c;
    c.phi = Automorphism::transvection(alg, bp.arrow, bp.path, tau);
    c.target = apply_to_ideal(c.phi, I);
    Walk a = arrow_walk(q, bp.arrow), u = Walk::from_path(bp.path);
    c.on_source = decide_homotopic(a, u, I, budget);
    c.on_target = decide_homotopic(a, u, c.target, budget);
    Tri s = c.on_source.answer, t = c.on_target.answer;
    if (s == Tri::unknown || t == Tri::unknown)
        c.label = TransvectionLabel::unknown;
    else if (s == Tri::yes && t == Tri::yes)
        c.label = TransvectionLabel::coincide;
    else if (s == Tri::no && t == Tri::yes)
        c.label = TransvectionLabel::direct_successor;
    else if (s == Tri::yes && t == Tri::no)
        c.label = TransvectionLabel::direct_predecessor;
    else {
        detail::ensure(I == c.target, "a transvection with alpha not homotopic to u on both sides fixes the ideal");
        c.label = TransvectionLabel::equal_ideals;
    }
    return c;
}

struct TauCandidates {
    std::vector<Scalar> taus;
    bool exhaustive = false;
};

/// Largest field size for which every nonzero tau is tried.
inline constexpr std::uint64_t exhaustive_tau_limit = 64;

/// Finite set of transvection parameters to try for a bypass. Over small
/// GF(p) this is every nonzero scalar. Otherwise: +-1 plus each nonzero tau
/// cancelling one coefficient of phi(r_j) for a reduced basis element r_j;
/// since alpha occurs at most once in a path, each coefficient is linear in tau.
inline TauCandidates critical_taus(const Ideal& I, const Bypass& bp)
{
    const PathAlgebraPtr& alg = I.algebra();
    const Field f = alg->field();
    TauCandidates out;
    if (f.is_prime_field() && f.characteristic() <= exhaustive_tau_limit) {
        for (std::uint64_t v = 1; v < f.characteristic(); ++v) out.taus.push_back(Scalar(f, static_cast<long long>(v)));
        out.exhaustive = true;
        return out;
    }
    auto add = [&](const Scalar& s) {
        if (!s.is_zero() && std::find(out.taus.begin(), out.taus.end(), s) == out.taus.end()) out.taus.push_back(s);
    };
    add(Scalar(f, 1));
    add(Scalar(f, -1));
    std::size_t u = alg->index_of(bp.path);
    for (const auto& r : I.basis()) {
        // linear part in tau: every path through alpha with alpha replaced by u
        Element lin(alg);
        for (const auto& [p, c] : r.terms()) {
            const Path& path = alg->path(p);
            for (std::size_t i = 0; i < path.length(); ++i) {
                if (path.arrows[i] != bp.arrow) continue;
                Path before{path.source, alg->quiver().arrow(bp.arrow).source, {path.arrows.begin(), path.arrows.begin() + static_cast<std::ptrdiff_t>(i)}};
                Path after{alg->quiver().arrow(bp.arrow).target, path.target, {path.arrows.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.arrows.end()}};
                lin.add_term(alg->product(alg->index_of(after), alg->product(u, alg->index_of(before))), c);
            }
        }
        for (const auto& [p, c1] : lin.terms()) add(-r.coefficient(p) / c1);
    }
    std::sort(out.taus.begin(), out.taus.end(), detail::scalar_less);
    return out;
}

struct GammaVertex {
    Ideal ideal;
    std::vector<PathPair> pairs;
    Automorphism from_seed;  ///< ideal = from_seed(seed)
};

/// Definite arrow S-vertex -> T-vertex with T_ideal = phi_{arrow,path,tau}(S_ideal),
/// arrow not homotopic to path under S and homotopic under T.
struct GammaEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    Bypass bypass;
    Scalar tau;
    Ideal source_ideal;
    Ideal target_ideal;
    Automorphism source_from_seed;  ///< source_ideal = source_from_seed(seed)
    HomotopyDecision no_certificate;
    HomotopyDecision yes_certificate;
};

struct QuarantinedCandidate {
    std::size_t vertex = 0;
    Bypass bypass;
    Scalar tau;
    std::string reason;
};

struct GammaBudget {
    std::size_t max_vertices = 64;
    std::size_t max_candidates = 100000;
    HomotopyBudget homotopy;
};

struct GammaQuiver {
    Ideal seed;
    std::vector<GammaVertex> vertices;
    std::vector<GammaEdge> edges;
    std::vector<QuarantinedCandidate> quarantined;
    std::size_t candidates = 0;
    bool truncated = false;        ///< a budget stopped the search
    bool taus_exhaustive = true;   ///< every tau was tried for every bypass
    bool acyclic = true;

    std::vector<std::size_t> in_degree() const
    {
        std::vector<std::size_t> d(vertices.size(), 0);
        for (const auto& e : edges) ++d[e.to];
        return d;
    }
    bool complete() const { return !truncated && quarantined.empty() && taus_exhaustive; }
};

namespace detail {

inline bool is_acyclic(std::size_t n, const std::vector<GammaEdge>& edges)
{
    std::vector<std::size_t> indeg(n, 0);
    for (const auto& e : edges) ++indeg[e.to];
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] == 0) queue.push_back(v);
    std::size_t seen = 0;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        ++seen;
        for (const auto& e : edges)
            if (e.from == v && --indeg[e.to] == 0) queue.push_back(e.to);
    }
    return seen == n;
}

}  // namespace detail

/// Reachable part of the quiver of homotopy relations: breadth-first over the
/// vertices, trying every bypass with every candidate tau on each
/// representative. Vertices are homotopy relations (deduplicated with
/// relations_equal, which also absorbs dilatations); Unknown outcomes are
/// quarantined and never create arrows.
inline GammaQuiver build_gamma(const Ideal& seed, const GammaBudget& budget = {})
{
    require_admissible(seed);
    const PathAlgebraPtr& alg = seed.algebra();
    const Quiver& q = alg->quiver();
    GammaQuiver g;
    g.seed = seed;
    g.vertices.push_back({seed, homotopy_pairs(seed), Automorphism::identity(alg)});
    auto bypasses = enumerate_bypasses(q);

    // index of the vertex whose relation equals ~_J; nullopt if new; throws-free Unknown -> reason
    auto locate = [&](const Ideal& J, std::string& unknown_reason) -> std::optional<std::size_t> {
        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            if (g.vertices[v].ideal == J) return v;
        bool unknown = false;
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
            auto cmp = relations_equal(g.vertices[v].ideal, J, budget.homotopy);
            if (cmp.answer == Tri::yes) return v;
            if (cmp.answer == Tri::unknown) unknown = true;
        }
        if (unknown) unknown_reason = "cannot decide whether the relation is new";
        return std::nullopt;
    };
    auto add_edge = [&](GammaEdge e) {
        for (const auto& x : g.edges)
            if (x.from == e.from && x.to == e.to) return;
        g.edges.push_back(std::move(e));
    };

    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        for (const auto& bp : bypasses) {
            auto taus = critical_taus(g.vertices[v].ideal, bp);
            if (!taus.exhaustive) g.taus_exhaustive = false;
            for (const auto& tau : taus.taus) {
                if (g.candidates >= budget.max_candidates) {
                    g.truncated = true;
                    break;
                }
                ++g.candidates;
                const Ideal rep = g.vertices[v].ideal;
                auto c = classify_transvection(rep, bp, tau, budget.homotopy);
                if (c.label == TransvectionLabel::unknown) {
                    g.quarantined.push_back({v, bp, tau, "homotopy test undecided within budget"});
                    continue;
                }
                if (c.label != TransvectionLabel::direct_successor && c.label != TransvectionLabel::direct_predecessor) continue;
                std::string why;
                auto w = locate(c.target, why);
                if (!w && !why.empty()) {
                    g.quarantined.push_back({v, bp, tau, why});
                    continue;
                }
                Automorphism to_target = c.phi.compose(g.vertices[v].from_seed);
                if (!w) {
                    if (g.vertices.size() >= budget.max_vertices) {
                        g.truncated = true;
                        continue;
                    }
                    g.vertices.push_back({c.target, homotopy_pairs(c.target), to_target});
                    w = g.vertices.size() - 1;
                }
                detail::ensure(*w != v, "a direct successor has a different homotopy relation");
                if (c.label == TransvectionLabel::direct_successor)
                    add_edge({v, *w, bp, tau, rep, c.target, g.vertices[v].from_seed, c.on_source, c.on_target});
                else
                    add_edge({*w, v, bp, -tau, c.target, rep, to_target, c.on_target, c.on_source});
            }
        }
    }
    g.acyclic = detail::is_acyclic(g.vertices.size(), g.edges);
    return g;
}

struct HypothesisReport {
    bool h1 = false;  ///< no double bypass and characteristic zero
    bool h2 = false;  ///< a monomial presentation was found and no multiple arrows
    std::optional<DoubleBypass> double_bypass;
    bool multiple_arrows = false;
    bool monomial_found = false;
};

struct SourceReport {
    std::vector<std::size_t> sources;
    bool unique = false;
    HypothesisReport hypotheses;
};

inline SourceReport sources(const GammaQuiver& g)
{
    SourceReport r;
    auto indeg = g.in_degree();
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (indeg[v] == 0) r.sources.push_back(v);
    r.unique = r.sources.size() == 1;
    const Quiver& q = g.seed.algebra()->quiver();
    r.hypotheses.double_bypass = has_double_bypass(q);
    r.hypotheses.multiple_arrows = q.has_multiple_arrows();
    for (const auto& v : g.vertices)
        if (is_monomial(v.ideal)) r.hypotheses.monomial_found = true;
    r.hypotheses.h1 = !r.hypotheses.double_bypass && g.seed.field().is_rational();
    r.hypotheses.h2 = r.hypotheses.monomial_found && !r.hypotheses.multiple_arrows;
    return r;
}

struct FactorStep {
    Bypass bypass;
    Scalar tau;
    Ideal after;                  ///< I_i
    HomotopyDecision certificate;  ///< arrow ~_{I_i} path
};

struct FactorizationWitness {
    Tri found = Tri::unknown;
    Ideal start;
    std::vector<FactorStep> steps;
    std::vector<Scalar> dilatation;  ///< one weight per arrow
    std::size_t states = 0;
    std::string reason;
};

struct FactorBudget {
    std::size_t max_states = 2000;
    std::size_t max_dilatations = 20000;
    HomotopyBudget homotopy;
};

/// Weights w with D_w(from) = to, searched exhaustively over small GF(p) and
/// over {+-1, +-2, +-1/2} otherwise, restricted to arrows in the supports.
inline std::optional<std::vector<Scalar>> find_dilatation(const Ideal& from, const Ideal& to, std::size_t max_tries)
{
    const PathAlgebraPtr& alg = from.algebra();
    const Quiver& q = alg->quiver();
    const Field f = alg->field();
    std::vector<Scalar> w(q.arrow_count(), Scalar::one(f));
    if (from == to) return w;
    if (from.pivots() != to.pivots()) return std::nullopt;
    for (std::size_t j = 0; j < from.dim(); ++j)
        if (from.basis()[j].support() != to.basis()[j].support()) return std::nullopt;
    std::vector<std::size_t> relevant;
    for (const auto& r : from.basis())
        for (const auto& [p, c] : r.terms())
            for (auto a : alg->path(p).arrows)
                if (std::find(relevant.begin(), relevant.end(), a) == relevant.end()) relevant.push_back(a);
    std::sort(relevant.begin(), relevant.end());
    std::vector<Scalar> values;
    if (f.is_prime_field() && f.characteristic() <= exhaustive_tau_limit) {
        for (std::uint64_t v = 1; v < f.characteristic(); ++v) values.push_back(Scalar(f, static_cast<long long>(v)));
    } else {
        for (long long v : {1, -1, 2, -2}) values.push_back(Scalar(f, v));
        values.push_back(Scalar(f, 1, 2));
        values.push_back(Scalar(f, -1, 2));
    }
    std::vector<std::size_t> idx(relevant.size(), 0);
    for (std::size_t tries = 0; tries < max_tries; ++tries) {
        for (std::size_t k = 0; k < relevant.size(); ++k) w[relevant[k]] = values[idx[k]];
        if (apply_to_ideal(Automorphism::dilatation(alg, w), from) == to) return w;
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == values.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return std::nullopt;
}

/// Sequence of transvections from `start` followed by a dilatation reaching
/// `target`, each step certified by arrow ~_{I_i} path. Breadth-first over
/// the ideals reachable by such certified steps.
inline FactorizationWitness factor_to_source(const Ideal& start, const Ideal& target, const FactorBudget& budget = {})
{
    const PathAlgebraPtr& alg = start.algebra();
    const Quiver& q = alg->quiver();
    FactorizationWitness res;
    res.start = start;
    auto bypasses = enumerate_bypasses(q);

    struct Node {
        Ideal ideal;
        std::optional<std::size_t> parent;
        std::optional<FactorStep> step;
    };
    std::vector<Node> nodes{{start, std::nullopt, std::nullopt}};
    bool exhausted = true;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (auto w = find_dilatation(nodes[i].ideal, target, budget.max_dilatations)) {
            for (std::optional<std::size_t> k = i; k && nodes[*k].step; k = nodes[*k].parent) res.steps.push_back(*nodes[*k].step);
            std::reverse(res.steps.begin(), res.steps.end());
            res.dilatation = *w;
            res.found = Tri::yes;
            res.states = nodes.size();
            res.reason = "certified transvection sequence found";
            return res;
        }
        for (const auto& bp : bypasses)
            for (const auto& tau : critical_taus(nodes[i].ideal, bp).taus) {
                Ideal next = apply_to_ideal(Automorphism::transvection(alg, bp.arrow, bp.path, tau), nodes[i].ideal);
                bool seen = false;
                for (const auto& n : nodes)
                    if (n.ideal == next) seen = true;
                if (seen) continue;
                auto cert = decide_homotopic(arrow_walk(q, bp.arrow), Walk::from_path(bp.path), next, budget.homotopy);
                if (cert.answer == Tri::unknown) exhausted = false;
                if (cert.answer != Tri::yes) continue;
                if (nodes.size() >= budget.max_states) {
                    exhausted = false;
                    continue;
                }
                nodes.push_back({next, i, FactorStep{bp, tau, next, cert}});
            }
    }
    res.states = nodes.size();
    res.found = exhausted ? Tri::no : Tri::unknown;
    res.reason = exhausted ? "no certified sequence reaches the ideal" : "search budget exhausted";
    return res;
}

/// Replays a witness: every step maps I_{i-1} to I_i with a replayable
/// certificate, and the dilatation maps the last ideal to `target`.
inline bool verify_factorization(const FactorizationWitness& w, const Ideal& target)
{
    if (w.found != Tri::yes) return false;
    const PathAlgebraPtr& alg = w.start.algebra();
    const Quiver& q = alg->quiver();
    Ideal cur = w.start;
    SpanningTree tree = spanning_tree(q, 0);
    for (const auto& s : w.steps) {
        cur = apply_to_ideal(Automorphism::transvection(alg, s.bypass.arrow, s.bypass.path, s.tau), cur);
        if (!(cur == s.after)) return false;
        if (s.certificate.answer != Tri::yes) return false;
        GroupPresentation p = pi1_presentation(cur, tree);
        Word word = p.word_of(reduce_walk(arrow_walk(q, s.bypass.arrow).then(Walk::from_path(s.bypass.path).inverse())));
        if (!replay_trace(p, word, s.certificate.trace)) return false;
    }
    return apply_to_ideal(Automorphism::dilatation(alg, w.dilatation), cur) == target;
}

/// Composite phi_l ... phi_1 of a witness, followed by its dilatation.
inline Automorphism witness_automorphism(const FactorizationWitness& w)
{
    const PathAlgebraPtr& alg = w.start.algebra();
    Automorphism phi = Automorphism::identity(alg);
    for (const auto& s : w.steps) phi = Automorphism::transvection(alg, s.bypass.arrow, s.bypass.path, s.tau).compose(phi);
    return Automorphism::dilatation(alg, w.dilatation).compose(phi);
}

struct Check {
    std::string name;
    Tri status = Tri::unknown;  ///< yes = pass, no = fail
    std::string detail;
};

struct Theorem1Report {
    GammaQuiver gamma;
    SourceReport source_report;
    std::vector<Check> checks;
    std::vector<std::vector<Vector>> maximal_family;  ///< images of presentations with source kernel
    std::vector<Automorphism> family_conjugators;      ///< psi_i with family[i] = psi_i*(family[0])
    bool taus_exhaustive = true;

    Tri overall() const
    {
        Tri t = Tri::yes;
        for (const auto& c : checks) {
            if (c.status == Tri::no) return Tri::no;
            if (c.status == Tri::unknown) t = Tri::unknown;
        }
        return t;
    }
};

struct VerifyBudget {
    GammaBudget gamma;
    FactorBudget factor;
    MaxdiagBudget maxdiag;
    std::size_t max_family = 8;
};

namespace detail {

inline bool same_subspace(Field f, std::size_t dim, const std::vector<Vector>& a, const std::vector<Vector>& b)
{
    return make_subspace(f, dim, a) == make_subspace(f, dim, b);
}

inline bool contained(Field f, std::size_t dim, const std::vector<Vector>& small, const std::vector<Vector>& big)
{
    Subspace b = make_subspace(f, dim, big);
    for (const auto& v : small)
        if (!b.contains(v)) return false;
    return true;
}

inline Tri from_bool(bool b) { return b ? Tri::yes : Tri::no; }

}  // namespace detail

/// Builds Gamma and checks the classification statement constructively on the
/// instance: source images are maximal diagonalizable, every other
/// presentation's image sits inside a conjugate of a source image, the
/// inclusions along arrows hold, and the maximal images found are conjugate.
inline Theorem1Report verify_theorem1(const Ideal& seed, const VerifyBudget& budget = {})
{
    Theorem1Report rep;
    rep.gamma = build_gamma(seed, budget.gamma);
    rep.source_report = sources(rep.gamma);
    rep.taus_exhaustive = rep.gamma.taus_exhaustive;
    const GammaQuiver& g = rep.gamma;
    const PathAlgebraPtr& alg = seed.algebra();
    const Quiver& q = alg->quiver();
    const Field f = alg->field();
    HH1Space H{FDAlgebra(seed)};
    const std::size_t C = H.coord_count();
    SpanningTree tree = spanning_tree(q, 0);
    auto add = [&](std::string name, Tri status, std::string detail) { rep.checks.push_back({std::move(name), status, std::move(detail)}); };

    add("gamma.acyclic", detail::from_bool(g.acyclic), std::to_string(g.vertices.size()) + " vertices, " + std::to_string(g.edges.size()) + " arrows");
    bool swept = !g.truncated && g.quarantined.empty();
    add("gamma.complete", swept ? Tri::yes : Tri::unknown,
        std::to_string(g.quarantined.size()) + " quarantined candidate(s)" + (g.truncated ? ", truncated" : "") +
            (g.taus_exhaustive ? ", exhaustive tau sweep" : ", heuristic tau set"));
    add("gamma.unique_source", rep.source_report.unique ? Tri::yes : Tri::unknown, std::to_string(rep.source_report.sources.size()) + " source(s)");

    auto presentation_of = [&](std::size_t v) { return Presentation(seed, g.vertices[v].from_seed.inverse()); };
    std::vector<ThetaImage> images;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) images.push_back(image_theta(H, presentation_of(v), tree));

    for (auto s : rep.source_report.sources) {
        std::string tag = "source[" + std::to_string(s) + "]";
        auto diag = is_diagonalizable_set(H, images[s].basis);
        add(tag + ".diagonalizable", detail::from_bool(diag.diagonalizable), diag.reason);
        if (!diag.diagonalizable) continue;
        auto m = is_maximal_diagonalizable(H, images[s].basis, budget.maxdiag);
        add(tag + ".maximal", m.answer, m.reason);
    }

    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const GammaEdge& edge = g.edges[e];
        // nu has kernel S; mu = nu o phi_{alpha,u,-tau} has kernel T
        Presentation nu(seed, edge.source_from_seed.inverse());
        Automorphism back = Automorphism::transvection(alg, edge.bypass.arrow, edge.bypass.path, -edge.tau);
        Presentation mu(seed, nu.chi().compose(back));
        bool kernels = nu.kernel() == edge.source_ideal && mu.kernel() == edge.target_ideal;
        auto a = image_theta(H, mu, tree), b = image_theta(H, nu, tree);
        add("edge[" + std::to_string(e) + "].inclusion", detail::from_bool(kernels && detail::contained(f, C, a.basis, b.basis)),
            "image along the arrow is contained in the image at its tail");
        // a character of the finer relation is one of the coarser relation with the same weights
        bool triangle = kernels;
        for (const auto& t : hom_space(mu.kernel(), tree).basis)
            triangle = triangle && satisfies_pairs(*alg, t, homotopy_pairs(nu.kernel())) && theta(H, mu, t, tree) == theta(H, nu, t, tree);
        add("edge[" + std::to_string(e) + "].triangle", detail::from_bool(triangle), "theta_mu(f) = theta_nu(p*(f)) on a character basis");
    }

    if (!rep.source_report.sources.empty()) {
        std::size_t s = rep.source_report.sources.front();
        Presentation nu = presentation_of(s);
        const Ideal& I0 = g.vertices[s].ideal;
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
            if (std::find(rep.source_report.sources.begin(), rep.source_report.sources.end(), v) != rep.source_report.sources.end()) continue;
            std::string tag = "vertex[" + std::to_string(v) + "]";
            Presentation mu = presentation_of(v);
            auto w = factor_to_source(I0, mu.kernel(), budget.factor);
            if (w.found != Tri::yes) {
                add(tag + ".factorization", w.found == Tri::no ? Tri::no : Tri::unknown, w.reason);
                continue;
            }
            add(tag + ".factorization", detail::from_bool(verify_factorization(w, mu.kernel())), std::to_string(w.steps.size()) + " transvection(s)");
            // nu = mu o phi, psi = phi^-1 D phi_l ... phi_1 stabilizes I0
            Automorphism phi = mu.chi_inverse().compose(nu.chi());
            Automorphism psi = phi.inverse().compose(witness_automorphism(w));
            bool stabilizes = apply_to_ideal(psi, I0) == I0;
            add(tag + ".stabilizer", detail::from_bool(stabilizes), "psi maps the source kernel to itself");
            if (!stabilizes) continue;
            Presentation nu2 = nu.compose(seed, psi);
            auto im_nu2 = image_theta(H, nu2, tree);
            add(tag + ".inclusion", detail::from_bool(detail::contained(f, C, images[v].basis, im_nu2.basis)), "image is inside the conjugated source image");
            auto pushed = push_forward(H, induced_automorphism(nu, psi), images[s].basis);
            add(tag + ".conjugate", detail::from_bool(detail::same_subspace(f, C, pushed, im_nu2.basis)), "conjugated source image equals the image of nu o psi");
            auto eq = relations_equal(I0, mu.kernel(), budget.gamma.homotopy);
            if (eq.answer == Tri::yes)
                add(tag + ".equality", detail::from_bool(detail::same_subspace(f, C, images[v].basis, im_nu2.basis)), "equal relations give equal images");
        }

        // maximal images of source presentations nu o phi for stabilizing transvections
        std::vector<Automorphism> twists{Automorphism::identity(alg)};
        for (const auto& bp : enumerate_bypasses(q))
            for (const auto& tau : critical_taus(I0, bp).taus) {
                if (twists.size() >= budget.max_family) break;
                Automorphism t = Automorphism::transvection(alg, bp.arrow, bp.path, tau);
                if (apply_to_ideal(t, I0) == I0) twists.push_back(t);
            }
        std::vector<Automorphism> reps;
        for (const auto& t : twists) {
            auto im = image_theta(H, nu.compose(seed, t), tree);
            bool fresh = true;
            for (const auto& m : rep.maximal_family)
                if (detail::same_subspace(f, C, m, im.basis)) fresh = false;
            if (!fresh) continue;
            rep.maximal_family.push_back(im.basis);
            reps.push_back(t);
        }
        for (std::size_t i = 0; i < reps.size(); ++i) rep.family_conjugators.push_back(induced_automorphism(nu, reps[i]));
        for (std::size_t i = 1; i < rep.maximal_family.size(); ++i) {
            std::string tag = "family[" + std::to_string(i) + "]";
            auto m = is_maximal_diagonalizable(H, rep.maximal_family[i], budget.maxdiag);
            add(tag + ".maximal", m.answer, m.reason);
            auto pushed = push_forward(H, rep.family_conjugators[i], rep.maximal_family[0]);
            add(tag + ".conjugate", detail::from_bool(detail::same_subspace(f, C, pushed, rep.maximal_family[i])), "conjugate of the first source image");
        }
    }
    return rep;
}

}  // namespace boundq
