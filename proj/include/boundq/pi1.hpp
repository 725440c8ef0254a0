#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boundq/error.hpp"
#include "boundq/exactla.hpp"
#include "boundq/palg.hpp"
#include "boundq/quiver.hpp"

namespace boundq {

enum class Tri { yes, no, unknown };

inline const char* to_string(Tri t)
{
    switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    default: return "unknown";
    }
}

struct PathPair {
    std::size_t u = 0;  ///< path index in the algebra, u < v
    std::size_t v = 0;
    friend bool operator==(const PathPair&, const PathPair&) = default;
};

/// Unordered pairs of distinct paths occurring in a common reduced basis element.
inline std::vector<PathPair> homotopy_pairs(const Ideal& I)
{
    std::vector<PathPair> out;
    for (const auto& r : I.basis()) {
        auto s = r.support();
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                PathPair p{s[i], s[j]};
                if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
            }
    }
    return out;
}

/// Letters are +-(g + 1) for generator g; negative means inverse.
using Word = std::vector<int>;

inline Word free_reduce(const Word& w)
{
    Word r;
    for (int l : w) {
        if (!r.empty() && r.back() == -l)
            r.pop_back();
        else
            r.push_back(l);
    }
    return r;
}

inline Word inverse_word(const Word& w)
{
    Word r(w.rbegin(), w.rend());
    for (int& l : r) l = -l;
    return r;
}

struct GroupPresentation {
    std::size_t base = 0;
    SpanningTree tree;
    std::vector<std::size_t> generators;  ///< non-tree arrows, name order
    std::vector<Word> relators;          ///< freely reduced, nonempty
    std::vector<std::string> generator_names;

    std::size_t generator_of(std::size_t arrow) const
    {
        auto it = std::find(generators.begin(), generators.end(), arrow);
        if (it == generators.end()) throw InvalidArgument("arrow is in the spanning tree");
        return static_cast<std::size_t>(it - generators.begin());
    }

    /// Word of a walk in traversal order; tree arrows map to the empty word.
    Word word_of(const Walk& w) const
    {
        Word r;
        for (const auto& s : w.steps()) {
            if (tree.contains(s.arrow)) continue;
            int g = static_cast<int>(generator_of(s.arrow)) + 1;
            r.push_back(s.sign > 0 ? g : -g);
        }
        return free_reduce(r);
    }

    std::string word_string(const Word& w) const
    {
        if (w.empty()) return "1";
        std::string s;
        for (int l : w) {
            if (!s.empty()) s += " ";
            s += generator_names[static_cast<std::size_t>(std::abs(l) - 1)];
            if (l < 0) s += "^-1";
        }
        return s;
    }
};

/// Presentation of the fundamental group: one generator per non-tree arrow and
/// one relator u v^-1 per homotopy pair.
inline GroupPresentation pi1_presentation(const PathAlgebra& alg, const SpanningTree& tree, const std::vector<PathPair>& pairs)
{
    const Quiver& q = alg.quiver();
    GroupPresentation p;
    p.base = tree.base;
    p.tree = tree;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        if (!tree.contains(a)) {
            p.generators.push_back(a);
            p.generator_names.push_back(q.arrow(a).name);
        }
    for (const auto& pr : pairs) {
        const Path& u = alg.path(pr.u);
        const Path& v = alg.path(pr.v);
        if (!u.parallel_to(v)) throw InvalidArgument("homotopy pair paths are not parallel");
        Word w = p.word_of(Walk::from_path(u));
        Word wv = inverse_word(p.word_of(Walk::from_path(v)));
        w.insert(w.end(), wv.begin(), wv.end());
        w = free_reduce(w);
        if (!w.empty() && std::find(p.relators.begin(), p.relators.end(), w) == p.relators.end()) p.relators.push_back(w);
    }
    return p;
}

inline GroupPresentation pi1_presentation(const Ideal& I, const SpanningTree& tree)
{
    return pi1_presentation(*I.algebra(), tree, homotopy_pairs(I));
}

/// Exponent-sum matrix: one row per relator, one column per generator.
inline IntMatrix exponent_matrix(const GroupPresentation& p)
{
    IntMatrix m(p.relators.size(), p.generators.size());
    for (std::size_t i = 0; i < p.relators.size(); ++i)
        for (int l : p.relators[i]) m(i, static_cast<std::size_t>(std::abs(l) - 1)) += l > 0 ? 1 : -1;
    return m;
}

struct AbelianInvariants {
    std::vector<BigInt> torsion;  ///< d_1 | d_2 | ..., each >= 2
    std::size_t free_rank = 0;
    friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;

    std::string to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < free_rank; ++i) s += s.empty() ? "Z" : " x Z";
        for (const auto& d : torsion) s += (s.empty() ? "Z/" : " x Z/") + d.str();
        return s.empty() ? "1" : s;
    }
};

inline AbelianInvariants abelian_invariants(const GroupPresentation& p)
{
    AbelianInvariants a;
    auto snf = smith_normal_form(exponent_matrix(p));
    for (const auto& d : snf.factors)
        if (d > 1) a.torsion.push_back(d);
    a.free_rank = p.generators.size() - snf.factors.size();
    return a;
}

/// Characters t: Q_1 -> k vanishing on the tree and constant on homotopy pairs.
struct HomSpace {
    Field field;
    std::vector<Vector> basis;  ///< each of length |Q_1|, arrows in name order
    std::size_t dim() const { return basis.size(); }
};

/// Sum of t over the arrows of a path.
inline Scalar path_weight(const PathAlgebra& alg, const Vector& t, std::size_t path)
{
    Scalar s = Scalar::zero(alg.field());
    for (auto a : alg.path(path).arrows) s += t.at(a);
    return s;
}

/// Signed sum of t along a walk.
inline Scalar walk_weight(Field f, const Vector& t, const Walk& w)
{
    Scalar s = Scalar::zero(f);
    for (const auto& st : w.steps()) s += st.sign > 0 ? t.at(st.arrow) : -t.at(st.arrow);
    return s;
}

inline Matrix hom_system(const PathAlgebra& alg, const std::vector<PathPair>& pairs)
{
    const std::size_t n = alg.quiver().arrow_count();
    std::vector<Vector> rows;
    for (const auto& pr : pairs) {
        Vector r = zero_vector(alg.field(), n);
        for (auto a : alg.path(pr.u).arrows) r[a] += Scalar::one(alg.field());
        for (auto a : alg.path(pr.v).arrows) r[a] -= Scalar::one(alg.field());
        rows.push_back(std::move(r));
    }
    return Matrix::from_rows(alg.field(), rows, n);
}

inline HomSpace hom_space(const PathAlgebra& alg, const SpanningTree& tree, const std::vector<PathPair>& pairs)
{
    const std::size_t n = alg.quiver().arrow_count();
    Matrix sys = hom_system(alg, pairs);
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < sys.rows(); ++i) rows.push_back(sys.row_vector(i));
    for (std::size_t a = 0; a < n; ++a)
        if (tree.contains(a)) {
            Vector r = zero_vector(alg.field(), n);
            r[a] = Scalar::one(alg.field());
            rows.push_back(std::move(r));
        }
    return {alg.field(), nullspace(Matrix::from_rows(alg.field(), rows, n))};
}

inline HomSpace hom_space(const Ideal& I, const SpanningTree& tree)
{
    return hom_space(*I.algebra(), tree, homotopy_pairs(I));
}

/// True iff t takes equal values on both paths of every pair.
inline bool satisfies_pairs(const PathAlgebra& alg, const Vector& t, const std::vector<PathPair>& pairs)
{
    for (const auto& pr : pairs)
        if (!(path_weight(alg, t, pr.u) == path_weight(alg, t, pr.v))) return false;
    return true;
}

/// Cohomologous character vanishing on `tree`: t'_a = t_a + t(g_s) - t(g_t),
/// where g_x is the tree walk from the base vertex to x.
inline Vector renormalize(const Quiver& q, const Vector& t, const SpanningTree& tree)
{
    const Field f = t.empty() ? Field::rationals() : t.front().field();
    Vector out = t;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        out[a] = t[a] + walk_weight(f, t, tree.gamma[ar.source]) - walk_weight(f, t, tree.gamma[ar.target]);
    }
    return out;
}

struct HomotopyBudget {
    std::size_t max_word_length = 64;
    std::size_t max_nodes = 100000;
};

struct RewriteStep {
    std::size_t position = 0;
    Word inserted;  ///< a cyclic rotation of a relator or its inverse
    Word result;    ///< freely reduced word after insertion
};

struct HomotopyDecision {
    Tri answer = Tri::unknown;
    Word word;                          ///< word of v^-1 u at the common source
    std::vector<RewriteStep> trace;     ///< yes: rewrites ending at the empty word
    std::vector<BigInt> abelian_image;  ///< no: exponent vector outside the relator lattice
    std::string reason;
    std::size_t nodes = 0;
};

namespace detail {

inline std::vector<Word> relator_rotations(const GroupPresentation& p)
{
    std::vector<Word> out;
    for (const auto& r : p.relators)
        for (const Word& base : {r, inverse_word(r)})
            for (std::size_t k = 0; k < base.size(); ++k) {
                Word w(base.begin() + static_cast<std::ptrdiff_t>(k), base.end());
                w.insert(w.end(), base.begin(), base.begin() + static_cast<std::ptrdiff_t>(k));
                if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
            }
    return out;
}

inline std::vector<BigInt> exponent_vector(const GroupPresentation& p, const Word& w)
{
    std::vector<BigInt> e(p.generators.size());
    for (int l : w) e[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
    return e;
}

/// True iff the integer vector lies in the row lattice of the exponent matrix.
inline bool in_relator_lattice(const GroupPresentation& p, const std::vector<BigInt>& e)
{
    auto snf = smith_normal_form(exponent_matrix(p));
    const std::size_t g = p.generators.size();
    for (std::size_t j = 0; j < g; ++j) {
        BigInt c = 0;
        for (std::size_t i = 0; i < g; ++i) c += e[i] * snf.v(i, j);
        if (j < snf.factors.size()) {
            if (c % snf.factors[j] != 0) return false;
        } else if (c != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace detail

/// Replays a rewrite trace from `start`; true iff every step is a legal
/// relator insertion followed by free reduction and the final word is empty.
inline bool replay_trace(const GroupPresentation& p, const Word& start, const std::vector<RewriteStep>& trace)
{
    auto rots = detail::relator_rotations(p);
    Word cur = free_reduce(start);
    for (const auto& st : trace) {
        if (std::find(rots.begin(), rots.end(), st.inserted) == rots.end()) return false;
        if (st.position > cur.size()) return false;
        Word next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(st.position));
        next.insert(next.end(), st.inserted.begin(), st.inserted.end());
        next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(st.position), cur.end());
        next = free_reduce(next);
        if (next != st.result) return false;
        cur = std::move(next);
    }
    return cur.empty();
}

/// Is the closed word trivial in the presented group? No is certified by the
/// abelian image (or a nonempty reduced word in a free group), Yes by a
/// breadth-first rewrite search within the budget.
inline HomotopyDecision decide_trivial(const GroupPresentation& p, const Word& start, const HomotopyBudget& budget = {})
{
    HomotopyDecision d;
    d.word = free_reduce(start);
    if (d.word.empty()) {
        d.answer = Tri::yes;
        d.reason = "word reduces to the identity";
        return d;
    }
    if (p.relators.empty()) {
        d.answer = Tri::no;
        d.abelian_image = detail::exponent_vector(p, d.word);
        d.reason = "nonempty reduced word in a free group";
        return d;
    }
    auto e = detail::exponent_vector(p, d.word);
    if (!detail::in_relator_lattice(p, e)) {
        d.answer = Tri::no;
        d.abelian_image = std::move(e);
        d.reason = "abelian image outside the relator lattice";
        return d;
    }

    auto rots = detail::relator_rotations(p);
    std::map<Word, std::pair<Word, RewriteStep>> parent;
    std::deque<Word> queue{d.word};
    parent.emplace(d.word, std::pair<Word, RewriteStep>{});
    while (!queue.empty()) {
        Word cur = std::move(queue.front());
        queue.pop_front();
        for (std::size_t pos = 0; pos <= cur.size(); ++pos)
            for (const auto& r : rots) {
                Word next(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(pos));
                next.insert(next.end(), r.begin(), r.end());
                next.insert(next.end(), cur.begin() + static_cast<std::ptrdiff_t>(pos), cur.end());
                next = free_reduce(next);
                if (next.size() > budget.max_word_length || parent.count(next)) continue;
                parent.emplace(next, std::pair<Word, RewriteStep>{cur, RewriteStep{pos, r, next}});
                if (next.empty()) {
                    for (Word w = next; w != d.word; w = parent.at(w).first) d.trace.push_back(parent.at(w).second);
                    std::reverse(d.trace.begin(), d.trace.end());
                    d.answer = Tri::yes;
                    d.nodes = parent.size();
                    d.reason = "rewrite trace to the identity";
                    return d;
                }
                if (parent.size() >= budget.max_nodes) {
                    d.nodes = parent.size();
                    d.reason = "node budget exhausted";
                    return d;
                }
                queue.push_back(std::move(next));
            }
    }
    d.nodes = parent.size();
    d.reason = "search space within the word-length budget exhausted";
    return d;
}

/// Decides u ~_I v for parallel walks u, v.
inline HomotopyDecision decide_homotopic(const Walk& u, const Walk& v, const Ideal& I, const HomotopyBudget& budget = {},
                                         std::optional<SpanningTree> tree = std::nullopt)
{
    if (u.source() != v.source() || u.target() != v.target()) throw InvalidArgument("walks are not parallel");
    const Quiver& q = I.algebra()->quiver();
    SpanningTree t = tree ? *tree : spanning_tree(q, 0);
    GroupPresentation p = pi1_presentation(I, t);
    return decide_trivial(p, p.word_of(reduce_walk(u.then(v.inverse()))), budget);
}

struct RelationComparison {
    Tri answer = Tri::yes;
    std::vector<std::string> failures;  ///< pairs answered no or unknown
};

/// Compares ~_I and ~_J through their generating pairs, in both directions.
inline RelationComparison relations_equal(const Ideal& I, const Ideal& J, const HomotopyBudget& budget = {})
{
    const PathAlgebra& alg = *I.algebra();
    SpanningTree t = spanning_tree(alg.quiver(), 0);
    RelationComparison res;
    bool unknown = false;
    for (const auto& [X, Y] : {std::pair<const Ideal*, const Ideal*>{&I, &J}, {&J, &I}}) {
        GroupPresentation p = pi1_presentation(*Y, t);
        for (const auto& pr : homotopy_pairs(*X)) {
            Walk u = Walk::from_path(alg.path(pr.u)), v = Walk::from_path(alg.path(pr.v));
            auto d = decide_trivial(p, p.word_of(reduce_walk(u.then(v.inverse()))), budget);
            if (d.answer == Tri::yes) continue;
            res.failures.push_back(alg.path_name(pr.u) + " ~ " + alg.path_name(pr.v) + ": " + to_string(d.answer));
            if (d.answer == Tri::no) {
                res.answer = Tri::no;
                return res;
            }
            unknown = true;
        }
    }
    if (unknown) res.answer = Tri::unknown;
    return res;
}

}  // namespace boundq
