#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "boundq/error.hpp"

namespace boundq {

struct Arrow {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
};

/// Finite quiver. Vertices keep declaration order; arrows are stored sorted by
/// name, so an arrow index doubles as its rank in the global arrow order.
class Quiver {
public:
    Quiver() = default;

    Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows) : vertices_(std::move(vertices))
    {
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (vertex_index_.count(vertices_[i])) throw InvalidArgument("duplicate vertex '" + vertices_[i] + "'");
            vertex_index_[vertices_[i]] = i;
        }
        std::sort(arrows.begin(), arrows.end(), [](const Arrow& a, const Arrow& b) { return a.name < b.name; });
        for (std::size_t i = 0; i < arrows.size(); ++i) {
            const Arrow& a = arrows[i];
            if (a.source >= vertices_.size() || a.target >= vertices_.size())
                throw InvalidArgument("arrow '" + a.name + "' has an endpoint outside the vertex set");
            if (arrow_index_.count(a.name)) throw InvalidArgument("duplicate arrow '" + a.name + "'");
            arrow_index_[a.name] = i;
        }
        arrows_ = std::move(arrows);
        out_.assign(vertices_.size(), {});
        in_.assign(vertices_.size(), {});
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            out_[arrows_[i].source].push_back(i);
            in_[arrows_[i].target].push_back(i);
        }
    }

    /// Convenience constructor from (name, source name, target name) triples.
    static Quiver from_names(std::vector<std::string> vertices,
                             const std::vector<std::tuple<std::string, std::string, std::string>>& arrows)
    {
        std::map<std::string, std::size_t> idx;
        for (std::size_t i = 0; i < vertices.size(); ++i) idx.emplace(vertices[i], i);
        std::vector<Arrow> as;
        for (const auto& [n, s, t] : arrows) {
            auto si = idx.find(s), ti = idx.find(t);
            if (si == idx.end()) throw InvalidArgument("unknown vertex '" + s + "'");
            if (ti == idx.end()) throw InvalidArgument("unknown vertex '" + t + "'");
            as.push_back({n, si->second, ti->second});
        }
        return Quiver(std::move(vertices), std::move(as));
    }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }
    const std::vector<std::string>& vertices() const { return vertices_; }
    const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<std::size_t>& out_arrows(std::size_t v) const { return out_.at(v); }
    const std::vector<std::size_t>& in_arrows(std::size_t v) const { return in_.at(v); }

    std::optional<std::size_t> find_vertex(const std::string& name) const
    {
        auto it = vertex_index_.find(name);
        if (it == vertex_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::size_t> find_arrow(const std::string& name) const
    {
        auto it = arrow_index_.find(name);
        if (it == arrow_index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t vertex_index(const std::string& name) const
    {
        auto v = find_vertex(name);
        if (!v) throw InvalidArgument("unknown vertex '" + name + "'");
        return *v;
    }
    std::size_t arrow_index(const std::string& name) const
    {
        auto a = find_arrow(name);
        if (!a) throw InvalidArgument("unknown arrow '" + name + "'");
        return *a;
    }

    bool has_multiple_arrows() const
    {
        for (std::size_t i = 0; i < arrows_.size(); ++i)
            for (std::size_t j = i + 1; j < arrows_.size(); ++j)
                if (arrows_[i].source == arrows_[j].source && arrows_[i].target == arrows_[j].target) return true;
        return false;
    }

    friend bool operator==(const Quiver& a, const Quiver& b)
    {
        if (a.vertices_ != b.vertices_ || a.arrows_.size() != b.arrows_.size()) return false;
        for (std::size_t i = 0; i < a.arrows_.size(); ++i)
            if (a.arrows_[i].name != b.arrows_[i].name || a.arrows_[i].source != b.arrows_[i].source ||
                a.arrows_[i].target != b.arrows_[i].target)
                return false;
        return true;
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, std::size_t> vertex_index_;
    std::map<std::string, std::size_t> arrow_index_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

struct QuiverDiagnostics {
    enum class Kind { ok, cycle, disconnected, empty };
    Kind kind = Kind::ok;
    /// Arrows of an oriented cycle, in traversal order (kind == cycle).
    std::vector<std::size_t> cycle;
    /// Vertex sets of the connected components (kind == disconnected).
    std::vector<std::vector<std::size_t>> components;
    std::string message;

    bool ok() const { return kind == Kind::ok; }
};

/// Accepts iff the quiver is nonempty, has no oriented cycle and is connected.
inline QuiverDiagnostics validate(const Quiver& q)
{
    QuiverDiagnostics d;
    const std::size_t n = q.vertex_count();
    if (n == 0) {
        d.kind = QuiverDiagnostics::Kind::empty;
        d.message = "quiver has no vertices";
        return d;
    }
    // cycle search: iterative DFS with colors, recording the arrow used to enter each vertex
    std::vector<int> color(n, 0);
    std::vector<std::size_t> via(n, 0);
    for (std::size_t root = 0; root < n && d.cycle.empty(); ++root) {
        if (color[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
        color[root] = 1;
        while (!stack.empty() && d.cycle.empty()) {
            auto& [v, k] = stack.back();
            if (k == q.out_arrows(v).size()) {
                color[v] = 2;
                stack.pop_back();
                continue;
            }
            std::size_t a = q.out_arrows(v)[k++];
            std::size_t w = q.arrow(a).target;
            if (color[w] == 1) {
                std::vector<std::size_t> cyc{a};
                std::size_t cur = v;
                while (cur != w) {
                    cyc.push_back(via[cur]);
                    cur = q.arrow(via[cur]).source;
                }
                std::reverse(cyc.begin(), cyc.end());
                d.cycle = std::move(cyc);
            } else if (color[w] == 0) {
                color[w] = 1;
                via[w] = a;
                stack.push_back({w, 0});
            }
        }
    }
    if (!d.cycle.empty()) {
        d.kind = QuiverDiagnostics::Kind::cycle;
        d.message = "oriented cycle:";
        for (auto a : d.cycle) d.message += " " + q.arrow(a).name;
        return d;
    }
    // components of the underlying graph
    std::vector<std::size_t> comp(n, n);
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] != n) continue;
        std::size_t id = d.components.size();
        d.components.push_back({});
        std::deque<std::size_t> queue{s};
        comp[s] = id;
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            d.components[id].push_back(v);
            auto visit = [&](std::size_t w) {
                if (comp[w] == n) {
                    comp[w] = id;
                    queue.push_back(w);
                }
            };
            for (auto a : q.out_arrows(v)) visit(q.arrow(a).target);
            for (auto a : q.in_arrows(v)) visit(q.arrow(a).source);
        }
        std::sort(d.components[id].begin(), d.components[id].end());
    }
    if (d.components.size() > 1) {
        d.kind = QuiverDiagnostics::Kind::disconnected;
        d.message = "quiver is disconnected (" + std::to_string(d.components.size()) + " components)";
        return d;
    }
    d.components.clear();
    return d;
}

inline void require_valid(const Quiver& q)
{
    auto d = validate(q);
    if (!d.ok()) throw InvalidArgument(d.message);
}

/// Oriented path. Arrows are stored in traversal order (first arrow first);
/// the written form reads right to left, so path `c*a` stores {a, c}.
struct Path {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> arrows;

    std::size_t length() const { return arrows.size(); }
    bool is_trivial() const { return arrows.empty(); }

    static Path trivial(std::size_t v) { return {v, v, {}}; }

    /// Builds a path from arrows in traversal order; throws if not composable.
    static Path from_arrows(const Quiver& q, const std::vector<std::size_t>& traversal)
    {
        if (traversal.empty()) throw InvalidArgument("empty arrow sequence");
        Path p{q.arrow(traversal.front()).source, q.arrow(traversal.front()).source, {}};
        for (auto a : traversal) {
            if (q.arrow(a).source != p.target)
                throw InvalidArgument("arrows not composable at '" + q.arrow(a).name + "'");
            p.arrows.push_back(a);
            p.target = q.arrow(a).target;
        }
        return p;
    }

    bool parallel_to(const Path& o) const { return source == o.source && target == o.target; }

    friend bool operator==(const Path& a, const Path& b)
    {
        return a.source == b.source && a.target == b.target && a.arrows == b.arrows;
    }
};

/// `then` after `first` (written `then * first`); throws if not composable.
inline Path concat(const Path& first, const Path& then)
{
    if (first.target != then.source) throw InvalidArgument("paths not composable");
    Path p{first.source, then.target, first.arrows};
    p.arrows.insert(p.arrows.end(), then.arrows.begin(), then.arrows.end());
    return p;
}

/// Global total order on paths: length, source, target, then the written
/// (right-to-left) arrow sequence compared by arrow name.
inline bool path_less(const Path& a, const Path& b)
{
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return a.target < b.target;
    return std::lexicographical_compare(a.arrows.rbegin(), a.arrows.rend(), b.arrows.rbegin(), b.arrows.rend());
}

inline std::string to_string(const Quiver& q, const Path& p)
{
    if (p.is_trivial()) return "e_" + q.vertex_name(p.source);
    std::string s;
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
        if (!s.empty()) s += "*";
        s += q.arrow(*it).name;
    }
    return s;
}

/// All paths from x to y in PathOrder. Requires an acyclic quiver.
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t x, std::size_t y)
{
    if (x >= q.vertex_count() || y >= q.vertex_count()) throw InvalidArgument("unknown vertex");
    std::vector<Path> out;
    std::vector<Path> stack{Path::trivial(x)};
    while (!stack.empty()) {
        Path p = std::move(stack.back());
        stack.pop_back();
        if (p.length() > q.arrow_count()) throw InvalidArgument("quiver has an oriented cycle");
        if (p.target == y) out.push_back(p);
        for (auto a : q.out_arrows(p.target)) {
            Path n = p;
            n.arrows.push_back(a);
            n.target = q.arrow(a).target;
            stack.push_back(std::move(n));
        }
    }
    std::sort(out.begin(), out.end(), path_less);
    return out;
}

/// Every path of the quiver (trivial ones included) in PathOrder.
inline std::vector<Path> all_paths(const Quiver& q)
{
    std::vector<Path> out;
    for (std::size_t x = 0; x < q.vertex_count(); ++x)
        for (std::size_t y = 0; y < q.vertex_count(); ++y) {
            auto ps = enumerate_paths(q, x, y);
            out.insert(out.end(), ps.begin(), ps.end());
        }
    std::sort(out.begin(), out.end(), path_less);
    return out;
}

/// Arrow or formal inverse inside a walk.
struct Step {
    std::size_t arrow = 0;
    int sign = 1;  ///< +1 for the arrow, -1 for its formal inverse
    friend bool operator==(const Step&, const Step&) = default;
};

/// Walk in the double quiver, stored in traversal order.
class Walk {
public:
    Walk() = default;
    explicit Walk(std::size_t vertex) : source_(vertex), target_(vertex) {}

    /// Throws InvalidArgument if consecutive steps do not chain.
    Walk(const Quiver& q, std::size_t source, std::vector<Step> steps) : source_(source), target_(source)
    {
        for (const auto& s : steps) append(q, s);
    }

    static Walk from_path(const Path& p)
    {
        Walk w(p.source);
        w.target_ = p.target;
        for (auto a : p.arrows) w.steps_.push_back({a, 1});
        return w;
    }

    std::size_t source() const { return source_; }
    std::size_t target() const { return target_; }
    const std::vector<Step>& steps() const { return steps_; }
    std::size_t length() const { return steps_.size(); }
    bool is_trivial() const { return steps_.empty(); }

    void append(const Quiver& q, Step s)
    {
        const Arrow& a = q.arrow(s.arrow);
        std::size_t from = s.sign > 0 ? a.source : a.target;
        std::size_t to = s.sign > 0 ? a.target : a.source;
        if (from != target_) throw InvalidArgument("walk not composable at '" + a.name + "'");
        steps_.push_back(s);
        target_ = to;
    }

    Walk inverse() const
    {
        Walk w(target_);
        w.target_ = source_;
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) w.steps_.push_back({it->arrow, -it->sign});
        return w;
    }

    /// `then` after this walk.
    Walk then(const Walk& next) const
    {
        if (next.source_ != target_) throw InvalidArgument("walks not composable");
        Walk w = *this;
        w.steps_.insert(w.steps_.end(), next.steps_.begin(), next.steps_.end());
        w.target_ = next.target_;
        return w;
    }

    friend bool operator==(const Walk& a, const Walk& b)
    {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.steps_ == b.steps_;
    }

    friend Walk reduce_walk(const Walk& w);

private:
    std::size_t source_ = 0;
    std::size_t target_ = 0;
    std::vector<Step> steps_;
};

/// Free reduction: cancels every adjacent pair alpha alpha^-1 / alpha^-1 alpha.
/// Endpoints are unchanged.
inline Walk reduce_walk(const Walk& w)
{
    Walk r(w.source_);
    r.target_ = w.target_;
    for (const auto& s : w.steps_) {
        if (!r.steps_.empty() && r.steps_.back().arrow == s.arrow && r.steps_.back().sign == -s.sign)
            r.steps_.pop_back();
        else
            r.steps_.push_back(s);
    }
    return r;
}

inline std::string to_string(const Quiver& q, const Walk& w)
{
    if (w.is_trivial()) return "e_" + q.vertex_name(w.source());
    std::string s;
    for (auto it = w.steps().rbegin(); it != w.steps().rend(); ++it) {
        if (!s.empty()) s += "*";
        s += q.arrow(it->arrow).name;
        if (it->sign < 0) s += "^-1";
    }
    return s;
}

/// Maximal tree of the underlying graph with the tree walks gamma_x from the base vertex.
struct SpanningTree {
    std::size_t base = 0;
    std::vector<bool> in_tree;   ///< indexed by arrow
    std::vector<Walk> gamma;     ///< reduced tree walk base -> x, indexed by vertex

    bool contains(std::size_t arrow) const { return in_tree.at(arrow); }
    std::vector<std::size_t> arrows() const
    {
        std::vector<std::size_t> out;
        for (std::size_t a = 0; a < in_tree.size(); ++a)
            if (in_tree[a]) out.push_back(a);
        return out;
    }
};

namespace detail {

inline std::vector<Walk> tree_walks(const Quiver& q, std::size_t base, const std::vector<bool>& in_tree)
{
    const std::size_t n = q.vertex_count();
    std::vector<Walk> gamma(n);
    std::vector<bool> seen(n, false);
    gamma[base] = Walk(base);
    seen[base] = true;
    std::deque<std::size_t> queue{base};
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        std::vector<std::size_t> incident = q.out_arrows(v);
        incident.insert(incident.end(), q.in_arrows(v).begin(), q.in_arrows(v).end());
        std::sort(incident.begin(), incident.end());
        for (auto a : incident) {
            if (!in_tree[a]) continue;
            const Arrow& ar = q.arrow(a);
            std::size_t w = ar.source == v ? ar.target : ar.source;
            if (seen[w]) continue;
            seen[w] = true;
            gamma[w] = gamma[v];
            gamma[w].append(q, Step{a, ar.source == v ? 1 : -1});
            queue.push_back(w);
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!seen[v]) throw InvalidArgument("tree does not span vertex '" + q.vertex_name(v) + "'");
    return gamma;
}

}  // namespace detail

/// Deterministic maximal tree: breadth-first from `base` (vertices in queue
/// order, incident arrows by name). A `preferred` arrow set is used instead
/// when given; it must be a spanning tree.
inline SpanningTree spanning_tree(const Quiver& q, std::size_t base,
                                  const std::optional<std::vector<std::size_t>>& preferred = std::nullopt)
{
    const std::size_t n = q.vertex_count();
    if (base >= n) throw InvalidArgument("unknown base vertex");
    SpanningTree t;
    t.base = base;
    t.in_tree.assign(q.arrow_count(), false);
    if (preferred) {
        if (preferred->size() + 1 != n) throw InvalidArgument("preferred arrow set is not a spanning tree (wrong size)");
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto a : *preferred) {
            if (a >= q.arrow_count()) throw InvalidArgument("preferred tree names an unknown arrow");
            if (t.in_tree[a]) throw InvalidArgument("preferred tree repeats an arrow");
            std::size_t r1 = find(q.arrow(a).source), r2 = find(q.arrow(a).target);
            if (r1 == r2) throw InvalidArgument("preferred arrow set is not a spanning tree (cycle through '" + q.arrow(a).name + "')");
            parent[r1] = r2;
            t.in_tree[a] = true;
        }
    } else {
        std::vector<bool> seen(n, false);
        seen[base] = true;
        std::deque<std::size_t> queue{base};
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            std::vector<std::size_t> incident = q.out_arrows(v);
            incident.insert(incident.end(), q.in_arrows(v).begin(), q.in_arrows(v).end());
            std::sort(incident.begin(), incident.end());
            for (auto a : incident) {
                const Arrow& ar = q.arrow(a);
                std::size_t w = ar.source == v ? ar.target : ar.source;
                if (seen[w]) continue;
                seen[w] = true;
                t.in_tree[a] = true;
                queue.push_back(w);
            }
        }
        for (std::size_t v = 0; v < n; ++v)
            if (!seen[v]) throw InvalidArgument("quiver is disconnected");
    }
    t.gamma = detail::tree_walks(q, base, t.in_tree);
    return t;
}

/// Arrow together with a distinct parallel path.
struct Bypass {
    std::size_t arrow = 0;
    Path path;
    friend bool operator==(const Bypass&, const Bypass&) = default;
};

/// All bypasses, ordered by arrow name and then by PathOrder of the path.
inline std::vector<Bypass> enumerate_bypasses(const Quiver& q)
{
    std::vector<Bypass> out;
    for (std::size_t a = 0; a < q.arrow_count(); ++a)
        for (auto& p : enumerate_paths(q, q.arrow(a).source, q.arrow(a).target))
            if (!(p.length() == 1 && p.arrows.front() == a)) out.push_back({a, std::move(p)});
    return out;
}

/// (alpha, u, beta, v): two bypasses with beta an arrow of u.
struct DoubleBypass {
    Bypass outer;
    Bypass inner;
};

inline std::optional<DoubleBypass> has_double_bypass(const Quiver& q)
{
    auto bypasses = enumerate_bypasses(q);
    for (const auto& outer : bypasses)
        for (const auto& inner : bypasses)
            if (std::find(outer.path.arrows.begin(), outer.path.arrows.end(), inner.arrow) != outer.path.arrows.end())
                return DoubleBypass{outer, inner};
    return std::nullopt;
}

}  // namespace boundq
