#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boundq/error.hpp"
#include "boundq/exactla.hpp"
#include "boundq/quiver.hpp"

namespace boundq {

/// The path algebra kQ of a finite acyclic quiver: every path indexed by its
/// rank in PathOrder, plus the concatenation table. Immutable; shared by the
/// elements, ideals and automorphisms built on it.
class PathAlgebra {
public:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    PathAlgebra(Quiver q, Field f) : quiver_(std::move(q)), field_(f)
    {
        require_valid(quiver_);
        paths_ = all_paths(quiver_);
        for (std::size_t i = 0; i < paths_.size(); ++i) index_[key(paths_[i])] = i;
        const std::size_t N = paths_.size();
        product_.assign(N * N, npos);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                if (paths_[j].target == paths_[i].source) product_[i * N + j] = index_.at(key(concat(paths_[j], paths_[i])));
        trivial_.resize(quiver_.vertex_count());
        for (std::size_t v = 0; v < quiver_.vertex_count(); ++v) trivial_[v] = index_.at(key(Path::trivial(v)));
        arrow_path_.resize(quiver_.arrow_count());
        for (std::size_t a = 0; a < quiver_.arrow_count(); ++a)
            arrow_path_[a] = index_.at(key(Path::from_arrows(quiver_, {a})));
    }

    static std::shared_ptr<const PathAlgebra> make(Quiver q, Field f)
    {
        return std::make_shared<const PathAlgebra>(std::move(q), f);
    }

    const Quiver& quiver() const { return quiver_; }
    Field field() const { return field_; }
    std::size_t path_count() const { return paths_.size(); }
    const Path& path(std::size_t i) const { return paths_.at(i); }
    const std::vector<Path>& paths() const { return paths_; }

    std::optional<std::size_t> find(const Path& p) const
    {
        auto it = index_.find(key(p));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t index_of(const Path& p) const
    {
        auto i = find(p);
        if (!i) throw InvalidArgument("path not in quiver");
        return *i;
    }
    std::size_t trivial(std::size_t v) const { return trivial_.at(v); }
    std::size_t arrow_path(std::size_t a) const { return arrow_path_.at(a); }

    /// Index of the written product path(left) * path(right) (right first), or npos.
    std::size_t product(std::size_t left, std::size_t right) const { return product_[left * paths_.size() + right]; }

    /// Indices of paths parallel to (source, target), in PathOrder.
    std::vector<std::size_t> parallel(std::size_t source, std::size_t target) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < paths_.size(); ++i)
            if (paths_[i].source == source && paths_[i].target == target) out.push_back(i);
        return out;
    }

    std::string path_name(std::size_t i) const { return to_string(quiver_, paths_.at(i)); }

private:
    using Key = std::pair<std::size_t, std::vector<std::size_t>>;
    static Key key(const Path& p) { return {p.source, p.arrows}; }

    Quiver quiver_;
    Field field_;
    std::vector<Path> paths_;
    std::map<Key, std::size_t> index_;
    std::vector<std::size_t> product_;
    std::vector<std::size_t> trivial_;
    std::vector<std::size_t> arrow_path_;
};

using PathAlgebraPtr = std::shared_ptr<const PathAlgebra>;

/// Finitely supported linear combination of paths; zero coefficients are never stored.
class Element {
public:
    Element() = default;
    explicit Element(PathAlgebraPtr alg) : alg_(std::move(alg)) {}

    static Element path(const PathAlgebraPtr& alg, std::size_t idx, const Scalar& c)
    {
        Element e(alg);
        e.add_term(idx, c);
        return e;
    }
    static Element path(const PathAlgebraPtr& alg, std::size_t idx) { return path(alg, idx, Scalar::one(alg->field())); }
    static Element arrow(const PathAlgebraPtr& alg, std::size_t a) { return path(alg, alg->arrow_path(a)); }

    static Element from_vector(const PathAlgebraPtr& alg, const Vector& v)
    {
        Element e(alg);
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) e.terms_.emplace(i, v[i]);
        return e;
    }

    const PathAlgebraPtr& algebra() const { return alg_; }
    Field field() const { return alg_->field(); }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::size_t, Scalar>& terms() const { return terms_; }

    Scalar coefficient(std::size_t idx) const
    {
        auto it = terms_.find(idx);
        return it == terms_.end() ? Scalar::zero(field()) : it->second;
    }

    std::vector<std::size_t> support() const
    {
        std::vector<std::size_t> s;
        for (const auto& [i, c] : terms_) s.push_back(i);
        return s;
    }

    Vector to_vector() const
    {
        Vector v = zero_vector(field(), alg_->path_count());
        for (const auto& [i, c] : terms_) v[i] = c;
        return v;
    }

    void add_term(std::size_t idx, const Scalar& c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Element& operator+=(const Element& o)
    {
        check(o);
        for (const auto& [i, c] : o.terms_) add_term(i, c);
        return *this;
    }
    Element& operator-=(const Element& o)
    {
        check(o);
        for (const auto& [i, c] : o.terms_) add_term(i, -c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Scalar& s, const Element& e)
    {
        Element r(e.alg_);
        if (s.is_zero()) return r;
        for (const auto& [i, c] : e.terms_) r.terms_.emplace(i, s * c);
        return r;
    }
    Element operator-() const { return Scalar(field(), -1) * *this; }

    /// Bilinear concatenation product, written order: (a*b) applies b first.
    friend Element operator*(const Element& a, const Element& b)
    {
        a.check(b);
        Element r(a.alg_);
        for (const auto& [i, x] : a.terms_)
            for (const auto& [j, y] : b.terms_) {
                std::size_t k = a.alg_->product(i, j);
                if (k != PathAlgebra::npos) r.add_term(k, x * y);
            }
        return r;
    }

    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [i, c] = *it;
            std::string coeff = c.to_string();
            bool neg = !coeff.empty() && coeff.front() == '-';
            if (neg) coeff.erase(0, 1);
            if (s.empty())
                s += neg ? "-" : "";
            else
                s += neg ? " - " : " + ";
            if (coeff != "1") s += coeff + "*";
            s += alg_->path_name(i);
        }
        return s;
    }

private:
    void check(const Element& o) const
    {
        if (alg_ == o.alg_) return;
        if (!(alg_->field() == o.alg_->field())) throw FieldMismatch(alg_->field().name() + " vs " + o.alg_->field().name());
        if (!(alg_->quiver() == o.alg_->quiver())) throw InvalidArgument("elements of different path algebras");
    }

    PathAlgebraPtr alg_;
    std::map<std::size_t, Scalar> terms_;
};

/// Smallest subspace containing `gens` and closed under left and right
/// multiplication by trivial paths and arrows, i.e. the two-sided ideal they
/// generate, as a row-reduced basis over path coordinates.
inline Subspace ideal_closure(const PathAlgebraPtr& alg, const std::vector<Element>& gens)
{
    const std::size_t N = alg->path_count();
    Subspace span(alg->field(), N);
    std::vector<std::size_t> multipliers;
    for (std::size_t v = 0; v < alg->quiver().vertex_count(); ++v) multipliers.push_back(alg->trivial(v));
    for (std::size_t a = 0; a < alg->quiver().arrow_count(); ++a) multipliers.push_back(alg->arrow_path(a));

    std::deque<Element> queue(gens.begin(), gens.end());
    while (!queue.empty()) {
        Element e = std::move(queue.front());
        queue.pop_front();
        if (e.is_zero() || !span.insert(e.to_vector())) continue;
        for (auto m : multipliers) {
            Element me = Element::path(alg, m);
            Element l = me * e, r = e * me;
            if (!l.is_zero()) queue.push_back(std::move(l));
            if (!r.is_zero()) queue.push_back(std::move(r));
        }
    }
    return span;
}

/// Two-sided ideal of kQ with its reduced basis (r_1, ..., r_t):
///   (i)   r_j = u_{i_j} + combination of smaller paths,
///   (ii)  the pivot coefficient u_{i_j}^*(r_{j'}) vanishes unless j = j',
///   (iii) pivots strictly increase.
/// The basis spans the whole ideal as a vector space (kQ is finite dimensional).
class Ideal {
public:
    Ideal() = default;

    const PathAlgebraPtr& algebra() const { return alg_; }
    Field field() const { return alg_->field(); }
    const std::vector<Element>& generators() const { return generators_; }
    const std::vector<Element>& basis() const { return gb_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    const std::vector<std::size_t>& normal_paths() const { return normal_; }
    std::size_t dim() const { return gb_.size(); }
    bool is_pivot(std::size_t path) const { return pivot_row_.at(path) != PathAlgebra::npos; }

    /// Unique representative of a + I supported on normal paths.
    Element normal_form(const Element& a) const
    {
        Element r = a;
        for (std::size_t j = gb_.size(); j-- > 0;) {
            Scalar c = r.coefficient(pivots_[j]);
            if (!c.is_zero()) r -= c * gb_[j];
        }
        return r;
    }

    bool contains(const Element& a) const { return normal_form(a).is_zero(); }

    friend bool operator==(const Ideal& a, const Ideal& b) { return a.pivots_ == b.pivots_ && a.gb_ == b.gb_; }

    friend Ideal groebner_basis(const PathAlgebraPtr& alg, const std::vector<Element>& gens);

private:
    PathAlgebraPtr alg_;
    std::vector<Element> generators_;
    std::vector<Element> gb_;
    std::vector<std::size_t> pivots_;
    std::vector<std::size_t> normal_;
    std::vector<std::size_t> pivot_row_;
};

/// Reduced basis of the ideal generated by `gens`: the ideal closure brought to
/// reduced echelon form with each pivot the greatest path of its row.
inline Ideal groebner_basis(const PathAlgebraPtr& alg, const std::vector<Element>& gens)
{
    const std::size_t N = alg->path_count();
    const Field f = alg->field();
    Subspace span = ideal_closure(alg, gens);

    // columns in descending PathOrder so that row pivots are greatest paths
    std::vector<Vector> reversed;
    for (const auto& v : span.basis()) reversed.emplace_back(v.rbegin(), v.rend());
    Ideal I;
    I.alg_ = alg;
    I.generators_ = gens;
    I.pivot_row_.assign(N, PathAlgebra::npos);
    if (!reversed.empty()) {
        auto [red, piv] = rref(Matrix::from_rows(f, reversed, N));
        std::vector<std::pair<std::size_t, Element>> rows;
        for (std::size_t i = 0; i < red.rows(); ++i) {
            Vector v = red.row_vector(i);
            std::reverse(v.begin(), v.end());
            rows.emplace_back(N - 1 - piv[i], Element::from_vector(alg, v));
        }
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& [p, e] : rows) {
            I.pivot_row_[p] = I.gb_.size();
            I.pivots_.push_back(p);
            I.gb_.push_back(std::move(e));
        }
    }
    for (std::size_t i = 0; i < N; ++i)
        if (I.pivot_row_[i] == PathAlgebra::npos) I.normal_.push_back(i);
    return I;
}

inline Ideal zero_ideal(const PathAlgebraPtr& alg) { return groebner_basis(alg, {}); }

/// Ideal generated by all paths of length >= n.
inline Ideal power_of_arrow_ideal(const PathAlgebraPtr& alg, std::size_t n)
{
    std::vector<Element> gens;
    for (std::size_t i = 0; i < alg->path_count(); ++i)
        if (alg->path(i).length() == n) gens.push_back(Element::path(alg, i));
    return groebner_basis(alg, gens);
}

struct AdmissibilityReport {
    bool admissible = true;
    std::vector<std::size_t> short_paths;  ///< support paths of length < 2
    std::string message;
};

/// True iff every basis element is supported on paths of length >= 2. The
/// inclusion of a power of the arrow ideal holds automatically for acyclic quivers.
inline AdmissibilityReport is_admissible(const Ideal& I)
{
    AdmissibilityReport r;
    for (const auto& g : I.basis())
        for (const auto& [p, c] : g.terms())
            if (I.algebra()->path(p).length() < 2 &&
                std::find(r.short_paths.begin(), r.short_paths.end(), p) == r.short_paths.end())
                r.short_paths.push_back(p);
    if (!r.short_paths.empty()) {
        r.admissible = false;
        r.message = "ideal contains a relation involving path(s) of length < 2:";
        for (auto p : r.short_paths) r.message += " " + I.algebra()->path_name(p);
    }
    return r;
}

inline void require_admissible(const Ideal& I)
{
    auto r = is_admissible(I);
    if (!r.admissible) throw InvalidArgument(r.message);
}

/// True iff every basis element has singleton support.
inline bool is_monomial(const Ideal& I)
{
    for (const auto& g : I.basis())
        if (g.terms().size() != 1) return false;
    return true;
}

/// Matrix inverse over a field; throws if singular.
inline Matrix inverse_matrix(const Matrix& m)
{
    if (!m.square()) throw InvalidArgument("inverse of non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(m.field(), n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
            aug(i, n + j) = i == j ? Scalar::one(m.field()) : Scalar::zero(m.field());
        }
    auto [red, piv] = rref(aug);
    if (n > 0 && (piv.size() < n || piv[n - 1] != n - 1)) throw InvalidArgument("singular matrix");
    Matrix inv(m.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = red(i, n + j);
    return inv;
}

/// Automorphism of kQ fixing every trivial path, given by arrow images. Each
/// image is supported on paths parallel to its arrow and the arrow-level
/// (length one) coefficient matrix is invertible.
class Automorphism {
public:
    Automorphism() = default;

    static Automorphism identity(const PathAlgebraPtr& alg)
    {
        std::vector<Element> images;
        for (std::size_t a = 0; a < alg->quiver().arrow_count(); ++a) images.push_back(Element::arrow(alg, a));
        return Automorphism(alg, std::move(images));
    }

    /// Validates and builds from per-arrow images (indexed by arrow).
    static Automorphism from_images(const PathAlgebraPtr& alg, std::vector<Element> images)
    {
        const Quiver& q = alg->quiver();
        if (images.size() != q.arrow_count()) throw InvalidArgument("automorphism needs one image per arrow");
        for (std::size_t a = 0; a < q.arrow_count(); ++a)
            for (const auto& [p, c] : images[a].terms()) {
                const Path& path = alg->path(p);
                if (path.source != q.arrow(a).source || path.target != q.arrow(a).target)
                    throw InvalidArgument("image of arrow '" + q.arrow(a).name + "' is not parallel to it");
            }
        Automorphism phi(alg, std::move(images));
        for (const auto& block : phi.arrow_blocks())
            if (rank(phi.linear_block(block)) != block.size())
                throw InvalidArgument("non-invertible length-1 part");
        return phi;
    }

    /// alpha -> alpha + tau * u, other arrows fixed. (alpha, u) must be a bypass.
    static Automorphism transvection(const PathAlgebraPtr& alg, std::size_t alpha, const Path& u, const Scalar& tau)
    {
        const Arrow& a = alg->quiver().arrow(alpha);
        if (u.source != a.source || u.target != a.target) throw InvalidArgument("transvection path is not parallel to its arrow");
        if (u.length() == 1 && u.arrows.front() == alpha) throw InvalidArgument("transvection path equals its arrow");
        auto images = identity(alg).images_;
        images[alpha] += Element::path(alg, alg->index_of(u), tau);
        return from_images(alg, std::move(images));
    }

    /// alpha -> w_alpha * alpha with every weight nonzero.
    static Automorphism dilatation(const PathAlgebraPtr& alg, const std::vector<Scalar>& weights)
    {
        if (weights.size() != alg->quiver().arrow_count()) throw InvalidArgument("dilatation needs one weight per arrow");
        std::vector<Element> images;
        for (std::size_t a = 0; a < weights.size(); ++a) {
            if (weights[a].is_zero()) throw InvalidArgument("zero dilatation weight");
            images.push_back(Element::path(alg, alg->arrow_path(a), weights[a]));
        }
        return from_images(alg, std::move(images));
    }

    const PathAlgebraPtr& algebra() const { return alg_; }
    const Element& image(std::size_t arrow) const { return images_.at(arrow); }
    const std::vector<Element>& images() const { return images_; }

    /// Image of the path with index `p`.
    const Element& image_of_path(std::size_t p) const { return path_images_.at(p); }

    Element apply(const Element& x) const
    {
        Element r(alg_);
        for (const auto& [p, c] : x.terms()) r += c * path_images_[p];
        return r;
    }

    bool is_identity() const
    {
        for (std::size_t a = 0; a < images_.size(); ++a)
            if (!(images_[a] == Element::arrow(alg_, a))) return false;
        return true;
    }

    /// True iff every arrow image lies in k.alpha.
    bool is_dilatation() const
    {
        for (std::size_t a = 0; a < images_.size(); ++a)
            if (images_[a].terms().size() != 1 || images_[a].terms().begin()->first != alg_->arrow_path(a)) return false;
        return true;
    }

    /// (this o other)(x) = this(other(x)).
    Automorphism compose(const Automorphism& other) const
    {
        std::vector<Element> images;
        for (const auto& img : other.images_) images.push_back(apply(img));
        return Automorphism(alg_, std::move(images));
    }

    /// Inverse by length filtration: start from the inverse of the arrow-level
    /// part and correct the error term, whose lowest length strictly grows.
    Automorphism inverse() const
    {
        const Quiver& q = alg_->quiver();
        std::vector<Element> lin_inv(q.arrow_count(), Element(alg_));
        for (const auto& block : arrow_blocks()) {
            Matrix m = linear_block(block);
            Matrix inv = inverse_matrix(m);
            for (std::size_t l = 0; l < block.size(); ++l)
                for (std::size_t k = 0; k < block.size(); ++k)
                    lin_inv[block[l]].add_term(alg_->arrow_path(block[k]), inv(k, l));
        }
        Automorphism lambda(alg_, lin_inv);
        std::vector<Element> psi = lin_inv;
        std::size_t max_len = 0;
        for (const auto& p : alg_->paths()) max_len = std::max(max_len, p.length());
        for (std::size_t iter = 0; iter <= max_len + 1; ++iter) {
            Automorphism cand(alg_, psi);
            bool done = true;
            for (std::size_t a = 0; a < q.arrow_count(); ++a) {
                Element err = apply(psi[a]) - Element::arrow(alg_, a);
                if (err.is_zero()) continue;
                done = false;
                psi[a] -= lambda.apply(err);
            }
            if (done) return cand;
        }
        throw InvariantViolation("automorphism inversion did not converge");
    }

    friend bool operator==(const Automorphism& a, const Automorphism& b) { return a.images_ == b.images_; }

    std::string to_string() const
    {
        std::string s;
        for (std::size_t a = 0; a < images_.size(); ++a) {
            if (images_[a] == Element::arrow(alg_, a)) continue;
            if (!s.empty()) s += ", ";
            s += alg_->quiver().arrow(a).name + " -> " + images_[a].to_string();
        }
        return s.empty() ? "id" : s;
    }

private:
    Automorphism(PathAlgebraPtr alg, std::vector<Element> images) : alg_(std::move(alg)), images_(std::move(images))
    {
        const std::size_t N = alg_->path_count();
        path_images_.assign(N, Element(alg_));
        // PathOrder lists shorter paths first, so prefixes are ready when needed
        for (std::size_t i = 0; i < N; ++i) {
            const Path& p = alg_->path(i);
            if (p.is_trivial()) {
                path_images_[i] = Element::path(alg_, i);
                continue;
            }
            std::size_t last = p.arrows.back();
            if (p.length() == 1) {
                path_images_[i] = images_[last];
                continue;
            }
            Path prefix{p.source, alg_->quiver().arrow(last).source, {p.arrows.begin(), p.arrows.end() - 1}};
            path_images_[i] = images_[last] * path_images_[alg_->index_of(prefix)];
        }
    }

    /// Arrows grouped by (source, target), each group in name order.
    std::vector<std::vector<std::size_t>> arrow_blocks() const
    {
        const Quiver& q = alg_->quiver();
        std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> groups;
        for (std::size_t a = 0; a < q.arrow_count(); ++a) groups[{q.arrow(a).source, q.arrow(a).target}].push_back(a);
        std::vector<std::vector<std::size_t>> out;
        for (auto& [k, v] : groups) out.push_back(std::move(v));
        return out;
    }

    /// m(k, l) = coefficient of arrow block[k] in the image of arrow block[l].
    Matrix linear_block(const std::vector<std::size_t>& block) const
    {
        Matrix m(alg_->field(), block.size(), block.size());
        for (std::size_t k = 0; k < block.size(); ++k)
            for (std::size_t l = 0; l < block.size(); ++l) m(k, l) = images_[block[l]].coefficient(alg_->arrow_path(block[k]));
        return m;
    }

    PathAlgebraPtr alg_;
    std::vector<Element> images_;
    std::vector<Element> path_images_;
};

/// phi(I): reduced basis of the ideal generated by the images of the basis of I.
inline Ideal apply_to_ideal(const Automorphism& phi, const Ideal& I)
{
    std::vector<Element> gens;
    for (const auto& r : I.basis()) gens.push_back(phi.apply(r));
    return groebner_basis(I.algebra(), gens);
}

}  // namespace boundq
