#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boundq/error.hpp"
#include "boundq/exactla.hpp"
#include "boundq/palg.hpp"

namespace boundq {

/// A = kQ/I on the basis of normal paths (trivial paths first).
class FDAlgebra {
public:
    FDAlgebra() = default;

    explicit FDAlgebra(Ideal I) : ideal_(std::move(I))
    {
        require_admissible(ideal_);
        const PathAlgebra& alg = *ideal_.algebra();
        basis_ = ideal_.normal_paths();
        position_.assign(alg.path_count(), PathAlgebra::npos);
        for (std::size_t i = 0; i < basis_.size(); ++i) position_[basis_[i]] = i;
        const std::size_t n = basis_.size();
        table_.resize(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t k = alg.product(basis_[i], basis_[j]);
                if (k == PathAlgebra::npos) continue;
                Element nf = ideal_.normal_form(Element::path(ideal_.algebra(), k));
                for (const auto& [p, c] : nf.terms()) table_[i * n + j].emplace_back(position_[p], c);
            }
    }

    const Ideal& ideal() const { return ideal_; }
    const PathAlgebraPtr& path_algebra() const { return ideal_.algebra(); }
    const Quiver& quiver() const { return ideal_.algebra()->quiver(); }
    Field field() const { return ideal_.field(); }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<std::size_t>& basis() const { return basis_; }
    std::size_t basis_path(std::size_t i) const { return basis_.at(i); }

    /// Basis position of a normal path, if it is one.
    std::optional<std::size_t> position(std::size_t path) const
    {
        std::size_t p = position_.at(path);
        if (p == PathAlgebra::npos) return std::nullopt;
        return p;
    }

    /// Coordinates of the class of `e`.
    Vector coords(const Element& e) const
    {
        Vector v = zero_vector(field(), dim());
        Element nf = ideal_.normal_form(e);
        for (const auto& [p, c] : nf.terms()) v[position_[p]] = c;
        return v;
    }

    /// Normal-path representative of a coordinate vector.
    Element lift(const Vector& v) const
    {
        Element e(path_algebra());
        for (std::size_t i = 0; i < v.size(); ++i) e.add_term(basis_[i], v[i]);
        return e;
    }

    Vector multiply(const Vector& a, const Vector& b) const
    {
        const std::size_t n = dim();
        Vector r = zero_vector(field(), n);
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (b[j].is_zero()) continue;
                Scalar c = a[i] * b[j];
                for (const auto& [k, s] : table_[i * n + j]) r[k] += c * s;
            }
        }
        return r;
    }

    /// Coordinates of the product of basis elements i and j (written order).
    Vector basis_product(std::size_t i, std::size_t j) const
    {
        Vector r = zero_vector(field(), dim());
        for (const auto& [k, s] : table_[i * dim() + j]) r[k] = s;
        return r;
    }

    Vector unit() const
    {
        Vector u = zero_vector(field(), dim());
        for (std::size_t v = 0; v < quiver().vertex_count(); ++v) u[position_[path_algebra()->trivial(v)]] = Scalar::one(field());
        return u;
    }

private:
    Ideal ideal_;
    std::vector<std::size_t> basis_;
    std::vector<std::size_t> position_;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> table_;
};

/// One derivation coordinate: the coefficient of normal path `path` in d(arrow).
struct DerivationCoord {
    std::size_t arrow = 0;
    std::size_t path = 0;
};

/// Der_0(A), Int_0(A) and HH^1(A) = Der_0/Int_0. Derivations are vectors of
/// arrow-image coordinates; a class is represented by the vector reduced
/// against the echelon basis of Int_0 (its pivot coordinates zeroed).
class HH1Space {
public:
    HH1Space() = default;

    explicit HH1Space(FDAlgebra A) : A_(std::move(A))
    {
        const PathAlgebra& alg = *A_.path_algebra();
        const Quiver& q = A_.quiver();
        const Field f = A_.field();
        for (std::size_t a = 0; a < q.arrow_count(); ++a)
            for (auto p : alg.parallel(q.arrow(a).source, q.arrow(a).target))
                if (A_.position(p)) {
                    coord_index_[{a, p}] = coords_.size();
                    coords_.push_back({a, p});
                }
        const std::size_t C = coords_.size();

        // Leibniz system: NF(d(r)) = 0 for every reduced basis element r
        std::vector<Vector> rows;
        for (const auto& r : A_.ideal().basis()) {
            std::vector<Vector> cols;
            for (std::size_t k = 0; k < C; ++k) cols.push_back(A_.coords(expand(r, k)));
            for (std::size_t p = 0; p < A_.dim(); ++p) {
                Vector row = zero_vector(f, C);
                for (std::size_t k = 0; k < C; ++k) row[k] = cols[k][p];
                if (!is_zero(row)) rows.push_back(std::move(row));
            }
        }
        system_ = Matrix::from_rows(f, rows, C);
        der0_ = nullspace(system_);

        std::vector<Vector> deltas;
        for (std::size_t v = 0; v < q.vertex_count(); ++v) deltas.push_back(inner_derivation(v));
        int0_ = span_basis(f, deltas, C);
        int0_space_ = make_subspace(f, C, int0_);

        std::vector<Vector> reduced;
        for (const auto& d : der0_) reduced.push_back(int0_space_.reduce(d));
        hh1_ = span_basis(f, reduced, C);
        detail::ensure(hh1_.size() + int0_.size() == der0_.size(), "dim HH1 = dim Der0 - dim Int0");
    }

    const FDAlgebra& algebra() const { return A_; }
    Field field() const { return A_.field(); }
    const std::vector<DerivationCoord>& coords() const { return coords_; }
    std::size_t coord_count() const { return coords_.size(); }
    std::optional<std::size_t> coord_index(std::size_t arrow, std::size_t path) const
    {
        auto it = coord_index_.find({arrow, path});
        if (it == coord_index_.end()) return std::nullopt;
        return it->second;
    }

    const Matrix& leibniz_system() const { return system_; }
    const std::vector<Vector>& der0() const { return der0_; }
    const std::vector<Vector>& int0() const { return int0_; }
    /// Canonical representatives of a basis of HH^1, in echelon form.
    const std::vector<Vector>& basis() const { return hh1_; }
    std::size_t dim() const { return hh1_.size(); }

    /// delta_{e_v}: a -> e_v a - a e_v.
    Vector inner_derivation(std::size_t v) const
    {
        const Quiver& q = A_.quiver();
        Vector d = zero_vector(field(), coords_.size());
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            long long w = (q.arrow(a).target == v ? 1 : 0) - (q.arrow(a).source == v ? 1 : 0);
            d[coord_index(a, A_.path_algebra()->arrow_path(a)).value()] = Scalar(field(), w);
        }
        return d;
    }

    bool is_derivation(const Vector& d) const { return is_zero(system_ * d); }

    /// Coordinates from arrow images; each image is taken modulo I and must be parallel to its arrow.
    Vector from_images(const std::map<std::size_t, Element>& images) const
    {
        Vector d = zero_vector(field(), coords_.size());
        for (const auto& [a, img] : images) {
            Element nf = A_.ideal().normal_form(img);
            for (const auto& [p, c] : nf.terms()) {
                auto k = coord_index(a, p);
                if (!k) throw InvalidArgument("derivation image of '" + A_.quiver().arrow(a).name + "' is not parallel to it");
                d[*k] = c;
            }
        }
        return d;
    }

    /// d(arrow) as a normal-path element.
    Element arrow_image(const Vector& d, std::size_t arrow) const
    {
        Element e(A_.path_algebra());
        for (std::size_t k = 0; k < coords_.size(); ++k)
            if (coords_[k].arrow == arrow) e.add_term(coords_[k].path, d[k]);
        return e;
    }

    /// d applied to an element of kQ via the Leibniz rule, reduced modulo I.
    Element apply(const Vector& d, const Element& x) const
    {
        Element r(A_.path_algebra());
        for (std::size_t k = 0; k < coords_.size(); ++k)
            if (!d[k].is_zero()) r += d[k] * expand(x, k);
        return A_.ideal().normal_form(r);
    }

    /// Matrix of d on the A-basis (column j = coordinates of d(b_j)).
    Matrix matrix(const Vector& d) const
    {
        const std::size_t n = A_.dim();
        Matrix m(field(), n, n);
        for (std::size_t j = 0; j < n; ++j) {
            Vector c = A_.coords(apply(d, Element::path(A_.path_algebra(), A_.basis_path(j))));
            for (std::size_t i = 0; i < n; ++i) m(i, j) = c[i];
        }
        return m;
    }

    /// Reads arrow-image coordinates back from a matrix on the A-basis.
    Vector from_matrix(const Matrix& m) const
    {
        Vector d = zero_vector(field(), coords_.size());
        for (std::size_t k = 0; k < coords_.size(); ++k)
            d[k] = m(A_.position(coords_[k].path).value(), A_.position(A_.path_algebra()->arrow_path(coords_[k].arrow)).value());
        return d;
    }

    /// Canonical representative of the class of d; throws if d is not a derivation.
    Vector class_of(const Vector& d) const
    {
        if (d.size() != coords_.size()) throw InvalidArgument("derivation vector has the wrong length");
        if (!is_derivation(d)) throw InvalidArgument("vector violates the Leibniz system");
        return int0_space_.reduce(d);
    }

    bool is_inner(const Vector& d) const { return is_zero(class_of(d)); }

    /// [f, g] = f g - g f as a class.
    Vector bracket(const Vector& f, const Vector& g) const
    {
        Matrix mf = matrix(f), mg = matrix(g);
        Matrix c = mf * mg - mg * mf;
        Vector d = from_matrix(c);
        detail::ensure(is_derivation(d), "commutator of derivations is a derivation");
        return class_of(d);
    }

    /// Coordinates of a class in basis(); throws if v is not a canonical vector.
    Vector class_coordinates(const Vector& cls) const
    {
        const std::size_t m = hh1_.size();
        // the basis is in reduced echelon form, so x_i is read off at pivot i
        Vector x = zero_vector(field(), m);
        Vector rest = cls;
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t p = 0;
            while (hh1_[i][p].is_zero()) ++p;
            x[i] = rest[p];
            for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= x[i] * hh1_[i][k];
        }
        if (!is_zero(rest)) throw InvalidArgument("vector is not a canonical class representative");
        return x;
    }

    /// Every Leibniz identity d(b_i b_j) = b_i d(b_j) + d(b_i) b_j on basis pairs.
    bool satisfies_leibniz(const Vector& d) const
    {
        const std::size_t n = A_.dim();
        Matrix m = matrix(d);
        auto col = [&](std::size_t j) { return m.column(j); };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Vector e_i = zero_vector(field(), n), e_j = zero_vector(field(), n);
                e_i[i] = Scalar::one(field());
                e_j[j] = Scalar::one(field());
                Vector lhs = m * A_.basis_product(i, j);
                Vector rhs = A_.multiply(e_i, col(j));
                Vector rhs2 = A_.multiply(col(i), e_j);
                for (std::size_t k = 0; k < n; ++k) rhs[k] += rhs2[k];
                if (lhs != rhs) return false;
            }
        return true;
    }

    std::string to_string(const Vector& d) const
    {
        std::string s;
        for (std::size_t a = 0; a < A_.quiver().arrow_count(); ++a) {
            Element img = arrow_image(d, a);
            if (img.is_zero()) continue;
            if (!s.empty()) s += ", ";
            s += A_.quiver().arrow(a).name + " -> " + img.to_string();
        }
        return s.empty() ? "0" : s;
    }

private:
    /// Leibniz expansion of x for the unit derivation supported on coordinate k.
    Element expand(const Element& x, std::size_t k) const
    {
        const PathAlgebraPtr& alg = A_.path_algebra();
        const auto& [arrow, image] = coords_[k];
        Element r(alg);
        for (const auto& [p, c] : x.terms()) {
            const Path& path = alg->path(p);
            for (std::size_t i = 0; i < path.length(); ++i) {
                if (path.arrows[i] != arrow) continue;
                Path before{path.source, alg->quiver().arrow(arrow).source, {path.arrows.begin(), path.arrows.begin() + static_cast<std::ptrdiff_t>(i)}};
                Path after{alg->quiver().arrow(arrow).target, path.target, {path.arrows.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.arrows.end()}};
                std::size_t m = alg->product(image, alg->index_of(before));
                m = alg->product(alg->index_of(after), m);
                r.add_term(m, c);
            }
        }
        return r;
    }

    FDAlgebra A_;
    std::vector<DerivationCoord> coords_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> coord_index_;
    Matrix system_;
    std::vector<Vector> der0_;
    std::vector<Vector> int0_;
    Subspace int0_space_;
    std::vector<Vector> hh1_;
};

}  // namespace boundq
