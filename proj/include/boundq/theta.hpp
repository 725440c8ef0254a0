#pragma once

#include <algorithm>
#include <cstddef>
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

namespace boundq {

/// Presentation nu = nu_0 o chi of A = kQ/I_0, where nu_0 is the natural
/// projection. Its kernel is chi^-1(I_0) and nu(alpha) = class of chi(alpha).
class Presentation {
public:
    Presentation() = default;

    Presentation(const Ideal& reference, Automorphism chi)
        : chi_(std::move(chi)), chi_inv_(chi_.inverse()), kernel_(apply_to_ideal(chi_inv_, reference))
    {
        require_admissible(kernel_);
    }

    static Presentation natural(const Ideal& reference)
    {
        return Presentation(reference, Automorphism::identity(reference.algebra()));
    }

    const Automorphism& chi() const { return chi_; }
    const Automorphism& chi_inverse() const { return chi_inv_; }
    const Ideal& kernel() const { return kernel_; }

    /// nu(x) as an element of kQ (reduce modulo I_0 for the normal form).
    Element image(const Element& x) const { return chi_.apply(x); }

    /// nu o psi for an automorphism psi of kQ.
    Presentation compose(const Ideal& reference, const Automorphism& psi) const { return Presentation(reference, chi_.compose(psi)); }

private:
    Automorphism chi_;
    Automorphism chi_inv_;
    Ideal kernel_;
};

/// Class of the derivation nu(u) -> f([gamma_y^-1 u gamma_x]) nu(u), where f is
/// the character given by arrow weights t (constant on the homotopy pairs of
/// the kernel).
inline Vector theta(const HH1Space& H, const Presentation& nu, const Vector& t, const SpanningTree& tree)
{
    const FDAlgebra& A = H.algebra();
    const PathAlgebraPtr& alg = A.path_algebra();
    const Quiver& q = A.quiver();
    const Field f = A.field();
    if (t.size() != q.arrow_count()) throw InvalidArgument("character needs one weight per arrow");
    if (!satisfies_pairs(*alg, t, homotopy_pairs(nu.kernel()))) throw InvalidArgument("weights violate the homotopy pair equations");

    // weight of a path u: x -> y is t_u - t(gamma_y) + t(gamma_x)
    auto weight = [&](std::size_t p) {
        const Path& u = alg->path(p);
        return path_weight(*alg, t, p) - walk_weight(f, t, tree.gamma[u.target]) + walk_weight(f, t, tree.gamma[u.source]);
    };
    // d(alpha-bar) = d(nu(chi^-1(alpha))) = sum_w c_w weight(w) nu(w)
    std::map<std::size_t, Element> images;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        Element pre = nu.chi_inverse().image(a);
        Element img(alg);
        for (const auto& [w, c] : pre.terms()) img += (c * weight(w)) * nu.chi().image_of_path(w);
        images.emplace(a, std::move(img));
    }
    Vector d = H.from_images(images);
    detail::ensure(H.is_derivation(d), "theta produces a derivation");
    return H.class_of(d);
}

struct ThetaImage {
    SpanningTree tree;
    HomSpace hom;
    std::vector<Vector> classes;  ///< theta of each hom basis vector
    std::vector<Vector> basis;    ///< echelon basis of the image
    std::size_t dim() const { return basis.size(); }
};

inline ThetaImage image_theta(const HH1Space& H, const Presentation& nu, const SpanningTree& tree)
{
    ThetaImage im;
    im.tree = tree;
    im.hom = hom_space(nu.kernel(), tree);
    for (const auto& t : im.hom.basis) im.classes.push_back(theta(H, nu, t, tree));
    im.basis = span_basis(H.field(), im.classes, H.coord_count());
    detail::ensure(im.basis.size() == im.hom.dim(), "theta is injective");
    return im;
}

inline ThetaImage image_theta(const HH1Space& H, const Presentation& nu)
{
    return image_theta(H, nu, spanning_tree(H.algebra().quiver(), 0));
}

/// Nontrivial normal paths grouped by (source, target), as A-basis positions.
inline std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> radical_blocks(const FDAlgebra& A)
{
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        const Path& p = A.path_algebra()->path(A.basis_path(i));
        if (!p.is_trivial()) blocks[{p.source, p.target}].push_back(i);
    }
    return blocks;
}

inline Matrix restrict_block(const Matrix& m, const std::vector<std::size_t>& block)
{
    Matrix r(m.field(), block.size(), block.size());
    for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = 0; j < block.size(); ++j) r(i, j) = m(block[i], block[j]);
    return r;
}

struct DiagonalizabilityReport {
    bool diagonalizable = true;
    std::size_t source = 0;  ///< witness block e_target r e_source
    std::size_t target = 0;
    std::optional<Polynomial> minimal_polynomial;
    std::string reason;
};

/// True iff the canonical representative acts on every block e_j r e_i with a
/// minimal polynomial that splits over k into distinct linear factors.
inline DiagonalizabilityReport is_diagonalizable_class(const HH1Space& H, const Vector& cls)
{
    DiagonalizabilityReport r;
    Matrix m = H.matrix(cls);
    for (const auto& [key, block] : radical_blocks(H.algebra())) {
        Polynomial mp = minimal_polynomial(restrict_block(m, block));
        if (splits_squarefree(mp)) continue;
        r.diagonalizable = false;
        r.source = key.first;
        r.target = key.second;
        r.minimal_polynomial = mp;
        const Quiver& q = H.algebra().quiver();
        r.reason = "block " + q.vertex_name(key.first) + " -> " + q.vertex_name(key.second) + " has minimal polynomial " + mp.to_string();
        return r;
    }
    return r;
}

struct SetDiagonalizability {
    bool diagonalizable = true;
    std::string reason;
};

inline SetDiagonalizability is_diagonalizable_set(const HH1Space& H, const std::vector<Vector>& classes)
{
    for (std::size_t i = 0; i < classes.size(); ++i) {
        auto r = is_diagonalizable_class(H, classes[i]);
        if (!r.diagonalizable) return {false, "element " + std::to_string(i) + " is not diagonalizable: " + r.reason};
    }
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j)
            if (!is_zero(H.bracket(classes[i], classes[j])))
                return {false, "elements " + std::to_string(i) + " and " + std::to_string(j) + " do not commute"};
    return {};
}

/// Basis of A made of the idempotents and, for each block e_j r e_i, vectors
/// (A-coordinates) spanning that block.
struct SpecialBasis {
    struct Block {
        std::size_t source = 0;
        std::size_t target = 0;
        std::vector<Vector> vectors;
    };
    std::vector<Block> blocks;

    std::vector<Vector> all(const FDAlgebra& A) const
    {
        std::vector<Vector> out;
        for (std::size_t v = 0; v < A.quiver().vertex_count(); ++v) {
            Vector e = zero_vector(A.field(), A.dim());
            e[A.position(A.path_algebra()->trivial(v)).value()] = Scalar::one(A.field());
            out.push_back(std::move(e));
        }
        for (const auto& b : blocks) out.insert(out.end(), b.vectors.begin(), b.vectors.end());
        return out;
    }
};

/// Eigenvalue of m on v, or nullopt if v is not an eigenvector.
inline std::optional<Scalar> eigenvalue(const Matrix& m, const Vector& v)
{
    Vector mv = m * v;
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return std::nullopt;
    Scalar lambda = mv[p] / v[p];
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!(mv[i] == lambda * v[i])) return std::nullopt;
    return lambda;
}

/// True iff every class is diagonal with respect to the basis.
inline bool is_diagonal_in(const HH1Space& H, const std::vector<Vector>& classes, const SpecialBasis& B)
{
    auto vectors = B.all(H.algebra());
    if (rank(Matrix::from_rows(H.field(), vectors, H.algebra().dim())) != H.algebra().dim()) return false;
    for (const auto& c : classes) {
        Matrix m = H.matrix(c);
        for (const auto& v : vectors)
            if (!eigenvalue(m, v)) return false;
    }
    return true;
}

/// Simultaneous eigenbasis by eigenspace refinement inside each block. Each
/// eigenspace basis is echelonized with arrow coordinates first.
inline SpecialBasis common_eigenbasis(const HH1Space& H, const std::vector<Vector>& classes)
{
    auto check = is_diagonalizable_set(H, classes);
    if (!check.diagonalizable) throw InvalidArgument("set is not diagonalizable: " + check.reason);
    const FDAlgebra& A = H.algebra();
    const Field f = A.field();
    std::vector<Matrix> mats;
    for (const auto& c : classes) mats.push_back(H.matrix(c));

    SpecialBasis B;
    for (const auto& [key, block] : radical_blocks(A)) {
        const std::size_t n = block.size();
        // pieces: subspaces of the block given by basis vectors in block coordinates
        std::vector<std::vector<Vector>> pieces;
        {
            std::vector<Vector> whole;
            for (std::size_t i = 0; i < n; ++i) {
                Vector e = zero_vector(f, n);
                e[i] = Scalar::one(f);
                whole.push_back(std::move(e));
            }
            pieces.push_back(std::move(whole));
        }
        for (const auto& M : mats) {
            Matrix mb = restrict_block(M, block);
            auto roots = roots_over_field(minimal_polynomial(mb));
            std::vector<std::vector<Vector>> next;
            for (const auto& piece : pieces) {
                Matrix S = Matrix::from_rows(f, piece, n).transpose();  // n x dim(piece)
                std::size_t found = 0;
                std::vector<Scalar> seen;
                for (const auto& lambda : roots.roots) {
                    if (std::find(seen.begin(), seen.end(), lambda) != seen.end()) continue;
                    seen.push_back(lambda);
                    Matrix shifted = mb - lambda * Matrix::identity(f, n);
                    auto coeffs = nullspace(shifted * S);
                    if (coeffs.empty()) continue;
                    std::vector<Vector> sub;
                    for (const auto& x : coeffs) sub.push_back(S * x);
                    found += sub.size();
                    next.push_back(span_basis(f, sub, n));
                }
                detail::ensure(found == piece.size(), "commuting diagonalizable maps split every joint eigenspace");
            }
            pieces = std::move(next);
        }
        SpecialBasis::Block b{key.first, key.second, {}};
        for (const auto& piece : pieces)
            for (const auto& v : piece) {
                Vector full = zero_vector(f, A.dim());
                for (std::size_t i = 0; i < n; ++i) full[block[i]] = v[i];
                b.vectors.push_back(std::move(full));
            }
        B.blocks.push_back(std::move(b));
    }
    detail::ensure(is_diagonal_in(H, classes, B), "common eigenbasis diagonalizes every class");
    return B;
}

/// Presentation adapted to B: every arrow is sent to an element of B. Within a
/// class of parallel arrows, B-elements are taken in order while their arrow
/// components stay independent, then matched to arrows by the first
/// permutation with nonzero diagonal coefficients.
inline Presentation adapted_presentation(const HH1Space& H, const SpecialBasis& B)
{
    const FDAlgebra& A = H.algebra();
    const PathAlgebraPtr& alg = A.path_algebra();
    const Quiver& q = A.quiver();
    const Field f = A.field();
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> arrow_classes;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) arrow_classes[{q.arrow(a).source, q.arrow(a).target}].push_back(a);

    std::vector<Element> images(q.arrow_count(), Element(alg));
    for (const auto& [key, arrows] : arrow_classes) {
        const SpecialBasis::Block* block = nullptr;
        for (const auto& b : B.blocks)
            if (b.source == key.first && b.target == key.second) block = &b;
        if (!block) throw InvalidArgument("basis has no block for an arrow");
        const std::size_t m = arrows.size();
        auto residue = [&](const Vector& v) {
            Vector r = zero_vector(f, m);
            for (std::size_t k = 0; k < m; ++k) r[k] = v[A.position(alg->arrow_path(arrows[k])).value()];
            return r;
        };
        std::vector<const Vector*> chosen;
        Subspace span(f, m);
        for (const auto& v : block->vectors)
            if (chosen.size() < m && span.insert(residue(v))) chosen.push_back(&v);
        if (chosen.size() < m) throw InvalidArgument("basis admits no adapted presentation (arrow residues are dependent)");

        std::vector<std::size_t> perm(m);
        for (std::size_t k = 0; k < m; ++k) perm[k] = k;
        std::vector<std::size_t> best = perm;
        do {
            bool ok = true;
            for (std::size_t k = 0; k < m && ok; ++k) ok = !residue(*chosen[perm[k]])[k].is_zero();
            if (ok) {
                best = perm;
                break;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (std::size_t k = 0; k < m; ++k) images[arrows[k]] = A.lift(*chosen[best[k]]);
    }
    return Presentation(A.ideal(), Automorphism::from_images(alg, std::move(images)));
}

struct Realization {
    Presentation nu;
    SpanningTree tree;
    std::vector<Vector> weights;  ///< one character per realized class
};

/// Realizes a diagonalizable set in an image of theta: common eigenbasis, adapted
/// presentation, eigenvalue weights corrected along the tree walks. Throws
/// InvalidArgument with the offending block when a class is not diagonalizable.
inline Realization realize_in_image(const HH1Space& H, const std::vector<Vector>& classes, const SpanningTree& tree)
{
    SpecialBasis B = common_eigenbasis(H, classes);
    Realization r{adapted_presentation(H, B), tree, {}};
    const FDAlgebra& A = H.algebra();
    const Quiver& q = A.quiver();
    const Field f = A.field();
    for (const auto& given : classes) {
        Vector cls = H.class_of(given);
        Matrix m = H.matrix(cls);
        Vector t = zero_vector(f, q.arrow_count());
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            auto lambda = eigenvalue(m, A.coords(r.nu.chi().image(a)));
            detail::ensure(lambda.has_value(), "adapted arrow images are eigenvectors");
            t[a] = *lambda;
        }
        Vector corrected = renormalize(q, t, tree);
        detail::ensure(theta(H, r.nu, corrected, tree) == cls, "realized weights reproduce the class");
        r.weights.push_back(std::move(corrected));
    }
    return r;
}

inline Realization realize_in_image(const HH1Space& H, const Vector& cls)
{
    return realize_in_image(H, {cls}, spanning_tree(H.algebra().quiver(), 0));
}

/// Centralizer of a set of classes in HH^1, as an echelon basis of class vectors.
inline std::vector<Vector> centralizer(const HH1Space& H, const std::vector<Vector>& classes)
{
    const auto& basis = H.basis();
    const std::size_t n = basis.size(), C = H.coord_count();
    std::vector<Vector> rows;
    for (const auto& s : classes) {
        std::vector<Vector> cols;
        for (const auto& b : basis) cols.push_back(H.bracket(b, s));
        for (std::size_t k = 0; k < C; ++k) {
            Vector row = zero_vector(H.field(), n);
            for (std::size_t i = 0; i < n; ++i) row[i] = cols[i][k];
            if (!is_zero(row)) rows.push_back(std::move(row));
        }
    }
    std::vector<Vector> sol = rows.empty() ? std::vector<Vector>{} : nullspace(Matrix::from_rows(H.field(), rows, n));
    if (rows.empty())
        for (std::size_t i = 0; i < n; ++i) {
            Vector e = zero_vector(H.field(), n);
            e[i] = Scalar::one(H.field());
            sol.push_back(std::move(e));
        }
    std::vector<Vector> out;
    for (const auto& x : sol) {
        Vector v = zero_vector(H.field(), C);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < C; ++k) v[k] += x[i] * basis[i][k];
        out.push_back(std::move(v));
    }
    return span_basis(H.field(), out, C);
}

struct MaxdiagBudget {
    std::size_t max_candidates = 200000;
    long grid = 2;  ///< integer coefficients in [-grid, grid] over QQ
};

struct MaximalityResult {
    Tri answer = Tri::unknown;
    std::optional<Vector> witness;  ///< class h outside S with S + k.h diagonalizable
    std::size_t centralizer_dim = 0;
    std::size_t candidates = 0;
    std::string reason;
};

/// Is the diagonalizable subspace spanned by `S` maximal among diagonalizable
/// subspaces of HH^1? Only elements of the centralizer can extend S; those are
/// searched exhaustively over GF(p) and on an integer grid over QQ.
inline MaximalityResult is_maximal_diagonalizable(const HH1Space& H, const std::vector<Vector>& S, const MaxdiagBudget& budget = {})
{
    auto check = is_diagonalizable_set(H, S);
    if (!check.diagonalizable) throw InvalidArgument("subspace is not diagonalizable: " + check.reason);
    const Field f = H.field();
    const std::size_t C = H.coord_count();
    std::vector<Vector> sbasis = span_basis(f, S, C);
    Subspace sspace = make_subspace(f, C, sbasis);
    std::vector<Vector> cent = centralizer(H, sbasis);
    MaximalityResult res;
    res.centralizer_dim = cent.size();
    if (cent.size() == sbasis.size()) {
        res.answer = Tri::yes;
        res.reason = "centralizer equals the subspace";
        return res;
    }
    // complement of S inside the centralizer
    std::vector<Vector> comp;
    {
        Subspace grow = sspace;
        for (const auto& c : cent)
            if (grow.insert(c)) comp.push_back(c);
    }
    // candidates h = sum y_i comp_i + sum z_j s_j with y != 0, first nonzero y equal to 1
    std::vector<Scalar> values;
    bool exhaustive = f.is_prime_field();
    if (f.is_prime_field()) {
        for (std::uint64_t v = 0; v < f.characteristic(); ++v) values.push_back(Scalar(f, static_cast<long long>(v)));
    } else {
        values.push_back(Scalar::zero(f));
        for (long v = 1; v <= budget.grid; ++v) {
            values.push_back(Scalar(f, v));
            values.push_back(Scalar(f, -v));
        }
    }
    const std::size_t r = comp.size(), s = sbasis.size(), total = r + s;
    std::vector<std::size_t> idx(total, 0);
    for (;;) {
        // leading comp coefficient normalization
        std::size_t lead = 0;
        while (lead < r && values[idx[lead]].is_zero()) ++lead;
        if (lead < r && values[idx[lead]].is_one()) {
            if (res.candidates >= budget.max_candidates) {
                exhaustive = false;
                break;
            }
            ++res.candidates;
            Vector h = zero_vector(f, C);
            for (std::size_t i = 0; i < total; ++i) {
                const Vector& b = i < r ? comp[i] : sbasis[i - r];
                if (values[idx[i]].is_zero()) continue;
                for (std::size_t k = 0; k < C; ++k) h[k] += values[idx[i]] * b[k];
            }
            if (is_diagonalizable_class(H, h).diagonalizable) {
                res.answer = Tri::no;
                res.witness = h;
                res.reason = "centralizer element extends the subspace";
                return res;
            }
        }
        std::size_t pos = 0;
        while (pos < total && ++idx[pos] == values.size()) idx[pos++] = 0;
        if (pos == total) break;
    }
    if (exhaustive) {
        res.answer = Tri::yes;
        res.reason = "exhaustive search of the centralizer found no extension";
    } else {
        res.answer = Tri::unknown;
        res.reason = f.is_prime_field() ? "candidate budget exhausted" : "no extension on the search grid";
    }
    return res;
}

/// psi-bar_* on HH^1 for an automorphism rho of kQ with rho(I_0) = I_0:
/// the class of psi-bar d psi-bar^-1.
inline Vector push_forward(const HH1Space& H, const Automorphism& rho, const Vector& cls)
{
    const FDAlgebra& A = H.algebra();
    if (!(apply_to_ideal(rho, A.ideal()) == A.ideal())) throw InvalidArgument("automorphism does not preserve the ideal");
    const std::size_t n = A.dim();
    Matrix P(A.field(), n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Vector c = A.coords(rho.image_of_path(A.basis_path(j)));
        for (std::size_t i = 0; i < n; ++i) P(i, j) = c[i];
    }
    Matrix M = P * H.matrix(cls) * inverse_matrix(P);
    Vector d = H.from_matrix(M);
    detail::ensure(H.is_derivation(d), "conjugate of a derivation is a derivation");
    return H.class_of(d);
}

/// Automorphism rho = chi psi chi^-1 of kQ inducing psi-bar, where mu = nu o psi.
inline Automorphism induced_automorphism(const Presentation& nu, const Automorphism& psi)
{
    return nu.chi().compose(psi).compose(nu.chi_inverse());
}

inline std::vector<Vector> push_forward(const HH1Space& H, const Automorphism& rho, const std::vector<Vector>& classes)
{
    std::vector<Vector> out;
    for (const auto& c : classes) out.push_back(push_forward(H, rho, c));
    return span_basis(H.field(), out, H.coord_count());
}

}  // namespace boundq
