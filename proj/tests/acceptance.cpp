// Runs the acceptance criteria and prints one pass/fail line per criterion.
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "support.hpp"

using namespace boundq;
using namespace testing_support;

namespace {

/// Collects failed conditions of one criterion.
struct Probe {
    std::vector<std::string> failures;
    void require(bool ok, const std::string& what)
    {
        if (!ok) failures.push_back(what);
    }
};

bool same_span(Field f, std::size_t dim, const std::vector<Vector>& x, const std::vector<Vector>& y)
{
    Subspace a = make_subspace(f, dim, x), b = make_subspace(f, dim, y);
    return a.contains(b) && b.contains(a);
}

bool inside(Field f, std::size_t dim, const std::vector<Vector>& small, const std::vector<Vector>& big)
{
    return make_subspace(f, dim, big).contains(make_subspace(f, dim, small));
}

Vector minus(Vector x, const Vector& y)
{
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
    return x;
}

Vector weights(const PathAlgebraPtr& alg, const std::vector<std::string>& arrows)
{
    Vector t = zero_vector(alg->field(), alg->quiver().arrow_count());
    for (const auto& a : arrows) t[A(alg, a)] = Scalar::one(alg->field());
    return t;
}

Automorphism transvection(const PathAlgebraPtr& alg, const std::string& arrow, const std::string& path)
{
    return Automorphism::transvection(alg, A(alg, arrow), written_path(alg->quiver(), path), Scalar::one(alg->field()));
}

Automorphism random_dilatation(std::mt19937& rng, const PathAlgebraPtr& alg)
{
    std::vector<Scalar> w;
    for (std::size_t a = 0; a < alg->quiver().arrow_count(); ++a) w.push_back(random_scalar(rng, alg->field(), true));
    return Automorphism::dilatation(alg, w);
}

Automorphism random_automorphism(std::mt19937& rng, const PathAlgebraPtr& alg)
{
    Automorphism phi = random_dilatation(rng, alg);
    auto bps = enumerate_bypasses(alg->quiver());
    for (int k = 0; k < 2 && !bps.empty(); ++k) {
        const auto& bp = bps[rng() % bps.size()];
        phi = Automorphism::transvection(alg, bp.arrow, bp.path, random_scalar(rng, alg->field(), true)).compose(phi);
    }
    return phi;
}

std::optional<Ideal> random_instance(std::mt19937& rng, std::size_t max_vertices)
{
    for (int tries = 0; tries < 50; ++tries) {
        Quiver q = random_quiver(rng, 2 + rng() % (max_vertices - 1), 1 + rng() % 3);
        auto alg = PathAlgebra::make(q, random_field(rng));
        Ideal I = rng() % 4 == 0 ? zero_ideal(alg) : random_ideal(rng, alg, 1 + rng() % 3);
        if (!is_admissible(I).admissible || FDAlgebra(I).dim() > 40) continue;
        return I;
    }
    return std::nullopt;
}

/// Linear map diagonalizable over a finite field: eigenspaces fill the space.
bool diagonalizable_by_eigenspaces(const Matrix& m)
{
    const Field f = m.field();
    std::size_t total = 0;
    for (std::uint64_t v = 0; v < f.characteristic(); ++v)
        total += nullspace(m - Scalar(f, static_cast<long long>(v)) * Matrix::identity(f, m.rows())).size();
    return total == m.rows();
}

// ---------------------------------------------------------------------------

Probe parallel_arrows_groups()
{
    Probe p;
    for (Field f : {Field::rationals(), Field::prime(2)}) {
        auto alg = PathAlgebra::make(parallel_quiver(), f);
        Ideal I = groebner_basis(alg, {P(alg, "c*a")});
        Ideal J = groebner_basis(alg, {P(alg, "c*a") - P(alg, "c*b")});
        SpanningTree t = spanning_tree(alg->quiver(), 0);
        p.require(abelian_invariants(pi1_presentation(I, t)).to_string() == "Z", f.name() + ": pi1(I) is Z");
        p.require(abelian_invariants(pi1_presentation(J, t)).to_string() == "1", f.name() + ": pi1(J) is trivial");
        p.require(hom_space(I, t).dim() == 1, f.name() + ": dim Hom for I is 1");
        p.require(hom_space(J, t).dim() == 0, f.name() + ": dim Hom for J is 0");
    }
    return p;
}

Probe parallel_arrows_gamma()
{
    Probe p;
    auto alg = PathAlgebra::make(parallel_quiver(), Field::rationals());
    Ideal I = groebner_basis(alg, {P(alg, "c*a")});
    Ideal J = groebner_basis(alg, {P(alg, "c*a") - P(alg, "c*b")});
    GammaQuiver g = build_gamma(I);
    p.require(g.vertices.size() == 2, "2 vertices");
    p.require(g.edges.size() == 1, "1 arrow");
    p.require(g.quarantined.empty() && !g.truncated, "no quarantine or truncation");
    if (g.edges.size() == 1) {
        const GammaEdge& e = g.edges[0];
        p.require(relations_equal(g.vertices[e.from].ideal, I).answer == Tri::yes, "arrow starts at the relation of I");
        p.require(relations_equal(g.vertices[e.to].ideal, J).answer == Tri::yes, "arrow ends at the relation of J");
    }
    SourceReport s = sources(g);
    p.require(s.unique && !s.sources.empty() && g.vertices[s.sources[0]].ideal == I, "unique source is I");
    return p;
}

Probe kronecker()
{
    Probe p;
    for (Field f : {Field::rationals(), Field::prime(3)}) {
        auto alg = PathAlgebra::make(kronecker_quiver(), f);
        Ideal Z = zero_ideal(alg);
        HH1Space H{FDAlgebra(Z)};
        p.require(H.dim() == 3, f.name() + ": dim HH1 = 3");
        p.require(image_theta(H, Presentation::natural(Z)).basis.size() == 1, f.name() + ": dim Im theta = 1");
    }
    return p;
}

Probe pentagon_twist()
{
    Probe p;
    auto alg = PathAlgebra::make(pentagon_quiver(), Field::prime(2));
    Ideal I = groebner_basis(alg, {P(alg, "d*a"), P(alg, "f*e*c*b"), P(alg, "f*e*a") + P(alg, "d*c*b")});
    Automorphism psi = transvection(alg, "a", "c*b").compose(transvection(alg, "d", "f*e"));
    p.require(apply_to_ideal(psi, I) == I, "psi(I) = I");
    HH1Space H{FDAlgebra(I)};
    SpanningTree tree = pentagon_tree(alg->quiver());
    auto nu = Presentation::natural(I);
    auto mu = nu.compose(I, psi);
    Vector t = weights(alg, {"a", "d"});
    Vector d1 = theta(H, nu, t, tree), d2 = theta(H, mu, t, tree);
    p.require(d1 != d2, "theta_nu(f) != theta_mu(f)");
    p.require(!H.is_inner(minus(d2, d1)), "d2 - d1 is not inner");
    // the representatives named for d1 and d2
    Vector r1 = H.from_images({{A(alg, "a"), P(alg, "a")}, {A(alg, "d"), P(alg, "d")}});
    Vector r2 = H.from_images({{A(alg, "a"), P(alg, "a") + P(alg, "c*b")}, {A(alg, "d"), P(alg, "d") + P(alg, "f*e")}});
    p.require(H.class_of(r1) == d1, "d1 is a -> a, d -> d");
    p.require(H.class_of(r2) == d2, "d2 is a -> a + cb, d -> d + fe");
    return p;
}

Probe pentagon_quotient()
{
    Probe p;
    auto alg = PathAlgebra::make(pentagon_quiver(), Field::prime(2));
    Ideal I = groebner_basis(alg, {P(alg, "d*a"), P(alg, "f*e*a") + P(alg, "d*c*b")});
    Ideal K = groebner_basis(alg, {P(alg, "d*a") + P(alg, "f*e*c*b"), P(alg, "f*e*a") + P(alg, "d*c*b")});
    Automorphism psi = transvection(alg, "d", "f*e").compose(transvection(alg, "a", "c*b"));
    auto nu = Presentation::natural(I);
    auto mu = nu.compose(I, psi);
    p.require(mu.kernel() == K, "Ker mu = <da + fecb, fea + dcb>");
    SpanningTree tree = pentagon_tree(alg->quiver());
    p.require(abelian_invariants(pi1_presentation(I, tree)).to_string() == "Z", "pi1(I) is Z");
    p.require(abelian_invariants(pi1_presentation(K, tree)).to_string() == "Z/2", "pi1(Ker mu) is Z/2");
    HH1Space H{FDAlgebra(I)};
    ThetaImage in = image_theta(H, nu, tree), im = image_theta(H, mu, tree);
    p.require(in.basis.size() == 1 && im.basis.size() == 1, "both images are one dimensional");
    p.require(!inside(H.field(), H.coord_count(), im.basis, in.basis), "Im theta_mu is not inside Im theta_nu");
    auto q = PathAlgebra::make(pentagon_quiver(), Field::rationals());
    Ideal Kq = groebner_basis(q, {P(q, "d*a") + P(q, "f*e*c*b"), P(q, "f*e*a") + P(q, "d*c*b")});
    p.require(hom_space(Kq, pentagon_tree(q->quiver())).dim() == 0, "over QQ dim Hom for Ker mu = 0");
    return p;
}

Probe dilatations()
{
    Probe p;
    std::mt19937 rng(2024);
    std::size_t instances = 0;
    while (instances < 100) {
        auto I = random_instance(rng, 6);
        if (!I) continue;
        const PathAlgebraPtr& alg = I->algebra();
        HH1Space H{FDAlgebra(*I)};
        SpanningTree tree = spanning_tree(alg->quiver(), 0);
        Presentation nu(*I, random_automorphism(rng, alg));
        Presentation mu = nu.compose(*I, random_dilatation(rng, alg));
        for (const auto& t : hom_space(nu.kernel(), tree).basis)
            p.require(theta(H, mu, t, tree) == theta(H, nu, t, tree), "instance " + std::to_string(instances));
        ++instances;
    }
    return p;
}

Probe gamma_arrows()
{
    Probe p;
    std::size_t edges = 0;
    for (const auto& seed : corpus()) {
        GammaQuiver g = build_gamma(seed);
        const PathAlgebraPtr& alg = seed.algebra();
        HH1Space H{FDAlgebra(seed)};
        SpanningTree tree = spanning_tree(alg->quiver(), 0);
        for (const auto& e : g.edges) {
            ++edges;
            Automorphism phi = Automorphism::transvection(alg, e.bypass.arrow, e.bypass.path, e.tau);
            Presentation nu(seed, e.source_from_seed.inverse());
            Presentation mu = nu.compose(seed, phi.inverse());
            std::string tag = "edge " + std::to_string(edges);
            p.require(mu.kernel() == e.target_ideal, tag + ": kernel is the target");
            ThetaImage src = image_theta(H, nu, tree), dst = image_theta(H, mu, tree);
            p.require(inside(H.field(), H.coord_count(), dst.basis, src.basis), tag + ": inclusion");
            for (const auto& t : dst.hom.basis) {
                p.require(satisfies_pairs(*alg, t, homotopy_pairs(nu.kernel())), tag + ": character descends");
                p.require(theta(H, mu, t, tree) == theta(H, nu, t, tree), tag + ": triangle");
            }
        }
    }
    p.require(edges > 0, "corpus has arrows");
    return p;
}

Probe stabilizers()
{
    Probe p;
    std::mt19937 rng(77);
    std::vector<Ideal> pool = corpus();
    std::size_t checked = 0, nonidentity = 0, round = 0;
    while (nonidentity < 50 && round < 2000) {
        ++round;
        std::optional<Ideal> I = round <= pool.size() * 3 ? std::optional<Ideal>(pool[round % pool.size()]) : random_instance(rng, 5);
        if (!I) continue;
        const PathAlgebraPtr& alg = I->algebra();
        HH1Space H{FDAlgebra(*I)};
        Presentation nu(*I, random_automorphism(rng, alg));
        Automorphism psi = random_stabilizer(rng, nu.kernel());
        Automorphism d = random_dilatation(rng, alg);
        if (apply_to_ideal(d, nu.kernel()) == nu.kernel()) psi = d.compose(psi);
        if (psi.is_identity()) continue;
        ++nonidentity;
        auto lhs = image_theta(H, nu.compose(*I, psi)).basis;
        auto rhs = push_forward(H, induced_automorphism(nu, psi), image_theta(H, nu).basis);
        p.require(same_span(H.field(), H.coord_count(), lhs, rhs), "automorphism " + std::to_string(checked));
        ++checked;
    }
    p.require(nonidentity >= 50, "at least 50 automorphisms");
    return p;
}

Probe realizations()
{
    Probe p;
    std::mt19937 rng(99);
    for (const auto& I : corpus()) {
        HH1Space H{FDAlgebra(I)};
        p.require(is_diagonalizable_set(H, image_theta(H, Presentation::natural(I)).basis).diagonalizable, "corpus image diagonalizable");
    }
    std::size_t sets = 0, round = 0;
    while (sets < 50 && round < 2000) {
        ++round;
        auto I = random_instance(rng, 5);
        if (!I) continue;
        const PathAlgebraPtr& alg = I->algebra();
        HH1Space H{FDAlgebra(*I)};
        Presentation nu(*I, random_automorphism(rng, alg));
        ThetaImage im = image_theta(H, nu);
        p.require(is_diagonalizable_set(H, im.basis).diagonalizable, "random image diagonalizable");
        if (im.basis.empty()) continue;
        std::vector<Vector> given, classes;
        for (std::size_t i = 0, n = 1 + rng() % im.basis.size(); i < n; ++i) {
            Vector c = combine(im.basis, random_vector(rng, H.field(), im.basis.size()), H.field(), H.coord_count());
            classes.push_back(H.class_of(c));
            for (std::size_t v = 0; v < alg->quiver().vertex_count(); ++v) {
                Scalar s = random_scalar(rng, H.field(), false);
                Vector inner = H.inner_derivation(v);
                for (std::size_t k = 0; k < c.size(); ++k) c[k] += s * inner[k];
            }
            given.push_back(c);
        }
        Realization r = realize_in_image(H, given, spanning_tree(alg->quiver(), 0));
        p.require(inside(H.field(), H.coord_count(), classes, image_theta(H, r.nu, r.tree).basis), "set " + std::to_string(sets));
        ++sets;
    }
    p.require(sets >= 50, "at least 50 sets");
    return p;
}

Probe constricted()
{
    Probe p;
    std::vector<Ideal> pool;
    for (const char* name : {"square.bq", "a4.bq"}) {
        auto doc = sample(name);
        for (const auto& d : doc.ideals) pool.push_back(doc.ideal(d.name));
    }
    for (std::size_t n = 3; n <= 6; ++n) {
        std::vector<std::string> vs;
        std::vector<std::tuple<std::string, std::string, std::string>> arrows;
        for (std::size_t i = 0; i < n; ++i) vs.push_back(std::to_string(i + 1));
        for (std::size_t i = 0; i + 1 < n; ++i) arrows.emplace_back(std::string(1, static_cast<char>('a' + i)), vs[i], vs[i + 1]);
        auto alg = PathAlgebra::make(Quiver::from_names(vs, arrows), Field::rationals());
        // all length-two paths: radical square zero
        std::vector<Element> gens;
        for (std::size_t k = 0; k < alg->path_count(); ++k)
            if (alg->path(k).length() == 2) gens.push_back(Element::path(alg, k));
        pool.push_back(groebner_basis(alg, gens));
    }
    for (const auto& I : pool) {
        HH1Space H{FDAlgebra(I)};
        std::string tag = std::to_string(I.algebra()->quiver().vertex_count()) + " vertices";
        p.require(image_theta(H, Presentation::natural(I)).basis.size() == H.dim(), tag + ": image fills HH1");
        for (const auto& x : H.basis())
            for (const auto& y : H.basis()) p.require(is_zero(H.bracket(x, y)), tag + ": abelian");
    }
    return p;
}

/// Brute force over GF(3): every subspace of HH^1, every automorphism of kQ.
Probe maximal_family()
{
    Probe p;
    const Field f = Field::prime(3);
    auto alg = PathAlgebra::make(parallel_quiver(), f);
    Ideal I = groebner_basis(alg, {P(alg, "c*a")});
    Theorem1Report r = verify_theorem1(I);
    for (const auto& c : r.checks) {
        bool maxdiag = c.name.find("maximal") != std::string::npos || c.name.find("diagonalizable") != std::string::npos;
        if (maxdiag) p.require(c.status == Tri::yes, c.name + " definite and passing");
        p.require(c.status != Tri::unknown, c.name + " is definite");
    }
    p.require(r.overall() == Tri::yes, "report passes");

    HH1Space H{FDAlgebra(I)};
    const std::size_t C = H.coord_count();
    // part (ii): a conjugator between two distinct maximal subalgebras
    bool conjugated = false;
    for (std::size_t i = 1; i < r.maximal_family.size(); ++i)
        if (!same_span(f, C, r.maximal_family[0], r.maximal_family[i]) &&
            same_span(f, C, push_forward(H, r.family_conjugators[i], r.maximal_family[0]), r.maximal_family[i]))
            conjugated = true;
    p.require(conjugated, "conjugating automorphism between distinct maximal subalgebras");

    // all elements of a span over GF(3)
    auto elements = [&](const std::vector<Vector>& basis) {
        std::vector<Vector> out;
        std::size_t total = 1;
        for (std::size_t i = 0; i < basis.size(); ++i) total *= 3;
        for (std::size_t code = 0; code < total; ++code) {
            Vector c;
            for (std::size_t i = 0, x = code; i < basis.size(); ++i, x /= 3) c.push_back(Scalar(f, static_cast<long long>(x % 3)));
            out.push_back(combine(basis, c, f, C));
        }
        return out;
    };
    auto diagonalizable_subspace = [&](const std::vector<Vector>& basis) {
        for (const auto& x : elements(basis))
            if (!diagonalizable_by_eigenspaces(H.matrix(x))) return false;
        for (const auto& x : basis)
            for (const auto& y : basis)
                if (!is_zero(H.bracket(x, y))) return false;
        return true;
    };
    // subspaces of a 2-dimensional HH^1: zero, four lines, the plane
    std::vector<std::vector<Vector>> subspaces{{}};
    if (H.dim() != 2) {
        p.require(false, "HH1 has dimension 2");
        return p;
    }
    for (const auto& x : elements(H.basis())) {
        if (is_zero(x)) continue;
        bool seen = false;
        for (const auto& s : subspaces)
            if (!s.empty() && same_span(f, C, s, {x})) seen = true;
        if (!seen) subspaces.push_back({x});
    }
    subspaces.push_back(H.basis());
    std::vector<std::vector<Vector>> diag, maximal;
    for (const auto& s : subspaces)
        if (diagonalizable_subspace(s)) diag.push_back(s);
    for (const auto& s : diag) {
        bool is_max = true;
        for (const auto& t : diag)
            if (t.size() > s.size() && inside(f, C, s, t)) is_max = false;
        if (is_max) maximal.push_back(s);
    }
    // theta images over every automorphism of kQ: GL_2 on {a, b} times a scalar on c
    std::vector<std::vector<Vector>> images;
    for (long long x11 = 0; x11 < 3; ++x11)
        for (long long x12 = 0; x12 < 3; ++x12)
            for (long long x21 = 0; x21 < 3; ++x21)
                for (long long x22 = 0; x22 < 3; ++x22) {
                    if (Scalar(f, x11 * x22 - x12 * x21).is_zero()) continue;
                    for (long long y = 1; y < 3; ++y) {
                        Automorphism chi = Automorphism::from_images(
                            alg, {P(alg, "a", x11) + P(alg, "b", x12), P(alg, "a", x21) + P(alg, "b", x22), P(alg, "c", y)});
                        auto im = image_theta(H, Presentation(I, chi)).basis;
                        if (im.empty()) continue;
                        bool seen = false;
                        for (const auto& s : images)
                            if (same_span(f, C, s, im)) seen = true;
                        if (!seen) images.push_back(im);
                    }
                }
    auto same_family = [&](const std::vector<std::vector<Vector>>& x, const std::vector<std::vector<Vector>>& y) {
        if (x.size() != y.size()) return false;
        for (const auto& s : x) {
            bool found = false;
            for (const auto& t : y)
                if (same_span(f, C, s, t)) found = true;
            if (!found) return false;
        }
        return true;
    };
    p.require(!maximal.empty(), "brute force finds maximal subspaces");
    p.require(same_family(maximal, images), "maximal family equals the theta image family");
    p.require(same_family(maximal, r.maximal_family), "report family equals the brute-force family");
    return p;
}

Probe structure()
{
    Probe p;
    std::mt19937 rng(5);
    for (const auto& I : corpus()) {
        const PathAlgebraPtr& alg = I.algebra();
        const Quiver& q = alg->quiver();
        HH1Space H{FDAlgebra(I)};
        const Field f = H.field();
        for (const auto& d : H.der0()) p.require(H.satisfies_leibniz(d), "Leibniz on all basis pairs");
        p.require(H.int0().size() == q.vertex_count() - 1, "dim Int0 = |Q0| - 1");
        if (H.dim() > 0)
            for (int k = 0; k < 5; ++k) {
                auto rnd = [&] { return combine(H.basis(), random_vector(rng, f, H.dim()), f, H.coord_count()); };
                Vector x = rnd(), y = rnd(), z = rnd();
                Vector s = H.bracket(x, H.bracket(y, z)), s2 = H.bracket(y, H.bracket(z, x)), s3 = H.bracket(z, H.bracket(x, y));
                for (std::size_t i = 0; i < s.size(); ++i) s[i] += s2[i] + s3[i];
                p.require(is_zero(s), "Jacobi");
            }
        GroupPresentation g = pi1_presentation(I, spanning_tree(q, 0));
        if (!g.relators.empty()) {
            auto snf = smith_normal_form(exponent_matrix(g));
            p.require(snf.u * exponent_matrix(g) * snf.v == snf.diagonal, "SNF u m v = diag");
            p.require(abs(determinant(snf.u)) == 1 && abs(determinant(snf.v)) == 1, "SNF unimodular");
        }
        // reduced basis (i)-(iii), and (iv) on random ideal elements
        const auto& gb = I.basis();
        for (std::size_t j = 0; j < gb.size(); ++j) {
            p.require(gb[j].coefficient(I.pivots()[j]).is_one(), "monic pivot");
            for (auto path : gb[j].support()) p.require(path <= I.pivots()[j], "pivot is the leading path");
            for (std::size_t k = 0; k < gb.size(); ++k)
                if (k != j) p.require(gb[k].coefficient(I.pivots()[j]).is_zero(), "pivot absent from other elements");
        }
        for (int k = 0; k < 5 && !gb.empty(); ++k) {
            Element r(alg);
            for (int m = 0; m < 3; ++m)
                r += random_scalar(rng, f, false) *
                     (Element::path(alg, rng() % alg->path_count()) * gb[rng() % gb.size()] * Element::path(alg, rng() % alg->path_count()));
            Element sum(alg);
            for (std::size_t j = 0; j < gb.size(); ++j) sum += r.coefficient(I.pivots()[j]) * gb[j];
            p.require(sum == r, "element equals its pivot expansion");
        }
    }
    return p;
}

}  // namespace

int main()
{
    struct Criterion {
        int number;
        const char* name;
        std::function<Probe()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "parallel arrows: fundamental groups and Hom dimensions over QQ and GF(2)", parallel_arrows_groups},
        {2, "parallel arrows: Gamma has 2 vertices, 1 arrow from I to J, unique source I", parallel_arrows_gamma},
        {3, "Kronecker: dim HH1 = 3 and dim Im theta = 1 over QQ and GF(3)", kronecker},
        {4, "pentagon over GF(2): psi(I) = I and theta_nu(f) != theta_mu(f) modulo inner", pentagon_twist},
        {5, "pentagon over GF(2): Z and Z/2, one dimensional images, no inclusion", pentagon_quotient},
        {6, "dilatations leave theta unchanged on 100 random instances", dilatations},
        {7, "Gamma arrows of the sample corpus: image inclusion and triangle", gamma_arrows},
        {8, "50 ideal-preserving automorphisms move the image by push-forward", stabilizers},
        {9, "images are diagonalizable; 50 random sets are realized", realizations},
        {10, "constricted samples: image fills HH1 and HH1 is abelian", constricted},
        {11, "verification harness on the parallel arrows example over GF(3) with brute force", maximal_family},
        {12, "structural invariants on the sample corpus", structure},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Probe p;
        try {
            p = c.run();
        } catch (const std::exception& e) {
            p.failures.push_back(std::string("exception: ") + e.what());
        }
        bool ok = p.failures.empty();
        if (!ok) ++failed;
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": " << c.name;
        if (!ok) {
            std::set<std::string> distinct(p.failures.begin(), p.failures.end());
            std::cout << " (";
            std::size_t shown = 0;
            for (const auto& s : distinct) {
                if (shown++ == 3) {
                    std::cout << ", ...";
                    break;
                }
                std::cout << (shown > 1 ? ", " : "") << s;
            }
            std::cout << ")";
        }
        std::cout << "\n";
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
