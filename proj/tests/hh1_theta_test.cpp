#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace boundq;
using namespace testing_support;

namespace {

Vector sub(const Vector& x, const Vector& y)
{
    Vector r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return r;
}

Vector unit_weights(const PathAlgebraPtr& alg, const std::vector<std::string>& arrows)
{
    Vector t = zero_vector(alg->field(), alg->quiver().arrow_count());
    for (const auto& a : arrows) t[A(alg, a)] = Scalar::one(alg->field());
    return t;
}

/// Counts assignments of arrow images (each arrow to a combination of its
/// parallel normal paths) that pass the full Leibniz check on basis pairs.
std::size_t brute_force_derivations(const HH1Space& H)
{
    const Field f = H.field();
    const std::size_t C = H.coord_count(), p = f.characteristic();
    std::size_t total = 1, found = 0;
    for (std::size_t i = 0; i < C; ++i) total *= p;
    for (std::size_t code = 0; code < total; ++code) {
        Vector d = zero_vector(f, C);
        std::size_t c = code;
        for (std::size_t i = 0; i < C; ++i, c /= p) d[i] = Scalar(f, static_cast<long long>(c % p));
        if (H.satisfies_leibniz(d)) ++found;
    }
    return found;
}

std::size_t ipow(std::size_t b, std::size_t e)
{
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

struct PentagonTwist {
    PathAlgebraPtr alg = PathAlgebra::make(pentagon_quiver(), Field::prime(2));
    Ideal I = groebner_basis(alg, {P(alg, "d*a"), P(alg, "f*e*c*b"), P(alg, "f*e*a") + P(alg, "d*c*b")});
    HH1Space H{FDAlgebra(I)};
    SpanningTree tree = pentagon_tree(alg->quiver());
    Automorphism psi = Automorphism::transvection(alg, A(alg, "a"), written_path(alg->quiver(), "c*b"), Scalar::one(alg->field()))
                           .compose(Automorphism::transvection(alg, A(alg, "d"), written_path(alg->quiver(), "f*e"), Scalar::one(alg->field())));
};

}  // namespace

TEST(HH1, KroneckerDimensions)
{
    for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3)}) {
        auto alg = PathAlgebra::make(kronecker_quiver(), f);
        HH1Space H{FDAlgebra(zero_ideal(alg))};
        // each arrow goes to any combination of a and b: 2 x 2 free parameters
        EXPECT_EQ(H.der0().size(), 4u);
        EXPECT_EQ(H.int0().size(), 1u);
        EXPECT_EQ(H.dim(), 3u);
        EXPECT_EQ(H.algebra().dim(), 4u);
    }
}

TEST(HH1, ParallelArrowsExampleOverGF3)
{
    auto alg = PathAlgebra::make(parallel_quiver(), Field::prime(3));
    Ideal I = groebner_basis(alg, {P(alg, "c*a")});
    HH1Space H{FDAlgebra(I)};
    EXPECT_EQ(H.algebra().dim(), 7u);
    // 3^der0 Leibniz solutions among the 3^5 arrow image assignments
    EXPECT_EQ(ipow(3, H.der0().size()), brute_force_derivations(H));
    EXPECT_EQ(H.der0().size(), 4u);
    EXPECT_EQ(H.dim(), 2u);

    Vector f = H.class_of(H.from_images({{A(alg, "a"), P(alg, "a")}}));
    Vector g = H.class_of(H.from_images({{A(alg, "b"), P(alg, "a")}}));
    // [f, g](b) = f(g(b)) - g(f(b)) = f(a) = a, and both sides vanish on a and c
    EXPECT_EQ(H.bracket(f, g), g);
    EXPECT_TRUE(is_zero(H.bracket(f, f)));
    EXPECT_TRUE(is_diagonalizable_class(H, f).diagonalizable);
    // g is nilpotent and nonzero on the 1 -> 2 block
    EXPECT_FALSE(is_diagonalizable_class(H, g).diagonalizable);
    EXPECT_EQ(H.to_string(g), "b -> a");
    EXPECT_THROW(H.from_images({{A(alg, "a"), P(alg, "c")}}), InvalidArgument);
}

TEST(HH1, InnerDerivationsVanishInHH1)
{
    std::mt19937 rng(51);
    for (int iter = 0; iter < 30; ++iter) {
        Quiver q = random_quiver(rng, 2 + rng() % 3, rng() % 3);
        auto alg = PathAlgebra::make(q, random_field(rng));
        Ideal I = random_ideal(rng, alg, 1 + rng() % 2);
        if (!is_admissible(I).admissible) continue;
        HH1Space H{FDAlgebra(I)};
        EXPECT_EQ(H.int0().size(), q.vertex_count() - 1);
        EXPECT_EQ(H.dim() + H.int0().size(), H.der0().size());
        Vector d = combine(H.der0(), random_vector(rng, H.field(), H.der0().size()), H.field(), H.coord_count());
        Vector moved = d;
        for (std::size_t v = 0; v < q.vertex_count(); ++v) {
            Vector inner = H.inner_derivation(v);
            EXPECT_TRUE(H.satisfies_leibniz(inner));
            EXPECT_TRUE(H.is_inner(inner));
            Scalar c = random_scalar(rng, H.field(), false);
            for (std::size_t k = 0; k < moved.size(); ++k) moved[k] += c * inner[k];
        }
        EXPECT_EQ(H.class_of(moved), H.class_of(d));
    }
}

TEST(HH1, SolutionsAgreeWithFullLeibnizCheck)
{
    std::mt19937 rng(53);
    int checked = 0;
    for (int iter = 0; iter < 60 && checked < 12; ++iter) {
        Quiver q = random_quiver(rng, 2 + rng() % 3, rng() % 2);
        auto alg = PathAlgebra::make(q, rng() % 2 ? Field::prime(2) : Field::prime(3));
        Ideal I = random_ideal(rng, alg, 1);
        if (!is_admissible(I).admissible) continue;
        HH1Space H{FDAlgebra(I)};
        if (ipow(alg->field().characteristic(), H.coord_count()) > 6000) continue;
        ++checked;
        EXPECT_EQ(ipow(alg->field().characteristic(), H.der0().size()), brute_force_derivations(H));
    }
    EXPECT_GE(checked, 5);
}

TEST(HH1, DerivationsPreserveVertexBlocks)
{
    for (const auto& I : corpus()) {
        HH1Space H{FDAlgebra(I)};
        const FDAlgebra& A = H.algebra();
        const PathAlgebra& alg = *A.path_algebra();
        for (const auto& d : H.der0()) {
            EXPECT_TRUE(H.satisfies_leibniz(d));
            Matrix m = H.matrix(d);
            for (std::size_t j = 0; j < A.dim(); ++j)
                for (std::size_t i = 0; i < A.dim(); ++i) {
                    if (m(i, j).is_zero()) continue;
                    const Path& from = alg.path(A.basis_path(j));
                    const Path& to = alg.path(A.basis_path(i));
                    EXPECT_TRUE(from.parallel_to(to));
                }
        }
    }
}

TEST(Theta, InjectiveWithAbelianImage)
{
    for (const auto& I : corpus()) {
        HH1Space H{FDAlgebra(I)};
        auto nu = Presentation::natural(I);
        const Quiver& q = I.algebra()->quiver();
        ThetaImage im = image_theta(H, nu);
        EXPECT_EQ(im.basis.size(), im.hom.dim());
        for (const auto& x : im.basis)
            for (const auto& y : im.basis) EXPECT_TRUE(is_zero(H.bracket(x, y)));
        // every image class is diagonalizable
        EXPECT_TRUE(is_diagonalizable_set(H, im.basis).diagonalizable);
        // changing the base point and the tree does not move the image
        Subspace first = make_subspace(H.field(), H.coord_count(), im.basis);
        for (std::size_t base = 0; base < q.vertex_count(); ++base) {
            ThetaImage other = image_theta(H, nu, spanning_tree(q, base));
            Subspace second = make_subspace(H.field(), H.coord_count(), other.basis);
            EXPECT_TRUE(first.contains(second));
            EXPECT_TRUE(second.contains(first));
        }
    }
}

TEST(Theta, KroneckerImageIsMaximal)
{
    for (Field f : {Field::rationals(), Field::prime(3)}) {
        auto alg = PathAlgebra::make(kronecker_quiver(), f);
        Ideal Z = zero_ideal(alg);
        HH1Space H{FDAlgebra(Z)};
        ThetaImage im = image_theta(H, Presentation::natural(Z));
        ASSERT_EQ(im.basis.size(), 1u);
        auto m = is_maximal_diagonalizable(H, im.basis);
        EXPECT_EQ(m.answer, Tri::yes);
        // the zero subspace is not maximal
        auto z = is_maximal_diagonalizable(H, {});
        EXPECT_EQ(z.answer, Tri::no);
        ASSERT_TRUE(z.witness.has_value());
        EXPECT_TRUE(is_diagonalizable_class(H, *z.witness).diagonalizable);
    }
}

TEST(Theta, PentagonTwistMovesTheImage)
{
    PentagonTwist ex;
    auto nu = Presentation::natural(ex.I);
    auto mu = nu.compose(ex.I, ex.psi);
    EXPECT_EQ(mu.kernel(), ex.I);
    Vector t = unit_weights(ex.alg, {"a", "d"});
    Vector d1 = theta(ex.H, nu, t, ex.tree);
    Vector d2 = theta(ex.H, mu, t, ex.tree);
    EXPECT_NE(d1, d2);
    EXPECT_FALSE(ex.H.is_inner(sub(d2, d1)));
    // the induced automorphism carries one onto the other
    EXPECT_EQ(push_forward(ex.H, induced_automorphism(nu, ex.psi), d1), d2);
    EXPECT_TRUE(is_diagonalizable_class(ex.H, d1).diagonalizable);
    EXPECT_TRUE(is_diagonalizable_class(ex.H, d2).diagonalizable);
    // d1 is the class of a -> a, d -> d
    EXPECT_EQ(ex.H.class_of(ex.H.from_images({{A(ex.alg, "a"), P(ex.alg, "a")}, {A(ex.alg, "d"), P(ex.alg, "d")}})), d1);
    // both realizations reproduce their class
    for (const auto& d : {d1, d2}) {
        Realization r = realize_in_image(ex.H, {d}, ex.tree);
        ASSERT_EQ(r.weights.size(), 1u);
        EXPECT_EQ(theta(ex.H, r.nu, r.weights[0], ex.tree), d);
        EXPECT_EQ(r.nu.kernel().algebra(), ex.alg);
    }
    EXPECT_THROW(push_forward(ex.H, Automorphism::transvection(ex.alg, A(ex.alg, "a"), written_path(ex.alg->quiver(), "c*b"),
                                                               Scalar::one(ex.alg->field())),
                              d1),
                 InvalidArgument);
}

TEST(Theta, WeightsMustRespectHomotopyPairs)
{
    auto alg = PathAlgebra::make(parallel_quiver(), Field::rationals());
    Ideal J = groebner_basis(alg, {P(alg, "c*a") - P(alg, "c*b")});
    HH1Space H{FDAlgebra(J)};
    Vector t = unit_weights(alg, {"a"});
    EXPECT_THROW(theta(H, Presentation::natural(J), t, spanning_tree(alg->quiver(), 0)), InvalidArgument);
}

TEST(Theta, TreeLikeSamplesHaveFullImage)
{
    // simply connected bound quivers whose HH^1 is spanned by the image
    for (const char* name : {"square.bq", "a4.bq"}) {
        auto doc = sample(name);
        for (const auto& d : doc.ideals) {
            Ideal I = doc.ideal(d.name);
            HH1Space H{FDAlgebra(I)};
            ThetaImage im = image_theta(H, Presentation::natural(I));
            EXPECT_EQ(im.basis.size(), H.dim()) << name << " " << d.name;
        }
    }
}
