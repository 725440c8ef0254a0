#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "boundq/cli/parse.hpp"
#include "boundq/gamma.hpp"
#include "boundq/hh1.hpp"
#include "boundq/palg.hpp"
#include "boundq/theta.hpp"

namespace testing_support {

using namespace boundq;

/// Element of a written product: names("f*e*a") is the path a, then e, then f.
inline Path written_path(const Quiver& q, const std::string& word)
{
    std::vector<std::string> names;
    std::stringstream ss(word);
    std::string part;
    while (std::getline(ss, part, '*')) names.push_back(part);
    std::vector<std::size_t> traversal;
    for (auto it = names.rbegin(); it != names.rend(); ++it) traversal.push_back(q.arrow_index(*it));
    return Path::from_arrows(q, traversal);
}

inline Element P(const PathAlgebraPtr& alg, const std::string& word, long long c = 1)
{
    return Element::path(alg, alg->index_of(written_path(alg->quiver(), word)), Scalar(alg->field(), c));
}

inline std::size_t A(const PathAlgebraPtr& alg, const std::string& name) { return alg->quiver().arrow_index(name); }

inline Quiver parallel_quiver() { return Quiver::from_names({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "1", "2"}, {"c", "2", "3"}}); }

inline Quiver pentagon_quiver()
{
    return Quiver::from_names({"1", "2", "3", "4", "5"},
                              {{"a", "1", "3"}, {"b", "1", "2"}, {"c", "2", "3"}, {"d", "3", "5"}, {"e", "3", "4"}, {"f", "4", "5"}});
}

inline Quiver kronecker_quiver() { return Quiver::from_names({"1", "2"}, {{"a", "1", "2"}, {"b", "1", "2"}}); }

inline SpanningTree pentagon_tree(const Quiver& q)
{
    return spanning_tree(q, 0, std::vector<std::size_t>{q.arrow_index("b"), q.arrow_index("c"), q.arrow_index("e"), q.arrow_index("f")});
}

inline std::string read_sample(const std::string& name)
{
    std::ifstream in(std::string(BOUNDQ_SAMPLES) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline cli::InputDocument sample(const std::string& name) { return cli::parse_input(read_sample(name)); }

inline const std::vector<std::string>& sample_names()
{
    static const std::vector<std::string> n{"parallel.bq", "parallel_gf3.bq", "kronecker.bq", "pentagon_twist.bq", "pentagon.bq", "square.bq", "a4.bq"};
    return n;
}

/// Every (document, ideal) pair of the golden samples.
inline std::vector<Ideal> corpus()
{
    std::vector<Ideal> out;
    for (const auto& n : sample_names()) {
        auto doc = sample(n);
        for (const auto& d : doc.ideals) out.push_back(doc.ideal(d.name));
    }
    return out;
}

inline Scalar random_scalar(std::mt19937& rng, Field f, bool nonzero)
{
    std::uniform_int_distribution<long long> d(-3, 3);
    for (;;) {
        Scalar s(f, d(rng));
        if (!nonzero || !s.is_zero()) return s;
    }
}

/// Connected acyclic quiver on n vertices: a random tree of arrows i -> j (i < j)
/// plus a few extra arrows, possibly parallel.
inline Quiver random_quiver(std::mt19937& rng, std::size_t n, std::size_t extra)
{
    std::vector<std::string> vs;
    for (std::size_t i = 0; i < n; ++i) vs.push_back(std::to_string(i + 1));
    std::vector<std::tuple<std::string, std::string, std::string>> arrows;
    std::size_t k = 0;
    auto name = [&k] { return std::string(1, static_cast<char>('a' + k++)); };
    for (std::size_t j = 1; j < n; ++j) {
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, j - 1)(rng);
        arrows.emplace_back(name(), vs[i], vs[j]);
    }
    for (std::size_t e = 0; e < extra && n > 1; ++e) {
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng);
        std::size_t j = std::uniform_int_distribution<std::size_t>(i + 1, n - 1)(rng);
        arrows.emplace_back(name(), vs[i], vs[j]);
    }
    return Quiver::from_names(vs, arrows);
}

/// Admissible ideal generated by a few random combinations of parallel paths of length >= 2.
inline Ideal random_ideal(std::mt19937& rng, const PathAlgebraPtr& alg, std::size_t gens)
{
    const Quiver& q = alg->quiver();
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t x = 0; x < q.vertex_count(); ++x)
        for (std::size_t y = 0; y < q.vertex_count(); ++y) {
            std::vector<std::size_t> long_paths;
            for (auto p : alg->parallel(x, y))
                if (alg->path(p).length() >= 2) long_paths.push_back(p);
            if (!long_paths.empty()) classes.push_back(long_paths);
        }
    std::vector<Element> g;
    for (std::size_t i = 0; i < gens && !classes.empty(); ++i) {
        const auto& cls = classes[rng() % classes.size()];
        Element e(alg);
        for (auto p : cls)
            if (rng() % 2 || cls.size() == 1) e.add_term(p, random_scalar(rng, alg->field(), true));
        g.push_back(e);
    }
    return groebner_basis(alg, g);
}

inline Field random_field(std::mt19937& rng)
{
    static const std::vector<Field> fields{Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(5)};
    return fields[rng() % fields.size()];
}

inline Vector random_vector(std::mt19937& rng, Field f, std::size_t n)
{
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_scalar(rng, f, false));
    return v;
}

inline Vector combine(const std::vector<Vector>& basis, const Vector& coeffs, Field f, std::size_t dim)
{
    Vector out = zero_vector(f, dim);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t k = 0; k < dim; ++k) out[k] += coeffs[i] * basis[i][k];
    return out;
}

/// Random automorphism with phi(I) = I: a product of up to three transvections
/// drawn from those fixing I (identity when there are none).
inline Automorphism random_stabilizer(std::mt19937& rng, const Ideal& I)
{
    const PathAlgebraPtr& alg = I.algebra();
    const Field f = alg->field();
    std::vector<Automorphism> fixing;
    for (const auto& bp : enumerate_bypasses(alg->quiver()))
        for (int k = 0; k < 2; ++k) {
            Automorphism t = Automorphism::transvection(alg, bp.arrow, bp.path, random_scalar(rng, f, true));
            if (apply_to_ideal(t, I) == I) fixing.push_back(t);
        }
    Automorphism psi = Automorphism::identity(alg);
    if (fixing.empty()) return psi;
    std::size_t n = 1 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) psi = fixing[rng() % fixing.size()].compose(psi);
    return psi;
}

}  // namespace testing_support
