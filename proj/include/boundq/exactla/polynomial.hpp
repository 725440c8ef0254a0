#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "boundq/error.hpp"
#include "boundq/exactla/matrix.hpp"
#include "boundq/exactla/scalar.hpp"

namespace boundq {

/// Univariate polynomial over a Field, coefficients stored low degree first.
/// The zero polynomial has no coefficients.
class Polynomial {
public:
    explicit Polynomial(Field f) : field_(f) {}
    Polynomial(Field f, Vector coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

    static Polynomial from_ints(Field f, const std::vector<long long>& low_first)
    {
        Vector v;
        for (auto x : low_first) v.emplace_back(f, x);
        return Polynomial(f, std::move(v));
    }
    static Polynomial x_minus(const Scalar& r)
    {
        return Polynomial(r.field(), Vector{-r, Scalar::one(r.field())});
    }
    static Polynomial constant(const Scalar& c) { return Polynomial(c.field(), Vector{c}); }

    Field field() const { return field_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Vector& coefficients() const { return c_; }
    Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Scalar::zero(field_); }
    Scalar leading() const { return c_.empty() ? Scalar::zero(field_) : c_.back(); }

    Polynomial monic() const
    {
        if (is_zero()) return *this;
        Scalar inv = leading().inverse();
        Vector v = c_;
        for (auto& x : v) x *= inv;
        return Polynomial(field_, std::move(v));
    }

    Scalar operator()(const Scalar& x) const
    {
        Scalar acc = Scalar::zero(field_);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// Evaluation at a square matrix (Horner).
    Matrix operator()(const Matrix& m) const
    {
        if (!m.square()) throw InvalidArgument("polynomial evaluated at non-square matrix");
        Matrix acc(field_, m.rows(), m.cols());
        const Matrix id = Matrix::identity(field_, m.rows());
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * m + (*it) * id;
        return acc;
    }

    Polynomial derivative() const
    {
        Vector v;
        for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(Scalar(field_, static_cast<long long>(i)) * c_[i]);
        return Polynomial(field_, std::move(v));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        Vector v = zero_vector(a.field_, std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
        return Polynomial(a.field_, std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b)
    {
        Vector v = zero_vector(a.field_, std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
        return Polynomial(a.field_, std::move(v));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return Polynomial(a.field_);
        Vector v = zero_vector(a.field_, a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(a.field_, std::move(v));
    }

    /// Euclidean division: returns (quotient, remainder).
    friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b)
    {
        if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
        Polynomial r = a;
        Vector q = zero_vector(a.field_, a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0);
        const Scalar inv = b.leading().inverse();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            std::size_t shift = static_cast<std::size_t>(r.degree() - b.degree());
            Scalar k = r.leading() * inv;
            q[shift] = k;
            for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i + shift] -= k * b.c_[i];
            r.trim();
        }
        return {Polynomial(a.field_, std::move(q)), std::move(r)};
    }
    friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return divmod(a, b).second; }
    friend Polynomial operator/(const Polynomial& a, const Polynomial& b) { return divmod(a, b).first; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

    std::string to_string() const
    {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (c_[k].is_zero()) continue;
            if (!s.empty()) s += " + ";
            if (k == 0 || !c_[k].is_one()) s += "(" + c_[k].to_string() + ")";
            if (k >= 1) s += "x";
            if (k > 1) s += "^" + std::to_string(k);
        }
        return s;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Field field_;
    Vector c_;
};

inline Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        Polynomial r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Monic least-degree polynomial annihilating a square matrix. Found by the
/// first linear dependency among I, M, M^2, ... (vectorised).
inline Polynomial minimal_polynomial(const Matrix& m)
{
    if (!m.square()) throw InvalidArgument("minimal polynomial of non-square matrix");
    const Field f = m.field();
    const std::size_t n = m.rows();
    if (n == 0) return Polynomial(f, Vector{Scalar::one(f)});
    const std::size_t N = n * n;

    // Row-reduce the powers, tracking each reduced row as a combination of powers.
    std::vector<Vector> rows;       // reduced vectorised powers
    std::vector<std::size_t> piv;   // pivot of each row
    std::vector<Vector> combos;     // coefficients over powers 0..k
    Matrix power = Matrix::identity(f, n);
    for (std::size_t k = 0; k <= n; ++k) {
        Vector v(power.entries().begin(), power.entries().end());
        Vector combo = zero_vector(f, k + 1);
        combo[k] = Scalar::one(f);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Scalar c = v[piv[i]];
            if (c.is_zero()) continue;
            for (std::size_t j = 0; j < N; ++j)
                if (!rows[i][j].is_zero()) v[j] -= c * rows[i][j];
            for (std::size_t j = 0; j < combos[i].size(); ++j) combo[j] -= c * combos[i][j];
        }
        std::size_t p = 0;
        while (p < N && v[p].is_zero()) ++p;
        if (p == N) return Polynomial(f, std::move(combo)).monic();
        Scalar inv = v[p].inverse();
        for (auto& x : v) x *= inv;
        for (auto& x : combo) x *= inv;
        rows.push_back(std::move(v));
        piv.push_back(p);
        combos.push_back(std::move(combo));
        power = power * m;
    }
    throw InvariantViolation("minimal polynomial exceeds matrix size (Cayley-Hamilton violated)");
}

struct RootsResult {
    /// Roots with multiplicity, in increasing canonical order.
    std::vector<Scalar> roots;
    /// True iff the polynomial is a product of linear factors over the field.
    bool splits = false;
};

namespace detail {

/// Distinct roots of a polynomial over GF(p), p small: exhaustive search.
inline std::vector<Scalar> prime_field_roots_exhaustive(const Polynomial& poly)
{
    const Field f = poly.field();
    std::vector<Scalar> out;
    for (std::uint64_t x = 0; x < f.characteristic(); ++x) {
        Scalar s(f, static_cast<long long>(x));
        if (poly(s).is_zero()) out.push_back(s);
    }
    return out;
}

inline Polynomial powmod(Polynomial base, std::uint64_t e, const Polynomial& mod)
{
    const Field f = base.field();
    Polynomial r(f, Vector{Scalar::one(f)});
    base = base % mod;
    while (e) {
        if (e & 1) r = (r * base) % mod;
        base = (base * base) % mod;
        e >>= 1;
    }
    return r;
}

/// Distinct roots over a large prime field: gcd with x^p - x, then deterministic
/// equal-degree splitting with shifts (x + a)^((p-1)/2) - 1, a = 0, 1, 2, ...
inline void split_linear_product(const Polynomial& g, std::vector<Scalar>& out)
{
    const Field f = g.field();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        Polynomial m = g.monic();
        out.push_back(-m.coeff(0));
        return;
    }
    const std::uint64_t p = f.characteristic();
    for (std::uint64_t a = 0; a < p; ++a) {
        Polynomial shifted(f, Vector{Scalar(f, static_cast<long long>(a)), Scalar::one(f)});
        Polynomial h = powmod(shifted, (p - 1) / 2, g) - Polynomial(f, Vector{Scalar::one(f)});
        Polynomial d = gcd(g, h);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear_product(d, out);
            split_linear_product(g / d, out);
            return;
        }
    }
    throw InvariantViolation("failed to split product of linear factors");
}

inline std::vector<Scalar> prime_field_roots(const Polynomial& poly)
{
    const Field f = poly.field();
    const std::uint64_t p = f.characteristic();
    if (p <= (1u << 16)) return prime_field_roots_exhaustive(poly);
    Polynomial x(f, Vector{Scalar::zero(f), Scalar::one(f)});
    Polynomial g = gcd(poly, powmod(x, p, poly) - x);
    std::vector<Scalar> out;
    split_linear_product(g, out);
    return out;
}

inline std::vector<BigInt> divisors(BigInt n)
{
    if (n < 0) n = -n;
    std::vector<BigInt> small, large;
    for (BigInt d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Distinct rational roots via the rational root theorem on the integer-scaled
/// polynomial. The caller removes the factor x beforehand.
inline std::vector<Scalar> rational_roots(const Polynomial& poly)
{
    const Field f = poly.field();
    BigInt lcm = 1;
    for (const auto& c : poly.coefficients()) {
        BigInt d = boost::multiprecision::denominator(c.rational());
        lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
    }
    std::vector<BigInt> ints;
    for (const auto& c : poly.coefficients())
        ints.push_back(boost::multiprecision::numerator(c.rational() * BigRational(lcm)));
    const BigInt a0 = ints.front();
    const BigInt an = ints.back();
    std::vector<Scalar> out;
    if (a0 == 0) throw InvariantViolation("rational_roots expects nonzero constant term");
    for (const auto& num : divisors(a0))
        for (const auto& den : divisors(an))
            for (int sign : {1, -1}) {
                Scalar cand(f, BigInt(sign) * num, den);
                if (!poly(cand).is_zero()) continue;
                if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
            }
    return out;
}

inline bool scalar_less(const Scalar& a, const Scalar& b)
{
    if (a.field().is_prime_field()) return a.residue() < b.residue();
    return a.rational() < b.rational();
}

}  // namespace detail

/// Roots of a nonzero polynomial over its field, with multiplicities.
/// Over GF(p) the search is exact; over QQ candidates come from the rational
/// root theorem applied to the squarefree part. `splits` is false whenever an
/// irreducible factor of degree >= 2 remains.
inline RootsResult roots_over_field(const Polynomial& poly)
{
    if (poly.is_zero()) throw InvalidArgument("roots of the zero polynomial");
    const Field f = poly.field();
    RootsResult res;
    Polynomial rest = poly.monic();

    // factor out x first so the rational root theorem sees a nonzero constant term
    while (rest.degree() >= 1 && rest.coeff(0).is_zero()) {
        res.roots.push_back(Scalar::zero(f));
        rest = Polynomial(f, Vector(rest.coefficients().begin() + 1, rest.coefficients().end()));
    }

    if (rest.degree() >= 1) {
        Polynomial sqfree = rest;
        Polynomial g = gcd(rest, rest.derivative());
        if (g.degree() > 0) sqfree = rest / g;
        // over GF(p) the derivative may vanish (p-th powers); fall back to rest
        if (sqfree.degree() < 1) sqfree = rest;

        std::vector<Scalar> distinct = f.is_rational() ? detail::rational_roots(sqfree) : detail::prime_field_roots(sqfree);
        for (const auto& r : distinct) {
            Polynomial lin = Polynomial::x_minus(r);
            for (;;) {
                auto [q, rem] = divmod(rest, lin);
                if (!rem.is_zero()) break;
                res.roots.push_back(r);
                rest = q;
            }
        }
    }
    res.splits = rest.degree() == 0;
    std::sort(res.roots.begin(), res.roots.end(), detail::scalar_less);
    return res;
}

/// True iff the polynomial splits over its field with pairwise distinct roots.
inline bool splits_squarefree(const Polynomial& poly)
{
    auto r = roots_over_field(poly);
    if (!r.splits) return false;
    for (std::size_t i = 1; i < r.roots.size(); ++i)
        if (r.roots[i] == r.roots[i - 1]) return false;
    return true;
}

}  // namespace boundq
