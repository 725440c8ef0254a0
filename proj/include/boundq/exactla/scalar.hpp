#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "boundq/error.hpp"

namespace boundq {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Ground field descriptor: the rationals (characteristic 0) or a prime field GF(p).
class Field {
public:
    /// Largest characteristic accepted; keeps products of residues inside 64 bits.
    static constexpr std::uint64_t max_characteristic = (std::uint64_t{1} << 31) - 1;

    constexpr Field() = default;

    static constexpr Field rationals() { return Field{}; }

    static Field prime(std::uint64_t p)
    {
        if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
        if (p > max_characteristic)
            throw InvalidArgument("characteristic " + std::to_string(p) + " exceeds supported range");
        Field f;
        f.p_ = p;
        return f;
    }

    constexpr std::uint64_t characteristic() const { return p_; }
    constexpr bool is_rational() const { return p_ == 0; }
    constexpr bool is_prime_field() const { return p_ != 0; }

    std::string name() const { return is_rational() ? std::string("QQ") : "GF(" + std::to_string(p_) + ")"; }

    friend constexpr bool operator==(Field a, Field b) { return a.p_ == b.p_; }

    static constexpr bool is_prime(std::uint64_t n)
    {
        if (n < 2) return false;
        if (n % 2 == 0) return n == 2;
        for (std::uint64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }

private:
    std::uint64_t p_ = 0;
};

/// Exact element of a Field. Rationals are kept reduced; GF(p) residues live in [0, p).
class Scalar {
public:
    Scalar() = default;

    Scalar(Field f, long long v) : field_(f)
    {
        if (f.is_rational()) {
            q_ = v;
        } else {
            long long m = static_cast<long long>(f.characteristic());
            long long r = v % m;
            if (r < 0) r += m;
            r_ = static_cast<std::uint64_t>(r);
        }
    }

    Scalar(Field f, const BigInt& num, const BigInt& den) : field_(f)
    {
        if (den == 0) throw InvalidArgument("zero denominator");
        if (f.is_rational()) {
            q_ = den < 0 ? BigRational(-num, -den) : BigRational(num, den);
        } else {
            Scalar n = from_bigint(f, num);
            Scalar d = from_bigint(f, den);
            *this = n / d;
        }
    }

    static Scalar zero(Field f) { return Scalar(f, 0); }
    static Scalar one(Field f) { return Scalar(f, 1); }

    Field field() const { return field_; }
    bool is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
    bool is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

    /// Residue in [0, p); only meaningful over a prime field.
    std::uint64_t residue() const { return r_; }
    const BigRational& rational() const { return q_; }

    Scalar operator-() const
    {
        Scalar s = *this;
        if (field_.is_rational())
            s.q_ = -q_;
        else if (r_ != 0)
            s.r_ = field_.characteristic() - r_;
        return s;
    }

    Scalar& operator+=(const Scalar& o)
    {
        check(o);
        if (field_.is_rational()) {
            q_ += o.q_;
        } else {
            r_ += o.r_;
            if (r_ >= field_.characteristic()) r_ -= field_.characteristic();
        }
        return *this;
    }
    Scalar& operator-=(const Scalar& o) { return *this += -o; }
    Scalar& operator*=(const Scalar& o)
    {
        check(o);
        if (field_.is_rational())
            q_ *= o.q_;
        else
            r_ = (r_ * o.r_) % field_.characteristic();
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const
    {
        if (is_zero()) throw InvalidArgument("division by zero");
        Scalar s = *this;
        if (field_.is_rational()) {
            s.q_ = BigRational(1) / q_;
        } else {
            s.r_ = pow_mod(r_, field_.characteristic() - 2, field_.characteristic());
        }
        return s;
    }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        if (!(a.field_ == b.field_)) return false;
        return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
    }

    /// "p/q" (or "p") over QQ, decimal residue over GF(p).
    std::string to_string() const
    {
        if (field_.is_prime_field()) return std::to_string(r_);
        auto num = boost::multiprecision::numerator(q_);
        auto den = boost::multiprecision::denominator(q_);
        if (den == 1) return num.str();
        return num.str() + "/" + den.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

    /// Hash compatible with operator==.
    std::size_t hash() const
    {
        if (field_.is_prime_field()) return std::hash<std::uint64_t>{}(r_ * 1000003u + field_.characteristic());
        return std::hash<std::string>{}(to_string());
    }

private:
    void check(const Scalar& o) const
    {
        if (!(field_ == o.field_)) throw FieldMismatch(field_.name() + " vs " + o.field_.name());
    }

    static Scalar from_bigint(Field f, const BigInt& v)
    {
        BigInt m = f.characteristic();
        BigInt r = v % m;
        if (r < 0) r += m;
        return Scalar(f, static_cast<long long>(r));
    }

    static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
    {
        std::uint64_t r = 1 % m;
        b %= m;
        while (e) {
            if (e & 1) r = (r * b) % m;
            b = (b * b) % m;
            e >>= 1;
        }
        return r;
    }

    Field field_{};
    std::uint64_t r_ = 0;
    BigRational q_{};
};

}  // namespace boundq
