#pragma once

// Quaternions over the (-1,-1) multiplication table. The same template serves
// exact coordinates (FieldElement, i.e. B_K = (-1,-1 / K)) and binary64
// coordinates (Hamilton's quaternions as a geometric carrier).

#include "quatmod/quadfield.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace quatmod {

// Scalar adapters: the exact scalar needs its field to build constants.
inline double zero_like(double) { return 0.0; }
inline double one_like(double) { return 1.0; }
inline bool is_exact_zero(double x) { return x == 0.0; }
inline FieldElement zero_like(const FieldElement& x) { return FieldElement::zero(x.field()); }
inline FieldElement one_like(const FieldElement& x) { return FieldElement::one(x.field()); }
inline bool is_exact_zero(const FieldElement& x) { return x.is_zero(); }

template <class T>
class Quaternion {
public:
    using scalar_type = T;

    Quaternion() = default;
    Quaternion(T x0, T x1, T x2, T x3) : x_{std::move(x0), std::move(x1), std::move(x2), std::move(x3)} {}

    static Quaternion scalar(const T& s)
    {
        T z = zero_like(s);
        return {s, z, z, z};
    }

    const T& operator[](int n) const { return x_[n]; }
    T& operator[](int n) { return x_[n]; }
    const std::array<T, 4>& coords() const { return x_; }

    const T& re() const { return x_[0]; }

    Quaternion conj() const { return {x_[0], -x_[1], -x_[2], -x_[3]}; }

    /// q * conj(q), a scalar.
    T nrd() const { return x_[0] * x_[0] + x_[1] * x_[1] + x_[2] * x_[2] + x_[3] * x_[3]; }

    /// q + conj(q), a scalar.
    T trd() const { return x_[0] + x_[0]; }

    bool is_zero() const
    {
        return is_exact_zero(x_[0]) && is_exact_zero(x_[1]) && is_exact_zero(x_[2]) && is_exact_zero(x_[3]);
    }

    /// Pure means trd = 0, tested on exact zero of the real coordinate.
    bool is_pure() const { return is_exact_zero(x_[0]); }

    /// (q - conj(q))/2.
    Quaternion pure_part() const { return {zero_like(x_[0]), x_[1], x_[2], x_[3]}; }

    Quaternion inverse() const
    {
        if (is_zero()) throw std::domain_error("inverse of the zero quaternion");
        T s = one_like(x_[0]) / nrd();
        return conj() * s;
    }

    Quaternion operator-() const { return {-x_[0], -x_[1], -x_[2], -x_[3]}; }

    friend Quaternion operator+(const Quaternion& p, const Quaternion& q)
    {
        return {p.x_[0] + q.x_[0], p.x_[1] + q.x_[1], p.x_[2] + q.x_[2], p.x_[3] + q.x_[3]};
    }
    friend Quaternion operator-(const Quaternion& p, const Quaternion& q)
    {
        return {p.x_[0] - q.x_[0], p.x_[1] - q.x_[1], p.x_[2] - q.x_[2], p.x_[3] - q.x_[3]};
    }
    friend Quaternion operator*(const Quaternion& p, const Quaternion& q)
    {
        const auto& a = p.x_;
        const auto& b = q.x_;
        return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
    }
    friend Quaternion operator*(const Quaternion& p, const T& s) { return {p.x_[0] * s, p.x_[1] * s, p.x_[2] * s, p.x_[3] * s}; }
    friend Quaternion operator*(const T& s, const Quaternion& p) { return p * s; }

    Quaternion& operator+=(const Quaternion& q) { return *this = *this + q; }
    Quaternion& operator-=(const Quaternion& q) { return *this = *this - q; }
    Quaternion& operator*=(const Quaternion& q) { return *this = *this * q; }

    friend bool operator==(const Quaternion& p, const Quaternion& q) { return p.x_ == q.x_; }
    friend bool operator!=(const Quaternion& p, const Quaternion& q) { return !(p == q); }

private:
    std::array<T, 4> x_{};
};

using QuatExact = Quaternion<FieldElement>;
using QuatF = Quaternion<double>;

/// Euclidean length of a floating quaternion.
inline double abs(const QuatF& q) { return std::sqrt(q.nrd()); }

inline double dist(const QuatF& p, const QuatF& q) { return abs(p - q); }

inline std::ostream& operator<<(std::ostream& os, const QuatF& q)
{
    return os << '(' << q[0] << ", " << q[1] << ", " << q[2] << ", " << q[3] << ')';
}

inline std::ostream& operator<<(std::ostream& os, const QuatExact& q)
{
    return os << '(' << q[0] << ", " << q[1] << ", " << q[2] << ", " << q[3] << ')';
}

// Exact construction helpers.

inline QuatExact quat(const QuadraticField& k, const Rational& x0, const Rational& x1 = 0,
                      const Rational& x2 = 0, const Rational& x3 = 0)
{
    return {FieldElement(k, x0), FieldElement(k, x1), FieldElement(k, x2), FieldElement(k, x3)};
}

inline QuatExact quat_one(const QuadraticField& k) { return quat(k, 1); }
inline QuatExact quat_zero(const QuadraticField& k) { return quat(k, 0); }

inline const QuadraticField& field_of(const QuatExact& q) { return q[0].field(); }

/// Coordinatewise Galois conjugate sigma(q).
inline QuatExact galois_conj(const QuatExact& q)
{
    return {q[0].conj(), q[1].conj(), q[2].conj(), q[3].conj()};
}

/// Total order on exact quaternions: coordinates x0..x3 in turn, each
/// compared by its rational theta-basis pair (a, b).
inline bool lex_less(const QuatExact& p, const QuatExact& q)
{
    for (int c = 0; c < 4; ++c) {
        if (p[c].a() != q[c].a()) return p[c].a() < q[c].a();
        if (p[c].b() != q[c].b()) return p[c].b() < q[c].b();
    }
    return false;
}

struct LexLess {
    bool operator()(const QuatExact& p, const QuatExact& q) const { return lex_less(p, q); }
};

enum class Place { first, second };

/// Image of q under one of the two archimedean places (identical over Q).
inline QuatF to_float(const QuatExact& q, Place place = Place::first)
{
    auto pick = [place](const FieldElement& x) {
        auto [u, v] = x.embed_real_pair();
        return place == Place::first ? u : v;
    };
    return {pick(q[0]), pick(q[1]), pick(q[2]), pick(q[3])};
}

struct QuaternionPair {
    QuatF first;
    QuatF second;
};

/// q -> (q, sigma(q)) in H x H.
inline QuaternionPair galois_twist(const QuatExact& q)
{
    return {to_float(q, Place::first), to_float(q, Place::second)};
}

/// A point of H u {infinity}; infinity is an explicit tag.
template <class T>
class Extended {
public:
    Extended(Quaternion<T> q) : q_(std::move(q)) {} // NOLINT(google-explicit-constructor)

    static Extended infinity()
    {
        Extended e;
        e.inf_ = true;
        return e;
    }

    bool is_infinity() const { return inf_; }
    const Quaternion<T>& value() const
    {
        if (inf_) throw std::logic_error("point at infinity has no finite coordinates");
        return q_;
    }

    friend bool operator==(const Extended& x, const Extended& y)
    {
        if (x.inf_ || y.inf_) return x.inf_ == y.inf_;
        return x.q_ == y.q_;
    }

private:
    Extended() = default;
    bool inf_ = false;
    Quaternion<T> q_{};
};

using ExtQuatF = Extended<double>;
using ExtQuatExact = Extended<FieldElement>;

} // namespace quatmod
