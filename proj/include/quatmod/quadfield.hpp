#pragma once

// Exact arithmetic in K = Q(sqrt(n)) for squarefree n > 1, with the ring of
// integers Z_K = Z + Z*theta, theta = sqrt(n) or (1 + sqrt(n))/2 according
// to n mod 4. The descriptor n = 1 stands for K = Q itself (theta absent,
// Galois conjugation trivial) so that the quaternion code has a single field
// abstraction for the Bianchi case.

#include "quatmod/rational.hpp"

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace quatmod {

class FieldMismatch : public std::invalid_argument {
public:
    FieldMismatch() : std::invalid_argument("operands live in different fields") {}
};

enum class ThetaKind { none, sqrt_n, half_one_plus_sqrt_n };

inline bool is_squarefree(long n)
{
    if (n < 1) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

class QuadraticField {
public:
    /// K = Q.
    QuadraticField() = default;

    explicit QuadraticField(long n) : n_(n)
    {
        if (n == 1) return;
        if (n < 1 || !is_squarefree(n))
            throw std::invalid_argument("n = " + std::to_string(n) +
                                        " is not a squarefree integer > 1");
        kind_ = (n % 4 == 1) ? ThetaKind::half_one_plus_sqrt_n : ThetaKind::sqrt_n;
    }

    static QuadraticField rationals() { return QuadraticField(); }

    long n() const { return n_; }
    ThetaKind theta_kind() const { return kind_; }
    bool is_rational() const { return kind_ == ThetaKind::none; }
    /// Z-rank of Z_K.
    int degree() const { return is_rational() ? 1 : 2; }

    std::string theta_description() const
    {
        switch (kind_) {
        case ThetaKind::none: return "none";
        case ThetaKind::sqrt_n: return "sqrt(" + std::to_string(n_) + ")";
        default: return "(1+sqrt(" + std::to_string(n_) + "))/2";
        }
    }

    friend bool operator==(const QuadraticField& x, const QuadraticField& y) { return x.n_ == y.n_; }

private:
    long n_ = 1;
    ThetaKind kind_ = ThetaKind::none;
};

/// a + b*theta with rational a, b.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(QuadraticField k, Rational a, Rational b = 0) : k_(k), a_(std::move(a)), b_(std::move(b))
    {
        if (k_.is_rational() && b_ != 0)
            throw std::invalid_argument("theta coordinate must vanish over Q");
    }
    FieldElement(QuadraticField k, long a) : k_(k), a_(a) {}

    static FieldElement zero(QuadraticField k) { return {k, Rational(0)}; }
    static FieldElement one(QuadraticField k) { return {k, Rational(1)}; }
    static FieldElement theta(QuadraticField k)
    {
        if (k.is_rational()) throw std::invalid_argument("theta is absent over Q");
        return {k, Rational(0), Rational(1)};
    }
    /// x + y*sqrt(n) re-expressed in the theta basis.
    static FieldElement from_sqrt_basis(QuadraticField k, const Rational& x, const Rational& y)
    {
        switch (k.theta_kind()) {
        case ThetaKind::none:
            if (y != 0) throw std::invalid_argument("sqrt(n) is absent over Q");
            return {k, x};
        case ThetaKind::sqrt_n: return {k, x, y};
        default: return {k, x - y, 2 * y}; // sqrt(n) = 2*theta - 1
        }
    }

    const QuadraticField& field() const { return k_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    bool is_integral() const { return is_integer(a_) && is_integer(b_); }

    /// (x, y) with value x + y*sqrt(n).
    std::pair<Rational, Rational> sqrt_basis() const
    {
        if (k_.theta_kind() == ThetaKind::half_one_plus_sqrt_n) {
            Rational h = b_ / 2;
            return {a_ + h, h};
        }
        return {a_, b_};
    }

    FieldElement operator-() const { return {k_, -a_, -b_}; }

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y)
    {
        check_same(x, y);
        return {x.k_, x.a_ + y.a_, x.b_ + y.b_};
    }
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y)
    {
        check_same(x, y);
        return {x.k_, x.a_ - y.a_, x.b_ - y.b_};
    }
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y)
    {
        check_same(x, y);
        Rational a = x.a_ * y.a_;
        Rational b = x.a_ * y.b_ + x.b_ * y.a_;
        Rational bb = x.b_ * y.b_;
        switch (x.k_.theta_kind()) {
        case ThetaKind::none: break;
        case ThetaKind::sqrt_n: a += bb * x.k_.n(); break;
        default: // theta^2 = theta + (n-1)/4
            a += bb * frac(x.k_.n() - 1, 4);
            b += bb;
            break;
        }
        return {x.k_, std::move(a), std::move(b)};
    }
    friend FieldElement operator*(const FieldElement& x, const Rational& r) { return {x.k_, x.a_ * r, x.b_ * r}; }
    friend FieldElement operator*(const Rational& r, const FieldElement& x) { return x * r; }

    friend FieldElement operator/(const FieldElement& x, const FieldElement& y)
    {
        check_same(x, y);
        return x * y.inverse();
    }

    FieldElement& operator+=(const FieldElement& y) { return *this = *this + y; }
    FieldElement& operator-=(const FieldElement& y) { return *this = *this - y; }
    FieldElement& operator*=(const FieldElement& y) { return *this = *this * y; }

    /// Galois conjugate; sqrt(n) -> -sqrt(n).
    FieldElement conj() const
    {
        switch (k_.theta_kind()) {
        case ThetaKind::none: return *this;
        case ThetaKind::sqrt_n: return {k_, a_, -b_};
        default: return {k_, a_ + b_, -b_}; // sigma(theta) = 1 - theta
        }
    }

    /// Product over the real embeddings (the value itself over Q).
    Rational norm() const
    {
        switch (k_.theta_kind()) {
        case ThetaKind::none: return a_;
        case ThetaKind::sqrt_n: return a_ * a_ - b_ * b_ * k_.n();
        default: return a_ * a_ + a_ * b_ - b_ * b_ * frac(k_.n() - 1, 4);
        }
    }

    /// Sum over the real embeddings (the value itself over Q).
    Rational trace() const
    {
        switch (k_.theta_kind()) {
        case ThetaKind::none: return a_;
        case ThetaKind::sqrt_n: return 2 * a_;
        default: return 2 * a_ + b_;
        }
    }

    FieldElement inverse() const
    {
        if (is_zero()) throw std::domain_error("division by zero in " + k_.theta_description());
        Rational nm = norm();
        FieldElement c = conj();
        if (k_.is_rational()) return {k_, Rational(1 / a_)};
        return {k_, c.a_ / nm, c.b_ / nm};
    }

    FieldElement pow(long e) const
    {
        FieldElement base = e < 0 ? inverse() : *this;
        unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
        FieldElement r = one(k_);
        while (k != 0) {
            if (k & 1UL) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    /// Exact sign under the canonical embedding sqrt(n) > 0.
    int sign() const
    {
        auto [x, y] = sqrt_basis();
        int sx = sgn(x), sy = sgn(y);
        if (k_.is_rational() || sy == 0) return sx;
        if (sx == 0) return sy;
        if (sx == sy) return sx;
        // opposite signs: compare x^2 with n*y^2
        int c = cmp(x * x, y * y * k_.n());
        return c > 0 ? sx : sy;
    }

    /// Values under the two real embeddings (x, sigma(x)), each correctly rounded.
    std::pair<double, double> embed_real_pair() const
    {
        auto [x, y] = sqrt_basis();
        long n = k_.n();
        return {surd_to_double(x, y, n), surd_to_double(x, -y, n)};
    }

    double to_double() const { return embed_real_pair().first; }

    /// Serialized as "a", "a+b*theta", "a-theta", "theta", ...
    std::string to_string() const
    {
        if (b_ == 0) return quatmod::to_string(a_);
        std::string bs = b_ == 1 ? "" : b_ == -1 ? "-" : quatmod::to_string(b_) + "*";
        std::string prefix = a_ == 0 ? "" : quatmod::to_string(a_);
        if (b_ > 0 && !prefix.empty()) prefix += "+";
        return prefix + bs + "theta";
    }

    std::string to_sqrt_string() const
    {
        auto [x, y] = sqrt_basis();
        if (y == 0) return quatmod::to_string(x);
        std::string root = "sqrt(" + std::to_string(k_.n()) + ")";
        std::string surd = y == 1 ? root : y == -1 ? "-" + root : quatmod::to_string(y) + "*" + root;
        if (x == 0) return surd;
        return quatmod::to_string(x) + (y > 0 ? "+" : "") + surd;
    }

    /// Inverse of to_string: "3", "-theta", "1/2+3/2*theta", ...
    static FieldElement parse(QuadraticField k, std::string_view s)
    {
        constexpr std::string_view tag = "theta";
        if (s.size() < tag.size() || s.substr(s.size() - tag.size()) != tag) return {k, parse_rational(s)};
        if (k.is_rational()) throw ParseError("theta term over Q in '" + std::string(s) + "'");
        std::string_view t = s.substr(0, s.size() - tag.size());
        bool starred = !t.empty() && t.back() == '*';
        if (starred) t.remove_suffix(1);
        // split at the last sign that is not the leading one
        std::size_t cut = 0;
        for (std::size_t i = t.size(); i-- > 1;)
            if (t[i] == '+' || t[i] == '-') {
                cut = i;
                break;
            }
        Rational a = 0;
        if (cut != 0) a = parse_rational(t.substr(0, cut));
        std::string_view coef = t.substr(cut);
        Rational b;
        if (coef.empty() || coef == "+" || coef == "-") {
            if (starred) throw ParseError("missing theta coefficient in '" + std::string(s) + "'");
            b = coef == "-" ? -1 : 1;
        } else {
            if (!starred) throw ParseError("expected '*' before theta in '" + std::string(s) + "'");
            b = parse_rational(coef);
        }
        return {k, a, b};
    }

    friend bool operator==(const FieldElement& x, const FieldElement& y)
    {
        return x.k_ == y.k_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator<(const FieldElement& x, const FieldElement& y) { return (x - y).sign() < 0; }
    friend bool operator>(const FieldElement& x, const FieldElement& y) { return y < x; }

    friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

private:
    static void check_same(const FieldElement& x, const FieldElement& y)
    {
        if (!(x.k_ == y.k_)) throw FieldMismatch();
    }

    QuadraticField k_;
    Rational a_ = 0;
    Rational b_ = 0;
};

inline FieldElement galois_conj(const FieldElement& x) { return x.conj(); }

/// Fundamental unit eps > 1 of Z_K, from the continued fraction of theta.
///
/// theta = (P + sqrt(D))/Q with Q | D - P^2; the first convergent p/q for
/// which p - q*theta is a unit gives eps = sigma(p - q*theta).
inline FieldElement fundamental_unit(const QuadraticField& k)
{
    if (k.is_rational()) throw std::invalid_argument("Z has no fundamental unit");
    const Integer D = k.n();
    Integer s;
    mpz_sqrt(s.get_mpz_t(), D.get_mpz_t());
    bool half = k.theta_kind() == ThetaKind::half_one_plus_sqrt_n;
    Integer P = half ? 1 : 0;
    Integer Q = half ? 2 : 1;
    Integer p = 1, p_prev = 0; // p_{-1}, p_{-2}
    Integer q = 0, q_prev = 1;
    for (;;) {
        Integer a;
        Integer num = P + s;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
        Integer p_next = a * p + p_prev;
        Integer q_next = a * q + q_prev;
        p_prev = p;
        p = p_next;
        q_prev = q;
        q = q_next;
        FieldElement small(k, Rational(p), Rational(-q));
        Rational nm = small.norm();
        if (nm == 1 || nm == -1) {
            FieldElement eps = small.conj();
            if (eps.sign() < 0) eps = -eps;
            if (eps < FieldElement::one(k)) eps = eps.inverse();
            return eps;
        }
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
}

/// Generator of the totally positive units: eps if N(eps) = 1, else eps^2.
inline FieldElement totally_positive_generator(const QuadraticField& k)
{
    FieldElement eps = fundamental_unit(k);
    return eps.norm() == 1 ? eps : eps * eps;
}

} // namespace quatmod
