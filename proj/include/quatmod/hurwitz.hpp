#pragma once

// Euclidean arithmetic in the Hurwitz order Hur(Z) = Z<1, i, j, xi>, the
// one-cusp Bezout matrix, and reduction of H^5 points into the chimney
// { |x_n| <= 1/2, |q|^2 + t^2 >= 1 }.

#include "quatmod/generators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quatmod {

inline const QuadraticField& rationals_field()
{
    static const QuadraticField q;
    return q;
}

inline bool is_hurwitz_integer(const QuatExact& q)
{
    if (!field_of(q).is_rational()) return false;
    bool all_int = true, all_half = true;
    for (int n = 0; n < 4; ++n) {
        const Rational& x = q[n].a();
        all_int = all_int && is_integer(x);
        all_half = all_half && x.get_den() == 2;
    }
    return all_int || all_half;
}

namespace detail {

inline void require_hurwitz(const QuatExact& q, const char* what)
{
    if (!is_hurwitz_integer(q)) {
        std::ostringstream os;
        os << what << " = " << q << " is not a Hurwitz integer";
        throw std::invalid_argument(os.str());
    }
}

inline std::vector<QuatExact> hurwitz_units()
{
    const QuadraticField& k = rationals_field();
    std::vector<QuatExact> u;
    for (int n = 0; n < 4; ++n)
        for (int s : {1, -1}) {
            QuatExact e = quat_zero(k);
            e[n] = FieldElement(k, s);
            u.push_back(e);
        }
    for (int m = 0; m < 16; ++m)
        u.push_back(quat(k, m & 1 ? frac(-1, 2) : frac(1, 2), m & 2 ? frac(-1, 2) : frac(1, 2),
                         m & 4 ? frac(-1, 2) : frac(1, 2), m & 8 ? frac(-1, 2) : frac(1, 2)));
    return u;
}

} // namespace detail

/// a = b*quot + rem with quot a Hurwitz integer nearest to b^-1 a: minimal
/// nrd(rem), ties broken by the lexicographically smallest rem.
inline std::pair<QuatExact, QuatExact> right_divmod(const QuatExact& a, const QuatExact& b)
{
    detail::require_hurwitz(a, "dividend");
    detail::require_hurwitz(b, "divisor");
    if (b.is_zero()) throw std::domain_error("division by zero");
    const QuadraticField& k = field_of(a);
    const QuatExact x = b.inverse() * a;

    std::vector<QuatExact> cand;
    QuatExact lip = quat_zero(k);
    for (int n = 0; n < 4; ++n) lip[n] = FieldElement(k, Rational(round_of(x[n].a())));
    cand.push_back(lip);
    for (int n = 0; n < 4; ++n)
        for (int s : {1, -1}) {
            QuatExact y = lip;
            y[n] += FieldElement(k, s);
            cand.push_back(y);
        }
    Rational lo[4];
    for (int n = 0; n < 4; ++n) lo[n] = Rational(floor_of(x[n].a() - frac(1, 2))) + frac(1, 2);
    for (int m = 0; m < 16; ++m) {
        QuatExact y = quat_zero(k);
        for (int n = 0; n < 4; ++n) y[n] = FieldElement(k, lo[n] + ((m >> n) & 1));
        cand.push_back(y);
    }

    std::optional<std::pair<QuatExact, QuatExact>> best;
    Rational best_norm;
    for (const auto& q : cand) {
        QuatExact r = a - b * q;
        Rational nr = r.nrd().a();
        if (!best || nr < best_norm || (nr == best_norm && lex_less(r, best->second))) {
            best = std::make_pair(q, r);
            best_norm = nr;
        }
    }
    if (!(best_norm < b.nrd().a())) throw std::logic_error("Euclidean step failed to reduce the norm");
    return *best;
}

/// Generator g of the right ideal aO + bO, so that a = g x and b = g y with
/// x, y Hurwitz. Normalized by the unit u making g*u lexicographically largest.
inline QuatExact right_gcd(QuatExact a, QuatExact b)
{
    detail::require_hurwitz(a, "a");
    detail::require_hurwitz(b, "b");
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zeros");
    while (!b.is_zero()) {
        QuatExact r = right_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    QuatExact best = a;
    for (const auto& u : detail::hurwitz_units()) {
        QuatExact c = a * u;
        if (lex_less(best, c)) best = c;
    }
    return best;
}

inline bool is_hurwitz_unit(const QuatExact& q) { return is_hurwitz_integer(q) && q.nrd().a() == 1; }

struct BezoutCusp {
    QuatMat2Exact gamma; // [[alpha, nu], [c, mu]]
    QuatExact mu;
    QuatExact nu;
};

/// gamma = [[alpha, nu], [c, mu]] with alpha mu - c nu = 1, all entries in
/// Hur(Z); F_gamma(inf) = alpha c^-1.
inline BezoutCusp bezout_cusp_matrix(const QuatExact& alpha, long c)
{
    detail::require_hurwitz(alpha, "alpha");
    if (c == 0) throw std::invalid_argument("c must be nonzero");
    const QuadraticField& k = field_of(alpha);
    const QuatExact cq = quat(k, c);

    // r_m = alpha s_m + c t_m
    QuatExact r0 = alpha, r1 = cq;
    QuatExact s0 = quat_one(k), s1 = quat_zero(k);
    QuatExact t0 = quat_zero(k), t1 = quat_one(k);
    while (!r1.is_zero()) {
        auto [q, r] = right_divmod(r0, r1);
        QuatExact s2 = s0 - s1 * q, t2 = t0 - t1 * q;
        r0 = std::move(r1), r1 = std::move(r);
        s0 = std::move(s1), s1 = std::move(s2);
        t0 = std::move(t1), t1 = std::move(t2);
    }
    if (!is_hurwitz_unit(r0)) {
        std::ostringstream os;
        os << "alpha and c are not coprime (common divisor " << r0 << ")";
        throw std::invalid_argument(os.str());
    }
    QuatExact ginv = r0.inverse();
    QuatExact mu = s0 * ginv;
    QuatExact nu = -(t0 * ginv);
    if (!alpha.is_zero()) {
        auto [q, r] = right_divmod(nu, alpha);
        nu = r;
        mu = mu - cq * q;
    }
    return {{alpha, nu, cq, mu}, mu, nu};
}

// Reduction into the chimney.

class ChimneyError : public std::runtime_error {
public:
    ChimneyError(const std::string& what, std::vector<std::string> trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}
    const std::vector<std::string>& trace() const { return trace_; }

private:
    std::vector<std::string> trace_;
};

struct ChimneyPoint {
    H5Point p;
    Word witness_word;
    std::size_t inversions = 0;
};

inline bool in_chimney(const H5Point& p, double tol = 1e-9)
{
    for (int n = 0; n < 4; ++n)
        if (std::abs(p.q[n]) > 0.5 + tol) return false;
    return p.q.nrd() + p.t * p.t >= 1 - tol;
}

/// Indices into generators(hurwitz over Q).
namespace chimney_gen {
inline constexpr std::size_t inversion = 0, one = 1, i = 2, j = 3, xi = 4;
}

inline ChimneyPoint reduce_to_chimney(const H5Point& start, std::size_t max_steps = 10000)
{
    if (!(start.t > 0)) throw std::domain_error("height must be positive");
    ChimneyPoint out{start, {}, 0};
    H5Point& p = out.p;
    std::vector<std::string> trace;
    for (std::size_t step = 0; step < max_steps; ++step) {
        long n[4];
        for (int c = 0; c < 4; ++c) n[c] = std::lround(p.q[c]);
        if (n[0] | n[1] | n[2] | n[3]) {
            // -(n0 + n1 i + n2 j + n3 k) with k = 2 xi - 1 - i - j
            const std::pair<std::size_t, long> parts[] = {{chimney_gen::one, -(n[0] - n[3])},
                                                          {chimney_gen::i, -(n[1] - n[3])},
                                                          {chimney_gen::j, -(n[2] - n[3])},
                                                          {chimney_gen::xi, -2 * n[3]}};
            for (auto [g, e] : parts)
                if (e != 0) out.witness_word.push_back({g, e});
            for (int c = 0; c < 4; ++c) p.q[c] -= static_cast<double>(n[c]);
        }
        const double s = p.q.nrd() + p.t * p.t;
        if (s >= 1) return out;
        std::ostringstream os;
        os << "invert at q=" << p.q << " t=" << p.t;
        trace.push_back(os.str());
        if (trace.size() > 16) trace.erase(trace.begin());
        p = {p.q.conj() * (1 / s), p.t / s};
        out.witness_word.push_back({chimney_gen::inversion, 1});
        ++out.inversions;
    }
    throw ChimneyError("chimney reduction exceeded " + std::to_string(max_steps) + " steps", trace);
}

} // namespace quatmod
