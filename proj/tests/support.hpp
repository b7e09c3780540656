#pragma once

// Random inputs and independent oracles shared by the test binaries. The
// oracles deliberately avoid the library routine they check.

#include "quatmod/quatmod.hpp"

#include <complex>
#include <random>
#include <utility>
#include <vector>

namespace qt {

using namespace quatmod;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long seed) : eng(seed) {}

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }

    Rational rational(long span = 9, long max_den = 6)
    {
        return frac(integer(-span, span), integer(1, max_den));
    }

    FieldElement field_element(const QuadraticField& k)
    {
        return k.is_rational() ? FieldElement(k, rational()) : FieldElement(k, rational(), rational());
    }

    QuatExact quaternion(const QuadraticField& k)
    {
        return {field_element(k), field_element(k), field_element(k), field_element(k)};
    }

    QuatExact nonzero_quaternion(const QuadraticField& k)
    {
        for (;;) {
            QuatExact q = quaternion(k);
            if (!q.is_zero()) return q;
        }
    }

    QuatF quaternion_f(double span = 2)
    {
        return {real(-span, span), real(-span, span), real(-span, span), real(-span, span)};
    }

    /// Uniform-ish Hurwitz integer with coordinates in [-span, span].
    QuatExact hurwitz(long span = 6)
    {
        const QuadraticField k;
        if (integer(0, 1) == 0)
            return quat(k, integer(-span, span), integer(-span, span), integer(-span, span), integer(-span, span));
        auto h = [&] { return frac(2 * integer(-span, span - 1) + 1, 2); };
        return quat(k, h(), h(), h(), h());
    }

    /// Rational quaternion of reduced norm 1: q^2 / nrd(q).
    QuatExact rational_unit()
    {
        const QuadraticField k;
        for (;;) {
            QuatExact q = quat(k, integer(-4, 4), integer(-4, 4), integer(-4, 4), integer(-4, 4));
            if (q.is_zero()) continue;
            return q * q * FieldElement(k, Rational(1) / q.nrd().a());
        }
    }

    /// Rational pure quaternion of reduced norm 1.
    QuatExact rational_pure_unit()
    {
        QuatExact u = rational_unit();
        const QuadraticField k;
        return u * quat(k, 0, 1) * u.conj();
    }
};

/// Iwasawa product diag(l, 1/l) [[1, w], [0, 1]] [[a, b], [b, a]] with
/// a = (3/5) u, b = (4/5) u p: a BG matrix with rational entries.
inline QuatMat2Exact rational_bg_matrix(Rng& r)
{
    const QuadraticField k;
    QuatExact u = r.rational_unit(), p = r.rational_pure_unit();
    QuatExact alpha = u * FieldElement(k, frac(3, 5));
    QuatExact beta = u * p * FieldElement(k, frac(4, 5));
    if (r.integer(0, 3) == 0) std::swap(alpha, beta);
    QuatExact omega = quat(k, 0, r.rational(), r.rational(), r.rational());
    FieldElement lam(k, frac(r.integer(1, 9), r.integer(1, 9)));
    QuatMat2Exact rot{alpha, beta, beta, alpha};
    QuatMat2Exact par{quat_one(k), omega, quat_zero(k), quat_one(k)};
    QuatMat2Exact hom = diagonal_matrix(QuatExact::scalar(lam), QuatExact::scalar(lam.inverse()));
    return hom * par * rot;
}

/// Float BG matrix from random Iwasawa factors (irrational lambda, generic
/// unit rotation).
inline QuatMat2Float float_bg_matrix(Rng& r)
{
    QuatF u = r.quaternion_f(1);
    u = u * (1 / abs(u));
    QuatF p{0, r.real(-1, 1), r.real(-1, 1), r.real(-1, 1)};
    p = p * (1 / abs(p));
    double th = r.real(0.05, 1.5);
    IwasawaFactors f;
    f.lambda = std::exp(r.real(-1.5, 1.5));
    f.omega = {0, r.real(-2, 2), r.real(-2, 2), r.real(-2, 2)};
    f.alpha = u * std::cos(th);
    f.beta = u * p * std::sin(th);
    return iwasawa_compose(f);
}

// ---- oracles ----

/// Fundamental unit by sweeping the Pell equation over ascending y:
/// returns (x, y) with eps = (x + y sqrt n)/m, m = 1 or 2.
inline std::pair<std::pair<long, long>, long> pell_sweep_unit(long n)
{
    const long m = n % 4 == 1 ? 2 : 1;
    for (long y = 1;; ++y) {
        for (long target : {-m * m, m * m}) {
            long x2 = n * y * y + target;
            if (x2 <= 0) continue;
            auto x = static_cast<long>(std::llround(std::sqrt(static_cast<double>(x2))));
            for (long c = x - 1; c <= x + 1; ++c)
                if (c > 0 && c * c == x2 && (m == 1 || (c - y) % 2 == 0)) return {{c, y}, m};
        }
    }
}

/// Study determinant: |det| of the 4x4 complex matrix of g under
/// z1 + z2 j -> [[z1, z2], [-conj z2, conj z1]].
inline double study_determinant(const QuatMat2Float& g)
{
    using C = std::complex<double>;
    auto block = [](const QuatF& q, C out[2][2]) {
        C z1(q[0], q[1]), z2(q[2], q[3]);
        out[0][0] = z1;
        out[0][1] = z2;
        out[1][0] = -std::conj(z2);
        out[1][1] = std::conj(z1);
    };
    C m[4][4];
    const QuatF* e[2][2] = {{&g.a, &g.b}, {&g.c, &g.d}};
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) {
            C b[2][2];
            block(*e[bi][bj], b);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c) m[2 * bi + r][2 * bj + c] = b[r][c];
        }
    C det = 1;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) == 0) return 0;
        if (piv != col) {
            for (int c = 0; c < 4; ++c) std::swap(m[piv][c], m[col][c]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 4; ++r) {
            C f = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return std::abs(det);
}

/// x + y sqrt(n) with rational x, y: arithmetic kept apart from FieldElement.
struct Surd {
    Rational x, y;
    long n;
    Surd operator*(const Surd& o) const { return {x * o.x + y * o.y * n, x * o.y + y * o.x, n}; }
};

/// Matrix of b -> eps^(2 ell) b on the pure lattice, recomputed in the
/// sqrt(n) basis with forward substitution against the lower-triangular
/// canonical basis.
inline IntMatrix monodromy_oracle(const Order& o, long ell)
{
    const QuadraticField& k = o.field();
    auto [xy, m] = pell_sweep_unit(k.n());
    Surd eps{frac(xy.first, m), frac(xy.second, m), k.n()};
    Surd w{1, 0, k.n()};
    for (long e = 0; e < 2 * ell; ++e) w = w * eps;

    auto pure_surds = [&](const QuatExact& q) {
        std::vector<Surd> v;
        for (int c = 1; c < 4; ++c) {
            auto [x, y] = q[c].sqrt_basis();
            v.push_back({x, y, k.n()});
        }
        return v;
    };
    // theta-basis coordinate vector (length 6) of a pure element
    auto coords6 = [&](const std::vector<Surd>& s) {
        RatVector v;
        for (const auto& z : s) {
            FieldElement f = FieldElement::from_sqrt_basis(k, z.x, z.y);
            v.push_back(f.a());
            v.push_back(f.b());
        }
        return v;
    };
    const auto basis = pure_sublattice(o);
    std::vector<RatVector> bcols;
    for (const auto& b : basis) bcols.push_back(coords6(pure_surds(b)));

    IntMatrix out = make_matrix<Integer>(6, 6, Integer(0));
    for (std::size_t c = 0; c < 6; ++c) {
        auto s = pure_surds(basis[c]);
        for (auto& z : s) z = w * z;
        RatVector target = coords6(s);
        // forward substitution: basis column j has its pivot in row j
        RatVector x(6, 0);
        for (std::size_t r = 0; r < 6; ++r) {
            Rational acc = target[r];
            for (std::size_t j = 0; j < r; ++j) acc -= bcols[j][r] * x[j];
            x[r] = acc / bcols[r][r];
            for (std::size_t rr = 0; rr < r; ++rr)
                if (bcols[r][rr] != 0) throw std::logic_error("basis is not lower triangular");
        }
        for (std::size_t r = 0; r < 6; ++r) {
            if (!is_integer(x[r])) throw std::logic_error("oracle found a non-integral coordinate");
            out[r][c] = x[r].get_num();
        }
    }
    return out;
}

/// All Hurwitz integers with reduced norm at most `bound`, by box search.
inline std::vector<QuatExact> hurwitz_ball(long bound)
{
    const QuadraticField k;
    std::vector<QuatExact> v;
    auto s = static_cast<long>(std::sqrt(static_cast<double>(bound))) + 1;
    for (long a = -2 * s; a <= 2 * s; ++a)
        for (long b = -2 * s; b <= 2 * s; ++b)
            for (long c = -2 * s; c <= 2 * s; ++c)
                for (long d = -2 * s; d <= 2 * s; ++d) {
                    bool even = a % 2 == 0 && b % 2 == 0 && c % 2 == 0 && d % 2 == 0;
                    bool odd = a % 2 != 0 && b % 2 != 0 && c % 2 != 0 && d % 2 != 0;
                    if (!even && !odd) continue;
                    if (a * a + b * b + c * c + d * d > 4 * bound) continue;
                    v.push_back(quat(k, frac(a, 2), frac(b, 2), frac(c, 2), frac(d, 2)));
                }
    return v;
}

} // namespace qt
