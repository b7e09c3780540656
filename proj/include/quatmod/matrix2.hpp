#pragma once

// 2x2 quaternionic matrices: Dieudonne determinant, exact inverses in
// SL_2(O), the Bisi-Gentili conditions, Iwasawa factors, the Moebius action
// on H u {inf} and its Poincare extension to the upper half-space H^5.

#include "quatmod/linalg.hpp"
#include "quatmod/quaternion.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quatmod {

template <class T>
struct Mat2 {
    Quaternion<T> a, b, c, d;

    friend bool operator==(const Mat2& x, const Mat2& y)
    {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }
};

using QuatMat2Exact = Mat2<FieldElement>;
using QuatMat2Float = Mat2<double>;

template <class T>
Mat2<T> mat_mul(const Mat2<T>& g, const Mat2<T>& h)
{
    return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

template <class T>
Mat2<T> operator*(const Mat2<T>& g, const Mat2<T>& h) { return mat_mul(g, h); }

template <class T>
Mat2<T> operator-(const Mat2<T>& g) { return {-g.a, -g.b, -g.c, -g.d}; }

inline QuatMat2Exact identity2(const QuadraticField& k)
{
    return {quat_one(k), quat_zero(k), quat_zero(k), quat_one(k)};
}

inline QuatMat2Exact inversion_matrix(const QuadraticField& k)
{
    return {quat_zero(k), quat_one(k), quat_one(k), quat_zero(k)};
}

inline QuatMat2Exact translation_matrix(const QuatExact& b)
{
    const auto& k = field_of(b);
    return {quat_one(k), b, quat_zero(k), quat_one(k)};
}

inline QuatMat2Exact diagonal_matrix(const QuatExact& x, const QuatExact& y)
{
    const auto& k = field_of(x);
    return {x, quat_zero(k), quat_zero(k), y};
}

inline QuatMat2Float identity2f() { return {{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}}; }

inline QuatMat2Float to_float(const QuatMat2Exact& g, Place place = Place::first)
{
    return {to_float(g.a, place), to_float(g.b, place), to_float(g.c, place), to_float(g.d, place)};
}

inline QuatMat2Exact galois_conj(const QuatMat2Exact& g)
{
    return {galois_conj(g.a), galois_conj(g.b), galois_conj(g.c), galois_conj(g.d)};
}

/// det_H(g)^2 = |a|^2|d|^2 + |c|^2|b|^2 - trd(c conj(a) b conj(d)).
template <class T>
T dieudonne_det_sq(const Mat2<T>& g)
{
    return g.a.nrd() * g.d.nrd() + g.c.nrd() * g.b.nrd() - (g.c * g.a.conj() * g.b * g.d.conj()).trd();
}

inline double dieudonne_det(const QuatMat2Float& g) { return std::sqrt(std::max(0.0, dieudonne_det_sq(g))); }

class NotSpecialLinear : public std::domain_error {
public:
    NotSpecialLinear() : std::domain_error("matrix does not have Dieudonne determinant 1") {}
};

namespace detail {

/// 4x4 matrix over K of q -> x*q in the basis {1, i, j, k}.
inline Matrix<FieldElement> left_mult_matrix(const QuatExact& x)
{
    const QuadraticField& k = field_of(x);
    Matrix<FieldElement> m = make_matrix(4, 4, FieldElement::zero(k));
    for (int col = 0; col < 4; ++col) {
        QuatExact e = quat_zero(k);
        e[col] = FieldElement::one(k);
        QuatExact p = x * e;
        for (int row = 0; row < 4; ++row) m[row][col] = p[row];
    }
    return m;
}

} // namespace detail

/// Inverse by solving g X = I as an 8x8 linear system over K.
inline std::optional<QuatMat2Exact> generic_inverse(const QuatMat2Exact& g)
{
    const QuadraticField& k = field_of(g.a);
    Matrix<FieldElement> sys = make_matrix(8, 8, FieldElement::zero(k));
    const QuatExact* blocks[2][2] = {{&g.a, &g.b}, {&g.c, &g.d}};
    for (int bi = 0; bi < 2; ++bi)
        for (int bj = 0; bj < 2; ++bj) {
            auto m = detail::left_mult_matrix(*blocks[bi][bj]);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) sys[4 * bi + r][4 * bj + c] = m[r][c];
        }
    Matrix<FieldElement> rhs = make_matrix(8, 2, FieldElement::zero(k));
    rhs[0][0] = FieldElement::one(k);
    rhs[4][1] = FieldElement::one(k);
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    auto column = [&](int col, int offset) {
        return QuatExact{(*sol)[offset][col], (*sol)[offset + 1][col], (*sol)[offset + 2][col], (*sol)[offset + 3][col]};
    };
    return QuatMat2Exact{column(0, 0), column(1, 0), column(0, 4), column(1, 4)};
}

enum class InverseRoute { generic_formula, a_zero, b_zero, c_zero, d_zero, linear_solve };

inline std::string to_string(InverseRoute r)
{
    switch (r) {
    case InverseRoute::generic_formula: return "closed form";
    case InverseRoute::a_zero: return "closed form (a = 0)";
    case InverseRoute::b_zero: return "closed form (b = 0)";
    case InverseRoute::c_zero: return "closed form (c = 0)";
    case InverseRoute::d_zero: return "closed form (d = 0)";
    default: return "linear solve";
    }
}

struct InverseResult {
    QuatMat2Exact inverse;
    InverseRoute route;
};

/// Inverse of a matrix with det_H = 1 by the closed forms, dispatched on the
/// zero pattern of the entries; falls back to the linear solve.
inline InverseResult sl2_inverse_with_route(const QuatMat2Exact& g)
{
    const QuadraticField& k = field_of(g.a);
    if (!(dieudonne_det_sq(g) == FieldElement::one(k))) throw NotSpecialLinear();
    const QuatExact z = quat_zero(k);
    const QuatExact ab = g.a.conj(), bb = g.b.conj(), cb = g.c.conj(), db = g.d.conj();
    const FieldElement na = g.a.nrd(), nb = g.b.nrd(), nc = g.c.nrd(), nd = g.d.nrd();

    InverseResult r{{}, InverseRoute::generic_formula};
    if (g.a.is_zero()) {
        r = {{-(cb * g.d * bb), nb * cb, nc * bb, z}, InverseRoute::a_zero};
    } else if (g.b.is_zero()) {
        r = {{nd * ab, z, -(db * g.c * ab), na * db}, InverseRoute::b_zero};
    } else if (g.c.is_zero()) {
        r = {{nd * ab, -(ab * g.b * db), z, na * db}, InverseRoute::c_zero};
    } else if (g.d.is_zero()) {
        r = {{z, nb * cb, nc * bb, -(bb * g.a * cb)}, InverseRoute::d_zero};
    } else {
        r = {{nd * ab - cb * g.d * bb, nb * cb - ab * g.b * db, nc * bb - db * g.c * ab, na * db - bb * g.a * cb},
             InverseRoute::generic_formula};
    }
    const QuatMat2Exact id = identity2(k);
    if (g * r.inverse == id && r.inverse * g == id) return r;
    auto lin = generic_inverse(g);
    if (!lin || !(g * *lin == id) || !(*lin * g == id)) throw std::logic_error("inverse could not be certified");
    return {*lin, InverseRoute::linear_solve};
}

inline QuatMat2Exact sl2_inverse(const QuatMat2Exact& g) { return sl2_inverse_with_route(g).inverse; }

// Bisi-Gentili conditions.

enum class BGVariant { conjugate_form = 1, column_form = 2, row_form = 3 };

namespace detail {

inline bool near_zero(double x, double tol) { return std::abs(x) <= tol; }
inline bool near_zero(const FieldElement& x, double) { return x.is_zero(); }

template <class T>
bool quat_near(const Quaternion<T>& p, const Quaternion<T>& q, double tol)
{
    for (int n = 0; n < 4; ++n)
        if (!near_zero(p[n] - q[n], tol)) return false;
    return true;
}

template <class T>
bool re_zero(const Quaternion<T>& p, double tol) { return near_zero(p.re(), tol); }

} // namespace detail

/// Variant 1: conj(g)^T J g = J. Variant 2: Re(a conj c) = Re(b conj d) = 0
/// and conj(b) c + conj(d) a = 1. Variant 3: Re(c conj d) = Re(a conj b) = 0
/// and a conj(d) + b conj(c) = 1. Exact for exact entries, else within tol.
template <class T>
bool bg_check(const Mat2<T>& g, BGVariant v, double tol = 1e-9)
{
    using detail::quat_near;
    using detail::re_zero;
    const Quaternion<T> one = Quaternion<T>::scalar(one_like(g.a[0]));
    const Quaternion<T> zero = Quaternion<T>::scalar(zero_like(g.a[0]));
    switch (v) {
    case BGVariant::conjugate_form: {
        Quaternion<T> m11 = g.a.conj() * g.c + g.c.conj() * g.a;
        Quaternion<T> m12 = g.a.conj() * g.d + g.c.conj() * g.b;
        Quaternion<T> m21 = g.b.conj() * g.c + g.d.conj() * g.a;
        Quaternion<T> m22 = g.b.conj() * g.d + g.d.conj() * g.b;
        return quat_near(m11, zero, tol) && quat_near(m12, one, tol) && quat_near(m21, one, tol) &&
               quat_near(m22, zero, tol);
    }
    case BGVariant::column_form:
        return re_zero(g.a * g.c.conj(), tol) && re_zero(g.b * g.d.conj(), tol) &&
               quat_near(g.b.conj() * g.c + g.d.conj() * g.a, one, tol);
    default:
        return re_zero(g.c * g.d.conj(), tol) && re_zero(g.a * g.b.conj(), tol) &&
               quat_near(g.a * g.d.conj() + g.b * g.c.conj(), one, tol);
    }
}

template <class T>
bool bg_check_all(const Mat2<T>& g, double tol = 1e-9)
{
    return bg_check(g, BGVariant::conjugate_form, tol) && bg_check(g, BGVariant::column_form, tol) &&
           bg_check(g, BGVariant::row_form, tol);
}

// Iwasawa factors g = diag(lambda, 1/lambda) [[1, omega], [0, 1]] [[alpha, beta], [beta, alpha]].

struct IwasawaFactors {
    double lambda = 1;
    QuatF omega;
    QuatF alpha;
    QuatF beta;
};

inline QuatMat2Float iwasawa_compose(const IwasawaFactors& f)
{
    const double l = f.lambda;
    return {(f.alpha + f.omega * f.beta) * l, (f.beta + f.omega * f.alpha) * l, f.beta * (1 / l), f.alpha * (1 / l)};
}

inline double max_entry_error(const QuatMat2Float& g, const QuatMat2Float& h)
{
    double e = 0;
    for (const auto& [p, q] : {std::pair{g.a, h.a}, std::pair{g.b, h.b}, std::pair{g.c, h.c}, std::pair{g.d, h.d}})
        e = std::max(e, dist(p, q));
    return e;
}

struct IwasawaTolerance {
    double reassembly = 1e-9;
    double constraint = 1e-12;
};

inline IwasawaFactors iwasawa_decompose(const QuatMat2Float& g, IwasawaTolerance tol = {})
{
    if (!bg_check(g, BGVariant::column_form, tol.reassembly))
        throw std::domain_error("matrix violates the Bisi-Gentili conditions");
    const double s = g.c.nrd() + g.d.nrd();
    if (!(s > 0)) throw std::domain_error("bottom row vanishes");
    IwasawaFactors f;
    f.lambda = 1 / std::sqrt(s);
    f.alpha = g.d * f.lambda;
    f.beta = g.c * f.lambda;
    const double na = abs(f.alpha), nb = abs(f.beta);
    if (na < 1e-12 && nb < 1e-12) throw std::domain_error("ill-conditioned Iwasawa recovery");
    if (nb >= na)
        f.omega = (g.a * (1 / f.lambda) - f.alpha) * f.beta.inverse();
    else
        f.omega = (g.b * (1 / f.lambda) - f.beta) * f.alpha.inverse();
    if (max_entry_error(iwasawa_compose(f), g) > tol.reassembly)
        throw std::domain_error("Iwasawa factors do not reassemble the matrix");
    return f;
}

// Moebius action on H u {inf}.

template <class T>
Extended<T> moebius_apply(const Mat2<T>& g, const Extended<T>& p)
{
    if (p.is_infinity()) {
        if (g.c.is_zero()) return Extended<T>::infinity();
        return g.a * g.c.inverse();
    }
    const Quaternion<T>& q = p.value();
    Quaternion<T> den = g.c * q + g.d;
    if (den.is_zero()) return Extended<T>::infinity();
    return (g.a * q + g.b) * den.inverse();
}

struct ElementaryMap {
    enum class Kind { translation, homothety, inversion, similarity } kind;
    QuatF left;  // translation vector, homothety factor, or left similarity factor
    QuatF right; // right similarity factor

    ExtQuatF apply(const ExtQuatF& p) const
    {
        switch (kind) {
        case Kind::inversion:
            if (p.is_infinity()) return QuatF{0, 0, 0, 0};
            if (p.value().is_zero()) return ExtQuatF::infinity();
            return p.value().inverse();
        case Kind::translation:
            if (p.is_infinity()) return p;
            return p.value() + left;
        case Kind::homothety:
            if (p.is_infinity()) return p;
            return left * p.value();
        default:
            if (p.is_infinity()) return p;
            return left * p.value() * right;
        }
    }

    std::string name() const
    {
        switch (kind) {
        case Kind::translation: return "T";
        case Kind::homothety: return "h";
        case Kind::inversion: return "I";
        default: return "S";
        }
    }
};

/// Elementary factors in order of application (first element acts first).
/// For c != 0: T_{c^-1 d}, h_c, I, h_{b - a c^-1 d}, T_{a c^-1}; for c = 0 the
/// affine map q -> a q d^-1 followed by the translation by b d^-1.
inline std::vector<ElementaryMap> moebius_decompose(const QuatMat2Float& g)
{
    using K = ElementaryMap::Kind;
    const QuatF none{0, 0, 0, 0};
    if (g.c.is_zero()) {
        QuatF dinv = g.d.inverse();
        return {{K::similarity, g.a, dinv}, {K::translation, g.b * dinv, none}};
    }
    QuatF cinv = g.c.inverse();
    return {{K::translation, cinv * g.d, none},
            {K::homothety, g.c, none},
            {K::inversion, none, none},
            {K::homothety, g.b - g.a * cinv * g.d, none},
            {K::translation, g.a * cinv, none}};
}

inline ExtQuatF apply_chain(const std::vector<ElementaryMap>& chain, ExtQuatF p)
{
    for (const auto& m : chain) p = m.apply(p);
    return p;
}

// Upper half-space model of H^5.

struct H5Point {
    QuatF q;
    double t = 1;
};

inline H5Point poincare_extend(const QuatMat2Float& g, const H5Point& p)
{
    if (!(p.t > 0)) throw std::domain_error("height must be positive");
    const QuatF w = g.c * p.q + g.d;
    const double t2 = p.t * p.t;
    const double den = w.nrd() + g.c.nrd() * t2;
    QuatF num = (g.a * p.q + g.b) * w.conj() + g.a * g.c.conj() * t2;
    return {num * (1 / den), p.t / den};
}

inline double hyperbolic_distance(const H5Point& p, const H5Point& r)
{
    const double dt = p.t - r.t;
    const double e = std::sqrt((p.q - r.q).nrd() + dt * dt);
    return 2 * std::asinh(e / (2 * std::sqrt(p.t * r.t)));
}

// Projective classes modulo {+-I}.

/// Representative whose first nonzero entry (scan a, b, c, d) has a
/// positive first nonzero coordinate.
inline QuatMat2Exact projective_normalize(const QuatMat2Exact& g)
{
    for (const QuatExact* e : {&g.a, &g.b, &g.c, &g.d})
        for (int n = 0; n < 4; ++n)
            if (!(*e)[n].is_zero()) return (*e)[n].sign() > 0 ? g : -g;
    return g;
}

inline bool projective_equal(const QuatMat2Exact& g, const QuatMat2Exact& h)
{
    return projective_normalize(g) == projective_normalize(h);
}

inline bool entries_in(const QuatMat2Exact& g, const auto& order)
{
    return order.contains(g.a) && order.contains(g.b) && order.contains(g.c) && order.contains(g.d);
}

} // namespace quatmod
