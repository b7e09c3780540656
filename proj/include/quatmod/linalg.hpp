#pragma once

// Small dense exact linear algebra: Gaussian elimination over any field
// scalar, Hermite normal form and kernels over Z, Bareiss determinants and
// characteristic polynomials of integer matrices.

#include "quatmod/rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quatmod {

template <class T>
using Matrix = std::vector<std::vector<T>>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline bool is_exact_zero(const Rational& x) { return x == 0; }
inline bool is_exact_zero(const Integer& x) { return x == 0; }
inline Rational one_like(const Rational&) { return 1; }

template <class T>
Matrix<T> make_matrix(std::size_t rows, std::size_t cols, const T& fill)
{
    return Matrix<T>(rows, std::vector<T>(cols, fill));
}

template <class T>
Matrix<T> identity_matrix(std::size_t n, const T& zero, const T& one)
{
    auto m = make_matrix(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = one;
    return m;
}

inline IntMatrix identity_int(std::size_t n) { return identity_matrix<Integer>(n, 0, 1); }

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.empty() || a[0].size() != b.size()) throw std::invalid_argument("matrix shape mismatch");
    auto c = make_matrix<T>(a.size(), b[0].size(), T(a[0][0] - a[0][0]));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (is_exact_zero(a[i][k])) continue;
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

template <class T>
std::vector<T> matvec(const Matrix<T>& a, const std::vector<T>& v)
{
    if (a.empty() || a[0].size() != v.size()) throw std::invalid_argument("matrix shape mismatch");
    std::vector<T> r(a.size(), T(v[0] - v[0]));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

inline IntMatrix int_power(const IntMatrix& m, unsigned long e)
{
    IntMatrix r = identity_int(m.size());
    IntMatrix base = m;
    while (e != 0) {
        if (e & 1UL) r = matmul(r, base);
        e >>= 1;
        if (e != 0) base = matmul(base, base);
    }
    return r;
}

/// Solves a x = b by Gauss-Jordan elimination over a field. Returns nullopt
/// when the square matrix is singular.
template <class T>
std::optional<Matrix<T>> solve(Matrix<T> a, Matrix<T> b)
{
    const std::size_t n = a.size();
    if (n == 0 || a[0].size() != n || b.size() != n) throw std::invalid_argument("solve: shape mismatch");
    const std::size_t m = b[0].size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && is_exact_zero(a[piv][col])) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        T inv = one_like(a[col][col]) / a[col][col];
        for (std::size_t j = col; j < n; ++j) a[col][j] = a[col][j] * inv;
        for (std::size_t j = 0; j < m; ++j) b[col][j] = b[col][j] * inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || is_exact_zero(a[r][col])) continue;
            T f = a[r][col];
            for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
            for (std::size_t j = 0; j < m; ++j) b[r][j] -= f * b[col][j];
        }
    }
    return b;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& a)
{
    return solve(a, identity_matrix<Rational>(a.size(), 0, 1));
}

/// Column-style Hermite normal form: a * u = h with u unimodular, h lower
/// echelon with positive pivots and entries left of each pivot reduced
/// into [0, pivot).
struct HermiteResult {
    IntMatrix h;
    IntMatrix u;
    std::vector<std::size_t> pivot_rows; // pivot row of column c, for c < rank
    std::size_t rank = 0;
};

inline HermiteResult column_hermite(IntMatrix a)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    IntMatrix u = identity_int(cols);

    auto col_op = [&](std::size_t i, std::size_t j, const Integer& p, const Integer& q,
                      const Integer& r, const Integer& s) {
        // (col_i, col_j) <- (p col_i + q col_j, r col_i + s col_j)
        for (auto* m : {&a, &u})
            for (auto& row : *m) {
                Integer x = row[i], y = row[j];
                row[i] = p * x + q * y;
                row[j] = r * x + s * y;
            }
    };

    HermiteResult res;
    std::size_t k = 0; // next pivot column
    for (std::size_t i = 0; i < rows && k < cols; ++i) {
        for (std::size_t j = k + 1; j < cols; ++j) {
            if (a[i][j] == 0) continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a[i][k].get_mpz_t(), a[i][j].get_mpz_t());
            Integer x = a[i][k] / g, y = a[i][j] / g;
            // [s -y; t x] has determinant s x + t y = 1
            col_op(k, j, s, t, -y, x);
        }
        if (a[i][k] == 0) continue;
        if (a[i][k] < 0) col_op(k, k, -1, 0, -1, 0);
        for (std::size_t j = 0; j < k; ++j) {
            Integer f;
            mpz_fdiv_q(f.get_mpz_t(), a[i][j].get_mpz_t(), a[i][k].get_mpz_t());
            if (f == 0) continue;
            for (auto* m : {&a, &u})
                for (auto& row : *m) row[j] -= f * row[k];
        }
        res.pivot_rows.push_back(i);
        ++k;
    }
    res.rank = k;
    res.h = std::move(a);
    res.u = std::move(u);
    return res;
}

/// Z-basis (as columns) of { x in Z^cols : m x = 0 }.
inline IntMatrix integer_kernel(const IntMatrix& m)
{
    HermiteResult hr = column_hermite(m);
    const std::size_t cols = hr.u.size();
    IntMatrix ker = make_matrix<Integer>(cols, cols - hr.rank, Integer(0));
    for (std::size_t r = 0; r < cols; ++r)
        for (std::size_t c = hr.rank; c < cols; ++c) ker[r][c - hr.rank] = hr.u[r][c];
    return ker;
}

/// Determinant by fraction-free Bareiss elimination.
inline Integer determinant(IntMatrix a)
{
    const std::size_t n = a.size();
    if (n == 0) return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/// Characteristic polynomial det(xI - m), coefficients from the leading
/// term down: {1, c_1, ..., c_n}. Faddeev-LeVerrier over Q.
inline IntVector characteristic_polynomial(const IntMatrix& m)
{
    const std::size_t n = m.size();
    RatMatrix a = make_matrix<Rational>(n, n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    std::vector<Rational> c(n + 1, 0);
    c[0] = 1;
    RatMatrix mk = make_matrix<Rational>(n, n, 0); // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k)/k
        RatMatrix next = n == 0 ? mk : matmul(a, mk);
        for (std::size_t i = 0; i < n; ++i) next[i][i] += c[k - 1];
        mk = std::move(next);
        RatMatrix am = matmul(a, mk);
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
        c[k] = -tr / Rational(static_cast<long>(k));
    }
    IntVector out;
    out.reserve(n + 1);
    for (auto& v : c) {
        if (!is_integer(v)) throw std::logic_error("non-integral characteristic polynomial");
        out.push_back(v.get_num());
    }
    return out;
}

/// Product of polynomials given from the leading coefficient down.
inline IntVector poly_mul(const IntVector& p, const IntVector& q)
{
    IntVector r(p.size() + q.size() - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return r;
}

/// Exact inverse of an integer matrix with determinant +-1.
inline IntMatrix unimodular_inverse(const IntMatrix& m)
{
    RatMatrix a = make_matrix<Rational>(m.size(), m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) a[i][j] = m[i][j];
    auto inv = inverse(a);
    if (!inv) throw std::domain_error("singular matrix");
    IntMatrix r = make_matrix<Integer>(m.size(), m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (!is_integer((*inv)[i][j])) throw std::domain_error("matrix is not unimodular");
            r[i][j] = (*inv)[i][j].get_num();
        }
    return r;
}

} // namespace quatmod
