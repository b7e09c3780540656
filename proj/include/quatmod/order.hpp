#pragma once

// Z_K-orders in B_K = (-1,-1 / K) stored as full-rank Z-lattices.
//
// Ambient coordinates of a quaternion are the theta-basis rationals of its
// four coordinates in the order (x0.a, x0.b, x1.a, x1.b, ...); over Q only
// the a-parts are used.

#include "quatmod/linalg.hpp"
#include "quatmod/quaternion.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quatmod {

inline std::size_t ambient_dim(const QuadraticField& k) { return 4 * static_cast<std::size_t>(k.degree()); }

inline RatVector ambient_coords(const QuatExact& q)
{
    const QuadraticField& k = field_of(q);
    RatVector v;
    v.reserve(ambient_dim(k));
    for (int c = 0; c < 4; ++c) {
        v.push_back(q[c].a());
        if (!k.is_rational()) v.push_back(q[c].b());
    }
    return v;
}

inline QuatExact from_ambient(const QuadraticField& k, const RatVector& v)
{
    const int deg = k.degree();
    auto coord = [&](int c) {
        return deg == 1 ? FieldElement(k, v[c]) : FieldElement(k, v[2 * c], v[2 * c + 1]);
    };
    return {coord(0), coord(1), coord(2), coord(3)};
}

class Order {
public:
    Order(QuadraticField k, std::vector<QuatExact> zbasis, std::string name = "")
        : k_(k), zbasis_(std::move(zbasis)), name_(std::move(name))
    {
        const std::size_t r = ambient_dim(k_);
        if (zbasis_.size() != r)
            throw std::invalid_argument("an order over this field needs " + std::to_string(r) +
                                        " Z-basis vectors, got " + std::to_string(zbasis_.size()));
        RatMatrix b = make_matrix<Rational>(r, r, 0);
        for (std::size_t j = 0; j < r; ++j) {
            if (!(field_of(zbasis_[j]) == k_)) throw FieldMismatch();
            RatVector v = ambient_coords(zbasis_[j]);
            for (std::size_t i = 0; i < r; ++i) b[i][j] = v[i];
        }
        auto inv = inverse(b);
        if (!inv) throw std::invalid_argument("basis vectors are linearly dependent");
        basis_matrix_ = std::move(b);
        inverse_ = std::move(*inv);
    }

    /// Z-basis {e_m, theta*e_m} from a Z_K-basis of four quaternions.
    static Order from_zk_basis(const QuadraticField& k, const std::vector<QuatExact>& zk_basis,
                               std::string name = "")
    {
        if (zk_basis.size() != 4) throw std::invalid_argument("a Z_K-basis has four elements");
        std::vector<QuatExact> z;
        for (const auto& e : zk_basis) {
            z.push_back(e);
            if (!k.is_rational()) z.push_back(e * FieldElement::theta(k));
        }
        return Order(k, std::move(z), std::move(name));
    }

    const QuadraticField& field() const { return k_; }
    const std::vector<QuatExact>& zbasis() const { return zbasis_; }
    const std::string& name() const { return name_; }
    std::size_t rank() const { return zbasis_.size(); }
    const RatMatrix& basis_matrix() const { return basis_matrix_; }

    /// Rational coordinates of q in the Z-basis.
    RatVector coordinates(const QuatExact& q) const
    {
        if (!(field_of(q) == k_)) throw FieldMismatch();
        RatVector v = ambient_coords(q);
        RatVector x(rank(), 0);
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) x[i] += inverse_[i][j] * v[j];
        return x;
    }

    std::optional<IntVector> integer_coordinates(const QuatExact& q) const
    {
        RatVector x = coordinates(q);
        IntVector r;
        r.reserve(x.size());
        for (const auto& c : x) {
            if (!is_integer(c)) return std::nullopt;
            r.push_back(c.get_num());
        }
        return r;
    }

    bool contains(const QuatExact& q) const { return integer_coordinates(q).has_value(); }

    QuatExact element(const IntVector& coeffs) const
    {
        if (coeffs.size() != rank()) throw std::invalid_argument("coefficient vector has the wrong length");
        QuatExact q = quat_zero(k_);
        for (std::size_t i = 0; i < rank(); ++i)
            if (coeffs[i] != 0) q += zbasis_[i] * FieldElement(k_, Rational(coeffs[i]));
        return q;
    }

private:
    QuadraticField k_;
    std::vector<QuatExact> zbasis_;
    std::string name_;
    RatMatrix basis_matrix_;
    RatMatrix inverse_;
};

inline bool order_contains(const Order& o, const QuatExact& q) { return o.contains(q); }

enum class NamedOrder { lipschitz, hurwitz, binary_octahedral, binary_icosahedral };

inline std::string to_string(NamedOrder n)
{
    switch (n) {
    case NamedOrder::lipschitz: return "lipschitz";
    case NamedOrder::hurwitz: return "hurwitz";
    case NamedOrder::binary_octahedral: return "binary_octahedral";
    default: return "binary_icosahedral";
    }
}

inline std::optional<NamedOrder> parse_named_order(std::string_view s)
{
    for (auto n : {NamedOrder::lipschitz, NamedOrder::hurwitz, NamedOrder::binary_octahedral,
                   NamedOrder::binary_icosahedral})
        if (s == to_string(n)) return n;
    return std::nullopt;
}

/// xi = (1+i+j+k)/2.
inline QuatExact hurwitz_xi(const QuadraticField& k)
{
    return quat(k, frac(1, 2), frac(1, 2), frac(1, 2), frac(1, 2));
}

inline Order make_named_order(NamedOrder which, const QuadraticField& k)
{
    const QuatExact one = quat(k, 1), i = quat(k, 0, 1), j = quat(k, 0, 0, 1), kk = quat(k, 0, 0, 0, 1);
    switch (which) {
    case NamedOrder::lipschitz: return Order::from_zk_basis(k, {one, i, j, kk}, "lipschitz");
    case NamedOrder::hurwitz: return Order::from_zk_basis(k, {one, i, j, hurwitz_xi(k)}, "hurwitz");
    case NamedOrder::binary_octahedral: {
        if (k.n() != 2) throw std::invalid_argument("binary_octahedral order requires n = 2");
        // 1/sqrt(2) = theta/2
        FieldElement h(k, 0, frac(1, 2));
        QuatExact eta = (one + i) * h;
        QuatExact delta = (one + j) * h;
        return Order::from_zk_basis(k, {one, eta, delta, eta * delta}, "binary_octahedral");
    }
    default: {
        if (k.n() != 5) throw std::invalid_argument("binary_icosahedral order requires n = 5");
        // phi = theta, phi^-1 = theta - 1
        FieldElement half(k, frac(1, 2));
        FieldElement phi = FieldElement::theta(k);
        QuatExact zeta{phi * half, (phi - FieldElement::one(k)) * half, half, FieldElement::zero(k)};
        return Order::from_zk_basis(k, {one, i, zeta, i * zeta}, "binary_icosahedral");
    }
    }
}

struct RingCertificate {
    bool ok = true;
    std::string detail;
    std::optional<std::pair<std::size_t, std::size_t>> witness; // basis indices
    std::optional<QuatExact> product;
};

inline RingCertificate verify_ring(const Order& o)
{
    RingCertificate cert;
    if (!o.contains(quat_one(o.field()))) {
        cert.ok = false;
        cert.detail = "1 is not in the lattice";
        return cert;
    }
    const auto& b = o.zbasis();
    for (std::size_t s = 0; s < b.size(); ++s)
        for (std::size_t t = 0; t < b.size(); ++t) {
            QuatExact p = b[s] * b[t];
            if (!o.contains(p)) {
                cert.ok = false;
                cert.detail = "product of basis vectors " + std::to_string(s) + " and " + std::to_string(t) +
                              " leaves the lattice";
                cert.witness = std::make_pair(s, t);
                cert.product = p;
                return cert;
            }
        }
    cert.detail = "unit and closed under products";
    return cert;
}

namespace detail {

inline Integer common_denominator(const RatMatrix& m)
{
    Integer d = 1;
    for (const auto& row : m)
        for (const auto& x : row) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
    return d;
}

inline IntMatrix scaled_to_integers(const RatMatrix& m, const Integer& d)
{
    IntMatrix r = make_matrix<Integer>(m.size(), m.empty() ? 0 : m[0].size(), Integer(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            Rational x = m[i][j] * Rational(d);
            r[i][j] = x.get_num();
        }
    return r;
}

} // namespace detail

/// Canonical Z-basis of {q in O : trd(q) = 0}: lower column Hermite form in
/// the pure coordinates (i, theta i, j, theta j, k, theta k).
inline std::vector<QuatExact> pure_sublattice(const Order& o)
{
    const QuadraticField& k = o.field();
    const std::size_t deg = static_cast<std::size_t>(k.degree());
    const std::size_t r = o.rank();
    const RatMatrix& b = o.basis_matrix();

    RatMatrix re_rows(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(deg));
    IntMatrix ker = integer_kernel(detail::scaled_to_integers(re_rows, detail::common_denominator(re_rows)));

    // pure coordinates of the kernel vectors, as columns
    const std::size_t m = ker[0].size();
    RatMatrix pure = make_matrix<Rational>(r - deg, m, 0);
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t i = deg; i < r; ++i)
            for (std::size_t t = 0; t < r; ++t)
                if (ker[t][c] != 0) pure[i - deg][c] += b[i][t] * Rational(ker[t][c]);

    Integer den = detail::common_denominator(pure);
    HermiteResult hr = column_hermite(detail::scaled_to_integers(pure, den));
    if (hr.rank != r - deg) throw std::logic_error("pure sublattice has the wrong rank");

    std::vector<QuatExact> out;
    for (std::size_t c = 0; c < hr.rank; ++c) {
        RatVector v(r, 0);
        for (std::size_t i = 0; i < r - deg; ++i) v[i + deg] = Rational(hr.h[i][c]) / Rational(den);
        out.push_back(from_ambient(k, v));
    }
    return out;
}

} // namespace quatmod
