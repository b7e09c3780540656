#pragma once

// The stabilizer of the cusp at infinity for orders over a real quadratic
// field: Im O translations, the scalar units diag(eps^l, eps^-l), the torsion
// units, the 6x6 integer monodromy of eps^2 on Im O, and Z^6 x| Z.

#include "quatmod/generators.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quatmod {

struct GammaGenerators {
    std::vector<QuatMat2Exact> translations;
    std::optional<QuatMat2Exact> scalar_unit; // D_1 = diag(eps, eps^-1); absent over Q
    std::vector<QuatMat2Exact> torsion_units;
    std::optional<QuatMat2Exact> inversion;

    std::vector<QuatMat2Exact> all() const
    {
        std::vector<QuatMat2Exact> v = translations;
        if (scalar_unit) v.push_back(*scalar_unit);
        v.insert(v.end(), torsion_units.begin(), torsion_units.end());
        if (inversion) v.push_back(*inversion);
        return v;
    }
};

class CertificationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void certify_bg_sl2(const QuatMat2Exact& g, const char* what)
{
    const QuadraticField& k = field_of(g.a);
    if (!bg_check_all(g) || !(dieudonne_det_sq(g) == FieldElement::one(k)))
        throw CertificationError(std::string(what) + " fails the BG or determinant certification");
}

inline GammaGenerators gamma_generators(const Order& o)
{
    const QuadraticField& k = o.field();
    GammaGenerators gg;
    for (const auto& b : pure_sublattice(o)) {
        gg.translations.push_back(translation_matrix(b));
        certify_bg_sl2(gg.translations.back(), "translation");
    }
    if (!k.is_rational()) {
        FieldElement eps = fundamental_unit(k);
        gg.scalar_unit = diagonal_matrix(QuatExact::scalar(eps), QuatExact::scalar(eps.inverse()));
        certify_bg_sl2(*gg.scalar_unit, "scalar unit");
    }
    const FieldElement one = FieldElement::one(k);
    for (const auto& u : torsion_generators(o, unit_torsion(o))) {
        QuatExact su = galois_conj(u);
        if (!o.contains(su) || !(su.nrd() == one)) continue;
        gg.torsion_units.push_back(diagonal_matrix(u, u));
        certify_bg_sl2(gg.torsion_units.back(), "torsion unit");
    }
    gg.inversion = inversion_matrix(k);
    certify_bg_sl2(*gg.inversion, "inversion");
    return gg;
}

/// The generators fixing infinity: everything except the inversion.
inline GammaGenerators stabilizer_generators(const Order& o)
{
    GammaGenerators gg = gamma_generators(o);
    gg.inversion.reset();
    return gg;
}

struct ExtPair {
    ExtQuatF first;
    ExtQuatF second;
};

struct H5Pair {
    H5Point first;
    H5Point second;
};

/// (F_g, F_sigma(g)) acting componentwise.
inline ExtPair pair_action(const QuatMat2Exact& g, const ExtPair& p)
{
    return {moebius_apply(to_float(g, Place::first), p.first), moebius_apply(to_float(g, Place::second), p.second)};
}

inline H5Pair pair_action(const QuatMat2Exact& g, const H5Pair& p)
{
    return {poincare_extend(to_float(g, Place::first), p.first),
            poincare_extend(to_float(g, Place::second), p.second)};
}

/// Exact version of the action at infinity: true when g fixes infinity (c = 0).
inline bool fixes_infinity(const QuatMat2Exact& g) { return moebius_apply(g, ExtQuatExact::infinity()).is_infinity(); }

struct ImLattice {
    std::vector<QuatExact> basis;              // canonical pure_sublattice order
    std::vector<std::array<double, 6>> twisted; // (pure(b), pure(sigma b))
    double condition_number = 0;
};

inline ImLattice im_lattice_basis(const Order& o)
{
    if (o.field().is_rational()) throw std::invalid_argument("the twisted lattice needs a real quadratic field");
    ImLattice im;
    im.basis = pure_sublattice(o);
    Eigen::Matrix<double, 6, 6> m;
    for (std::size_t c = 0; c < im.basis.size(); ++c) {
        QuaternionPair tw = galois_twist(im.basis[c]);
        std::array<double, 6> v{tw.first[1], tw.first[2], tw.first[3], tw.second[1], tw.second[2], tw.second[3]};
        im.twisted.push_back(v);
        for (int r = 0; r < 6; ++r) m(r, static_cast<int>(c)) = v[static_cast<std::size_t>(r)];
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 6, 6>> svd(m);
    const auto& sv = svd.singularValues();
    if (!(sv(5) > 1e-12 * sv(0))) throw std::logic_error("twisted lattice vectors are dependent");
    im.condition_number = sv(0) / sv(5);
    return im;
}

/// Integer coordinates of a pure quaternion in the given pure basis.
inline IntVector pure_coordinates(const std::vector<QuatExact>& basis, const QuatExact& v)
{
    const std::size_t n = basis.size();
    const std::size_t deg = static_cast<std::size_t>(field_of(v).degree());
    RatMatrix a = make_matrix<Rational>(n, n, 0);
    RatMatrix rhs = make_matrix<Rational>(n, 1, 0);
    for (std::size_t c = 0; c < n; ++c) {
        RatVector bc = ambient_coords(basis[c]);
        for (std::size_t r = 0; r < n; ++r) a[r][c] = bc[r + deg];
    }
    RatVector vc = ambient_coords(v);
    for (std::size_t r = 0; r < deg; ++r)
        if (vc[r] != 0) throw std::invalid_argument("element is not pure");
    for (std::size_t r = 0; r < n; ++r) rhs[r][0] = vc[r + deg];
    auto sol = solve(a, rhs);
    if (!sol) throw std::logic_error("pure basis is singular");
    IntVector out;
    for (std::size_t r = 0; r < n; ++r) {
        if (!is_integer((*sol)[r][0])) throw std::logic_error("element leaves the pure lattice");
        out.push_back((*sol)[r][0].get_num());
    }
    return out;
}

struct MonodromyCertificate {
    IntMatrix matrix;
    IntVector charpoly; // leading coefficient first
    Integer det;
    bool anosov = false;
    std::vector<double> eigen_moduli;
    bool closed_form_moduli = false;
    // unit data; unset when the certificate came from a bare matrix
    std::optional<FieldElement> unit;       // eps
    std::optional<FieldElement> unit_power; // eps^(2 ell)
    std::optional<Rational> trace_unit;     // Tr(eps^(2 ell))
    std::optional<Rational> unit_norm;      // N(eps)
    long ell = 1;
};

/// Determinant, characteristic polynomial, eigenvalue moduli and the Anosov
/// verdict (|det| = 1, no modulus within tol of 1).
inline MonodromyCertificate anosov_certificate(const IntMatrix& m, double tol = 1e-9)
{
    MonodromyCertificate cert;
    cert.matrix = m;
    cert.det = determinant(m);
    cert.charpoly = characteristic_polynomial(m);
    const std::size_t n = m.size();

    // cube of x^2 - t x + s ?
    if (n == 6 && cert.charpoly[1] % 3 == 0) {
        Integer t = -cert.charpoly[1] / 3;
        Integer s3 = cert.charpoly[2] - 3 * t * t;
        if (s3 % 3 == 0) {
            IntVector p{1, -t, s3 / 3};
            if (poly_mul(poly_mul(p, p), p) == cert.charpoly) {
                const double td = t.get_d(), sd = p[2].get_d();
                const double disc = td * td - 4 * sd;
                double r1, r2;
                if (disc >= 0) {
                    r1 = std::abs((td + std::sqrt(disc)) / 2);
                    r2 = std::abs((td - std::sqrt(disc)) / 2);
                } else {
                    r1 = r2 = std::sqrt(std::abs(sd));
                }
                cert.eigen_moduli = {r1, r1, r1, r2, r2, r2};
                cert.closed_form_moduli = true;
            }
        }
    }
    if (!cert.closed_form_moduli && n > 0) {
        Eigen::MatrixXd a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j].get_d();
        Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) cert.eigen_moduli.push_back(std::abs(es.eigenvalues()(i)));
    }
    std::sort(cert.eigen_moduli.begin(), cert.eigen_moduli.end(), std::greater<>());
    bool unimodular = cert.det == 1 || cert.det == -1;
    bool hyperbolic = std::none_of(cert.eigen_moduli.begin(), cert.eigen_moduli.end(),
                                   [tol](double r) { return std::abs(r - 1) <= tol; });
    cert.anosov = unimodular && hyperbolic;
    return cert;
}

/// Matrix of b -> eps^(2 ell) b on Im O in the canonical pure basis.
inline IntMatrix monodromy_matrix(const Order& o, long ell)
{
    const QuadraticField& k = o.field();
    if (k.is_rational()) throw std::invalid_argument("monodromy needs a real quadratic field");
    const FieldElement w = fundamental_unit(k).pow(2 * ell);
    const auto basis = pure_sublattice(o);
    IntMatrix m = make_matrix<Integer>(basis.size(), basis.size(), Integer(0));
    for (std::size_t c = 0; c < basis.size(); ++c) {
        IntVector col = pure_coordinates(basis, basis[c] * w);
        for (std::size_t r = 0; r < basis.size(); ++r) m[r][c] = col[r];
    }
    return m;
}

inline MonodromyCertificate monodromy(const Order& o, long ell = 1)
{
    if (ell < 1) throw std::invalid_argument("ell must be positive");
    MonodromyCertificate cert = anosov_certificate(monodromy_matrix(o, ell));
    const FieldElement eps = fundamental_unit(o.field());
    cert.ell = ell;
    cert.unit = eps;
    cert.unit_power = eps.pow(2 * ell);
    cert.trace_unit = cert.unit_power->trace();
    cert.unit_norm = eps.norm();
    return cert;
}

/// (x^2 - Tr(w) x + N(w))^3 for w = eps^(2 ell).
inline IntVector expected_charpoly(const MonodromyCertificate& cert)
{
    if (!cert.unit_power) throw std::invalid_argument("certificate carries no unit data");
    Rational tr = cert.unit_power->trace(), nm = cert.unit_power->norm();
    IntVector p{1, -tr.get_num(), nm.get_num()};
    return poly_mul(poly_mul(p, p), p);
}

// Z^6 x| Z with the monodromy acting on the lattice part.

struct SolvElement {
    IntVector lattice;
    long shift = 0;
    friend bool operator==(const SolvElement&, const SolvElement&) = default;
};

class SolvGroup {
public:
    explicit SolvGroup(IntMatrix m) : m_(std::move(m))
    {
        Integer d = determinant(m_);
        if (d != 1 && d != -1) throw std::invalid_argument("monodromy matrix must have determinant +-1");
        m_inv_ = unimodular_inverse(m_);
    }

    const IntMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.size(); }

    IntMatrix power(long ell) const { return ell >= 0 ? int_power(m_, static_cast<unsigned long>(ell)) : int_power(m_inv_, static_cast<unsigned long>(-ell)); }

    SolvElement identity() const { return {IntVector(dim(), 0), 0}; }

    SolvElement mul(const SolvElement& g, const SolvElement& h) const
    {
        IntVector v = matvec(power(g.shift), h.lattice);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += g.lattice[i];
        return {std::move(v), g.shift + h.shift};
    }

    SolvElement inverse(const SolvElement& g) const
    {
        IntVector v = matvec(power(-g.shift), g.lattice);
        for (auto& x : v) x = -x;
        return {std::move(v), -g.shift};
    }

private:
    IntMatrix m_;
    IntMatrix m_inv_;
};

inline SolvElement solv_mul(const SolvElement& g, const SolvElement& h, const IntMatrix& m)
{
    return SolvGroup(m).mul(g, h);
}

} // namespace quatmod
