#include "support.hpp"

#include <gtest/gtest.h>

using namespace qt;

namespace {

std::vector<long> squarefree_upto(long hi)
{
    std::vector<long> v;
    for (long n = 2; n <= hi; ++n)
        if (is_squarefree(n)) v.push_back(n);
    return v;
}

} // namespace

TEST(QuadField, KnownFundamentalUnits)
{
    EXPECT_EQ(fundamental_unit(QuadraticField(2)).to_sqrt_string(), "1+sqrt(2)");
    EXPECT_EQ(fundamental_unit(QuadraticField(3)).to_sqrt_string(), "2+sqrt(3)");
    EXPECT_EQ(fundamental_unit(QuadraticField(5)).to_string(), "theta");
    EXPECT_EQ(fundamental_unit(QuadraticField(13)).to_string(), "1+theta");
    EXPECT_EQ(fundamental_unit(QuadraticField(13)).to_sqrt_string(), "3/2+1/2*sqrt(13)");
}

TEST(QuadField, UnitMatchesPellSweep)
{
    for (long n : squarefree_upto(50)) {
        QuadraticField k(n);
        FieldElement eps = fundamental_unit(k);
        auto [xy, m] = pell_sweep_unit(n);
        auto [x, y] = eps.sqrt_basis();
        EXPECT_EQ(x, frac(xy.first, m)) << "n=" << n;
        EXPECT_EQ(y, frac(xy.second, m)) << "n=" << n;
        EXPECT_TRUE(eps.norm() == 1 || eps.norm() == -1);
        EXPECT_GT(eps.to_double(), 1.0);
    }
}

TEST(QuadField, UnitIsMinimal)
{
    // No unit strictly between 1 and eps: scan a + b theta with small b.
    for (long n : squarefree_upto(50)) {
        QuadraticField k(n);
        FieldElement eps = fundamental_unit(k);
        double e = eps.to_double();
        for (long b = -30; b <= 30; ++b)
            for (long a = -200; a <= 200; ++a) {
                FieldElement u(k, a, b);
                if (u.norm() != 1 && u.norm() != -1) continue;
                double v = u.to_double();
                EXPECT_FALSE(v > 1 + 1e-12 && v < e - 1e-12) << "n=" << n << " u=" << u.to_string();
            }
    }
}

TEST(QuadField, NormOfUnitPowers)
{
    for (long n : {2L, 5L, 13L, 7L}) {
        QuadraticField k(n);
        FieldElement eps = fundamental_unit(k);
        for (long l = -20; l <= 20; ++l) {
            Rational expect = (l % 2 == 0) ? Rational(1) : eps.norm();
            EXPECT_EQ(eps.pow(l).norm(), expect) << "n=" << n << " l=" << l;
        }
    }
}

TEST(QuadField, GaloisIsInvolutiveHomomorphism)
{
    Rng r(11);
    for (long n : {1L, 2L, 3L, 5L, 13L, 21L}) {
        QuadraticField k(n);
        for (int t = 0; t < 200; ++t) {
            FieldElement x = r.field_element(k), y = r.field_element(k);
            EXPECT_EQ(x.conj().conj(), x);
            EXPECT_EQ((x + y).conj(), x.conj() + y.conj());
            EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
            EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
            EXPECT_EQ((x + y).trace(), x.trace() + y.trace());
            if (!k.is_rational()) {
                EXPECT_EQ(x * x.conj(), FieldElement(k, x.norm()));
            }
            if (!x.is_zero()) {
                EXPECT_EQ(x * x.inverse(), FieldElement::one(k));
            }
        }
    }
}

TEST(QuadField, RealEmbeddings)
{
    Rng r(12);
    for (long n : {2L, 5L, 13L, 47L}) {
        QuadraticField k(n);
        for (int t = 0; t < 200; ++t) {
            FieldElement x = r.field_element(k);
            auto [e1, e2] = x.embed_real_pair();
            double nm = to_double(x.norm());
            EXPECT_NEAR(e1 * e2, nm, 1e-12 * std::max(1.0, std::abs(nm)));
            auto [c1, c2] = x.conj().embed_real_pair();
            EXPECT_EQ(c1, e2);
            EXPECT_EQ(c2, e1);
            EXPECT_EQ(x.sign(), e1 > 0 ? 1 : e1 < 0 ? -1 : 0);
        }
    }
}

TEST(QuadField, ParseRoundTrip)
{
    Rng r(13);
    for (long n : {1L, 2L, 5L, 13L}) {
        QuadraticField k(n);
        for (int t = 0; t < 200; ++t) {
            FieldElement x = r.field_element(k);
            EXPECT_EQ(FieldElement::parse(k, x.to_string()), x) << x.to_string();
        }
    }
    QuadraticField k5(5);
    EXPECT_EQ(FieldElement::parse(k5, "-theta"), FieldElement(k5, 0, -1));
    EXPECT_EQ(FieldElement::parse(k5, "1/2+3/2*theta"), FieldElement(k5, frac(1, 2), frac(3, 2)));
    EXPECT_THROW(FieldElement::parse(QuadraticField(), "theta"), ParseError);
    EXPECT_THROW(FieldElement::parse(k5, "1+2theta"), ParseError);
}

TEST(QuadField, RejectsBadModulus)
{
    EXPECT_THROW(QuadraticField(4), std::invalid_argument);
    EXPECT_THROW(QuadraticField(0), std::invalid_argument);
    EXPECT_THROW(QuadraticField(-3), std::invalid_argument);
    EXPECT_THROW(fundamental_unit(QuadraticField()), std::invalid_argument);
}

TEST(QuadField, TotallyPositiveGenerator)
{
    for (long n : squarefree_upto(30)) {
        QuadraticField k(n);
        FieldElement g = totally_positive_generator(k);
        auto [e1, e2] = g.embed_real_pair();
        EXPECT_GT(e1, 0);
        EXPECT_GT(e2, 0);
        EXPECT_EQ(g.norm(), 1);
    }
}
