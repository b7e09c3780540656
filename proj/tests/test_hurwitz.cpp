#include "support.hpp"

#include <gtest/gtest.h>

using namespace qt;

namespace {

const QuadraticField Q;

bool left_divides(const QuatExact& d, const QuatExact& a) { return is_hurwitz_integer(d.inverse() * a); }

H5Point replay(const std::vector<Generator>& gens, const Word& w, H5Point p)
{
    for (const auto& l : w) p = poincare_extend(to_float(generator_power(gens, l)), p);
    return p;
}

} // namespace

TEST(Hurwitz, DivmodExample)
{
    auto [qt_, r] = right_divmod(quat(Q, 3, 2, 1, 0), quat(Q, 1, 1, 0, 0));
    EXPECT_EQ(quat(Q, 3, 2, 1), quat(Q, 1, 1) * qt_ + r);
    EXPECT_LT(r.nrd().a(), 2);
    EXPECT_TRUE(is_hurwitz_integer(qt_));
}

TEST(Hurwitz, DivmodRandom)
{
    Rng r(51);
    for (int t = 0; t < 1000; ++t) {
        QuatExact a = r.hurwitz(20), b = r.hurwitz(6);
        if (b.is_zero()) continue;
        auto [q, rem] = right_divmod(a, b);
        ASSERT_EQ(a, b * q + rem);
        EXPECT_TRUE(is_hurwitz_integer(q));
        EXPECT_TRUE(is_hurwitz_integer(rem));
        EXPECT_LT(rem.nrd().a(), b.nrd().a());
        // the chosen remainder is no larger than any unit-neighbour alternative
        for (const auto& u : hurwitz_ball(1)) {
            if (u.is_zero()) continue;
            QuatExact alt = a - b * (q + u);
            EXPECT_LE(rem.nrd().a(), alt.nrd().a());
        }
    }
    EXPECT_THROW(right_divmod(quat(Q, 1), quat_zero(Q)), std::domain_error);
    EXPECT_THROW(right_divmod(quat(Q, frac(1, 3)), quat(Q, 1)), std::invalid_argument);
}

TEST(Hurwitz, GcdExamples)
{
    QuatExact g = right_gcd(quat(Q, 1, 1), quat(Q, 2));
    EXPECT_EQ(g.nrd().a(), 2);
    EXPECT_TRUE(left_divides(quat(Q, 1, 1), g) && left_divides(g, quat(Q, 1, 1)));
    EXPECT_EQ(right_gcd(quat(Q, 0, 1), quat(Q, 2)).nrd().a(), 1);
}

TEST(Hurwitz, GcdAgainstDivisorEnumeration)
{
    // Common left divisors of small elements, enumerated from the ball of
    // all Hurwitz integers of small norm: the gcd has the largest norm and
    // every common divisor divides it.
    auto ball = hurwitz_ball(16);
    Rng r(52);
    for (int t = 0; t < 40; ++t) {
        QuatExact a = r.hurwitz(2), b = r.hurwitz(2);
        if (a.is_zero() || b.is_zero()) continue;
        QuatExact g = right_gcd(a, b);
        ASSERT_TRUE(left_divides(g, a) && left_divides(g, b));
        Rational best = 0;
        for (const auto& d : ball) {
            if (d.is_zero() || !left_divides(d, a) || !left_divides(d, b)) continue;
            best = std::max(best, d.nrd().a());
            EXPECT_TRUE(left_divides(d, g));
        }
        if (g.nrd().a() <= 16) {
            EXPECT_EQ(best, g.nrd().a());
        }
    }
}

TEST(Hurwitz, GcdIsUnitNormalized)
{
    QuatExact g = right_gcd(quat(Q, 3, 1, 1, 1), quat(Q, 4, 0, 2, 2));
    for (const auto& x : hurwitz_ball(1))
        if (x.nrd().a() == 1) {
            EXPECT_FALSE(lex_less(g, g * x));
        }
}

TEST(Hurwitz, BezoutExamples)
{
    for (auto [alpha, c] : {std::pair{quat(Q, 1), 2L}, std::pair{quat(Q, 0, 1), 2L}, std::pair{quat(Q, 2, 1), 3L}}) {
        BezoutCusp b = bezout_cusp_matrix(alpha, c);
        EXPECT_EQ(alpha * b.mu - quat(Q, c) * b.nu, quat_one(Q));
        EXPECT_EQ(dieudonne_det_sq(b.gamma), FieldElement::one(Q));
        ExtQuatExact img = moebius_apply(b.gamma, ExtQuatExact::infinity());
        EXPECT_EQ(img, ExtQuatExact(alpha * quat(Q, c).inverse()));
    }
    EXPECT_THROW(bezout_cusp_matrix(quat(Q, 1, 1), 2), std::invalid_argument);
    EXPECT_THROW(bezout_cusp_matrix(quat(Q, 1), 0), std::invalid_argument);
}

TEST(Hurwitz, BezoutRandomCoprime)
{
    Order hur = make_named_order(NamedOrder::hurwitz, Q);
    Rng r(53);
    int done = 0;
    while (done < 200) {
        QuatExact alpha = r.hurwitz(10);
        long c = r.integer(-30, 30);
        if (c == 0 || !is_hurwitz_unit(right_gcd(alpha, quat(Q, c)))) continue;
        ++done;
        BezoutCusp b = bezout_cusp_matrix(alpha, c);
        EXPECT_TRUE(entries_in(b.gamma, hur));
        EXPECT_EQ(dieudonne_det_sq(b.gamma), FieldElement::one(Q));
        EXPECT_EQ(moebius_apply(b.gamma, ExtQuatExact::infinity()), ExtQuatExact(alpha * quat(Q, c).inverse()));
        QuatMat2Exact gi = sl2_inverse(b.gamma);
        EXPECT_TRUE(entries_in(gi, hur));
    }
}

TEST(Chimney, Examples)
{
    ChimneyPoint c = reduce_to_chimney({{0, 0, 0, 0}, 0.5});
    EXPECT_DOUBLE_EQ(c.p.t, 2.0);
    EXPECT_EQ(c.witness_word, (Word{{chimney_gen::inversion, 1}}));
    ChimneyPoint d = reduce_to_chimney({{3.2, -1.1, 0.4, 7.9}, 2});
    EXPECT_TRUE(in_chimney(d.p));
    EXPECT_EQ(d.inversions, 0u);
    EXPECT_DOUBLE_EQ(d.p.t, 2);
    EXPECT_THROW(reduce_to_chimney({{0, 0, 0, 0}, -1}), std::domain_error);
    EXPECT_THROW(reduce_to_chimney({{0.1, 0.1, 0.1, 0.1}, 1e-6}, 1), ChimneyError);
}

TEST(Chimney, RandomPointsReplay)
{
    auto gens = generators(make_named_order(NamedOrder::hurwitz, Q));
    Rng r(54);
    for (int t = 0; t < 300; ++t) {
        H5Point p{r.quaternion_f(20), r.real(0.01, 10)};
        ChimneyPoint c = reduce_to_chimney(p);
        EXPECT_TRUE(in_chimney(c.p));
        H5Point back = replay(gens, c.witness_word, p);
        EXPECT_LT(dist(back.q, c.p.q), 1e-7);
        EXPECT_LT(std::abs(back.t - c.p.t), 1e-7);
    }
}
