#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace quatmod {

using Integer = mpz_class;
using Rational = mpq_class;

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Canonical n/d.
inline Rational frac(long n, long d)
{
    if (d == 0) throw std::domain_error("zero denominator");
    Rational q{Integer(n), Integer(d)};
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer floor_of(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Nearest integer, ties rounded up (floor(q + 1/2)).
inline Integer round_of(const Rational& q) { return floor_of(q + frac(1, 2)); }

inline std::string to_string(const Rational& q)
{
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Parses "p", "-p", "p/q". Whitespace is not accepted.
inline Rational parse_rational(std::string_view s)
{
    auto valid_int = [](std::string_view t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num(s.substr(0, slash));
    std::string den = slash == std::string_view::npos ? "1" : std::string(s.substr(slash + 1));
    if (!valid_int(num, true) || !valid_int(den, false))
        throw ParseError("malformed rational '" + std::string(s) + "'");
    if (num[0] == '+') num.erase(0, 1);
    Rational q{Integer(num), Integer(den)};
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    q.canonicalize();
    return q;
}

/// Correctly rounded (round-to-nearest) conversion to binary64.
inline double to_double(const Rational& q)
{
    mpfr_t x;
    mpfr_init2(x, 53);
    mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
    double d = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return d;
}

/// Correctly rounded value of x + y*sqrt(n) for n >= 1. Precision is raised
/// until MPFR certifies the rounding.
inline double surd_to_double(const Rational& x, const Rational& y, long n)
{
    if (y == 0 || n == 1) return to_double(x + y * n);
    for (mpfr_prec_t prec = 128;; prec *= 2) {
        mpfr_t s, t;
        mpfr_inits2(prec, s, t, static_cast<mpfr_ptr>(nullptr));
        mpfr_set_si(s, n, MPFR_RNDN);
        mpfr_sqrt(s, s, MPFR_RNDN);
        mpfr_mul_q(s, s, y.get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
        mpfr_exp_t operand_exp = std::max(mpfr_zero_p(t) ? mpfr_get_exp(s) : mpfr_get_exp(t),
                                          mpfr_get_exp(s));
        mpfr_add(s, s, t, MPFR_RNDN);
        // absolute error of the four rounded steps is below 2^(operand_exp - prec + 3)
        bool ok = false;
        if (mpfr_zero_p(s) == 0) {
            mpfr_exp_t err = mpfr_get_exp(s) - (operand_exp - prec + 3);
            ok = err > 0 && mpfr_can_round(s, err, MPFR_RNDN, MPFR_RNDZ, 54) != 0;
        }
        double d = mpfr_get_d(s, MPFR_RNDN);
        mpfr_clears(s, t, static_cast<mpfr_ptr>(nullptr));
        if (ok || prec > 1 << 16) return d;
    }
}

} // namespace quatmod
