#pragma once

// The non-minimal generating set of PSL_2(O) for orders over Q: the
// inversion, translations by the Z-basis of O, and diagonal torsion units.

#include "quatmod/matrix2.hpp"
#include "quatmod/torsion.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace quatmod {

struct Generator {
    std::string name;
    QuatMat2Exact matrix;
};

/// Index 0 is the inversion, indices 1..4 translate by the Z-basis of the
/// order, the rest are diag(u, u) for the torsion generators u.
inline std::vector<Generator> generators(const Order& o)
{
    const QuadraticField& k = o.field();
    if (!k.is_rational()) throw std::invalid_argument("the translation/inversion generating set needs K = Q");
    std::vector<Generator> gens;
    gens.push_back({"I", inversion_matrix(k)});
    for (const auto& b : o.zbasis()) {
        std::ostringstream os;
        os << "T" << b;
        gens.push_back({os.str(), translation_matrix(b)});
    }
    for (const auto& u : torsion_generators(o, unit_torsion(o))) {
        std::ostringstream os;
        os << "D" << u;
        gens.push_back({os.str(), diagonal_matrix(u, u)});
    }
    return gens;
}

/// A word letter: generator index and exponent.
struct Letter {
    std::size_t generator = 0;
    long exponent = 1;
    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

inline QuatMat2Exact generator_power(const std::vector<Generator>& gens, const Letter& l)
{
    const QuatMat2Exact& g = gens.at(l.generator).matrix;
    const QuadraticField& k = field_of(g.a);
    QuatMat2Exact base = l.exponent < 0 ? sl2_inverse(g) : g;
    QuatMat2Exact r = identity2(k);
    for (long e = l.exponent < 0 ? -l.exponent : l.exponent; e > 0; --e) r = r * base;
    return r;
}

/// Product of the letters, left to right.
inline QuatMat2Exact evaluate_word(const std::vector<Generator>& gens, const Word& w, const QuadraticField& k)
{
    QuatMat2Exact r = identity2(k);
    for (const auto& l : w) r = r * generator_power(gens, l);
    return r;
}

} // namespace quatmod
