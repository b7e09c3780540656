// Sends infinity to alpha/c with a Hurwitz matrix, then pushes a low point of
// H^5 back up into the chimney.
#include "quatmod/quatmod.hpp"

#include <iostream>

using namespace quatmod;

int main()
{
    const QuadraticField q;
    QuatExact alpha = quat(q, 2, 1, 0, 1);
    BezoutCusp b = bezout_cusp_matrix(alpha, 7);
    std::cout << "gamma = [[" << b.gamma.a << ", " << b.gamma.b << "], [" << b.gamma.c << ", " << b.gamma.d << "]]\n";
    std::cout << "det^2 = " << dieudonne_det_sq(b.gamma) << '\n';
    std::cout << "gamma(inf) = " << moebius_apply(b.gamma, ExtQuatExact::infinity()).value() << '\n';

    H5Point p{{4.3, -0.2, 1.7, 0.05}, 0.03};
    ChimneyPoint c = reduce_to_chimney(p);
    std::cout << "reduced to q = " << c.p.q << ", t = " << c.p.t << " after " << c.inversions << " inversions\n";
    auto gens = generators(make_named_order(NamedOrder::hurwitz, q));
    std::cout << "word:";
    for (const auto& l : c.witness_word) std::cout << ' ' << gens[l.generator].name << '^' << l.exponent;
    std::cout << '\n';
}
