// Prints the monodromy of eps^2 on Im O for a few real quadratic fields.
#include "quatmod/quatmod.hpp"

#include <iostream>

using namespace quatmod;

int main()
{
    for (long n : {2L, 5L, 13L}) {
        QuadraticField k(n);
        Order o = make_named_order(NamedOrder::hurwitz, k);
        MonodromyCertificate c = monodromy(o, 1);
        std::cout << "n = " << n << ", eps = " << c.unit->to_sqrt_string() << ", N(eps) = " << *c.unit_norm << '\n';
        for (const auto& row : c.matrix) {
            std::cout << "  ";
            for (const auto& x : row) std::cout << x << ' ';
            std::cout << '\n';
        }
        std::cout << "  charpoly:";
        for (const auto& x : c.charpoly) std::cout << ' ' << x;
        std::cout << "\n  anosov: " << std::boolalpha << c.anosov << "\n\n";
    }
}
