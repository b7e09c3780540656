#pragma once

// The finite group O^1 of reduced-norm-one units of a definite order,
// found by short-vector enumeration of Q(u) = |u|^2 + |sigma(u)|^2.

#include "quatmod/order.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace quatmod {

/// Gram matrix of Q(u) = Tr_{K/Q}(nrd(u)) in the Z-basis of the order.
inline RatMatrix trace_form_gram(const Order& o)
{
    const auto& b = o.zbasis();
    const std::size_t r = b.size();
    RatMatrix g = make_matrix<Rational>(r, r, 0);
    for (std::size_t s = 0; s < r; ++s)
        for (std::size_t t = s; t < r; ++t) {
            FieldElement dot = b[s][0] * b[t][0] + b[s][1] * b[t][1] + b[s][2] * b[t][2] + b[s][3] * b[t][3];
            g[s][t] = g[t][s] = dot.trace();
        }
    return g;
}

/// All integer vectors x with x^T g x <= bound (Fincke-Pohst). The float
/// Cholesky is only used to prune; callers verify candidates exactly.
inline std::vector<IntVector> short_vectors(const RatMatrix& g, double bound)
{
    const std::size_t n = g.size();
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q[i][j] = to_double(g[i][j]);
    // q_ii <- r_ii^2, q_ij <- r_ij / r_ii (i < j)
    for (std::size_t i = 0; i < n; ++i) {
        if (!(q[i][i] > 0)) throw std::domain_error("form is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }

    const double slack = 1e-6 * std::max(1.0, bound);
    std::vector<IntVector> out;
    std::vector<long> x(n, 0);
    std::function<void(std::size_t, double)> descend = [&](std::size_t level, double budget) {
        std::size_t i = level - 1;
        double c = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) c -= q[i][j] * static_cast<double>(x[j]);
        double w = std::sqrt(std::max(0.0, budget + slack) / q[i][i]);
        auto lo = static_cast<long>(std::ceil(c - w - 1e-9));
        auto hi = static_cast<long>(std::floor(c + w + 1e-9));
        for (long v = lo; v <= hi; ++v) {
            double d = static_cast<double>(v) - c;
            double rest = budget - q[i][i] * d * d;
            if (rest < -slack) continue;
            x[i] = v;
            if (i == 0) {
                IntVector r(n);
                for (std::size_t t = 0; t < n; ++t) r[t] = x[t];
                out.push_back(std::move(r));
            } else {
                descend(i, rest);
            }
        }
        x[i] = 0;
    };
    if (n > 0) descend(n, bound);
    return out;
}

struct TorsionClass {
    std::string family; // "C", "Q", "2T", "2O", "2I"
    int parameter = 0;  // n of C_n or 4n of Q_{4n}; group order otherwise

    std::string label() const
    {
        if (family == "C" || family == "Q") return family + "_" + std::to_string(parameter);
        return family;
    }
    friend bool operator==(const TorsionClass&, const TorsionClass&) = default;
};

struct TorsionGroup {
    std::vector<QuatExact> elements; // sorted by lex_less
    TorsionClass classification;
};

inline int element_order(const QuatExact& u, int cap = 1000)
{
    const QuatExact one = quat_one(field_of(u));
    QuatExact p = u;
    for (int m = 1; m <= cap; ++m) {
        if (p == one) return m;
        p = p * u;
    }
    throw std::domain_error("element has no finite order below the cap");
}

inline bool is_closed_group(const std::vector<QuatExact>& g)
{
    if (g.empty()) return false;
    std::set<QuatExact, LexLess> s(g.begin(), g.end());
    const QuadraticField& k = field_of(g.front());
    if (!s.count(quat_one(k)) || !s.count(-quat_one(k))) return false;
    for (const auto& x : g) {
        if (!s.count(x.conj())) return false; // conj = inverse for nrd 1
        for (const auto& y : g)
            if (!s.count(x * y)) return false;
    }
    return true;
}

namespace detail {

inline int euler_phi(int m)
{
    int r = m;
    for (int p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            r -= r / p;
        }
    if (m > 1) r -= r / m;
    return r;
}

inline std::map<int, int> cyclic_census(int n)
{
    std::map<int, int> c;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) c[d] = euler_phi(d);
    return c;
}

} // namespace detail

/// Census: element order -> number of elements of that order.
inline std::map<int, int> order_census(const std::vector<QuatExact>& g)
{
    std::map<int, int> c;
    for (const auto& u : g) ++c[element_order(u)];
    return c;
}

inline TorsionClass classify_torsion(const std::vector<QuatExact>& g)
{
    if (!is_closed_group(g)) throw std::invalid_argument("elements do not form a group");
    const int n = static_cast<int>(g.size());
    const auto census = order_census(g);
    using C = std::map<int, int>;
    if (n == 24 && census == C{{1, 1}, {2, 1}, {3, 8}, {4, 6}, {6, 8}}) return {"2T", 24};
    if (n == 48 && census == C{{1, 1}, {2, 1}, {3, 8}, {4, 18}, {6, 8}, {8, 12}}) return {"2O", 48};
    if (n == 120 && census == C{{1, 1}, {2, 1}, {3, 20}, {4, 30}, {5, 24}, {6, 20}, {10, 24}}) return {"2I", 120};
    if (census == detail::cyclic_census(n)) return {"C", n};
    if (n % 4 == 0 && n >= 8) {
        C expect = detail::cyclic_census(n / 2);
        expect[4] += n / 2;
        if (census == expect) return {"Q", n};
    }
    std::string msg = "unrecognized census for a group of order " + std::to_string(n) + ":";
    for (auto [o, m] : census) msg += " " + std::to_string(o) + "^" + std::to_string(m);
    throw std::logic_error(msg);
}

inline TorsionGroup unit_torsion(const Order& o)
{
    const QuadraticField& k = o.field();
    const double bound = k.is_rational() ? 1.0 : 2.0;
    const FieldElement one = FieldElement::one(k);
    TorsionGroup tg;
    for (const auto& x : short_vectors(trace_form_gram(o), bound)) {
        QuatExact u = o.element(x);
        if (u.nrd() == one) tg.elements.push_back(std::move(u));
    }
    std::sort(tg.elements.begin(), tg.elements.end(), lex_less);
    tg.classification = classify_torsion(tg.elements);
    return tg;
}

/// Subgroup generated by the given unit quaternions of finite order.
inline std::vector<QuatExact> generated_subgroup(const std::vector<QuatExact>& gens, const QuadraticField& k)
{
    std::set<QuatExact, LexLess> s{quat_one(k)};
    std::vector<QuatExact> frontier{quat_one(k)};
    while (!frontier.empty()) {
        std::vector<QuatExact> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                QuatExact y = x * g;
                if (s.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return {s.begin(), s.end()};
}

/// A generating set of O^1: {i, j} for the Lipschitz order, {i, xi, tau}
/// with tau = (1+i+j-k)/2 for the Hurwitz order over Q, otherwise chosen
/// greedily from the canonically sorted group.
inline std::vector<QuatExact> torsion_generators(const Order& o, const TorsionGroup& tg)
{
    const QuadraticField& k = o.field();
    std::vector<QuatExact> gens;
    if (o.name() == "lipschitz") {
        gens = {quat(k, 0, 1), quat(k, 0, 0, 1)};
    } else if (o.name() == "hurwitz" && k.is_rational()) {
        gens = {quat(k, 0, 1), hurwitz_xi(k), quat(k, frac(1, 2), frac(1, 2), frac(1, 2), frac(-1, 2))};
    }
    if (!gens.empty() && generated_subgroup(gens, k).size() == tg.elements.size()) return gens;
    gens.clear();
    std::set<QuatExact, LexLess> reached{quat_one(k)};
    // prefer elements of large order so the set stays short
    std::vector<QuatExact> cand = tg.elements;
    std::stable_sort(cand.begin(), cand.end(),
                     [](const QuatExact& x, const QuatExact& y) { return element_order(x) > element_order(y); });
    for (const auto& u : cand) {
        if (reached.size() == tg.elements.size()) break;
        if (reached.count(u)) continue;
        gens.push_back(u);
        auto sub = generated_subgroup(gens, k);
        reached = {sub.begin(), sub.end()};
    }
    return gens;
}

} // namespace quatmod
