#pragma once

// JSON forms. Exact numbers are strings ("p/q", "a+b*theta"); quaternions are
// 4-element arrays; 2x2 matrices are [[a, b], [c, d]]; floats appear only in
// geometric values.

#include "quatmod/cusp_bundle.hpp"
#include "quatmod/hurwitz.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace quatmod {

using Json = nlohmann::ordered_json;

class SchemaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline Json to_json(const Rational& q) { return to_string(q); }
inline Json to_json(const FieldElement& x) { return x.to_string(); }

inline Json to_json(const Integer& z)
{
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

inline Json to_json(const QuatExact& q) { return Json::array({to_json(q[0]), to_json(q[1]), to_json(q[2]), to_json(q[3])}); }
inline Json to_json(double x) { return x == 0 ? 0.0 : x; }
inline Json to_json(const QuatF& q) { return Json::array({to_json(q[0]), to_json(q[1]), to_json(q[2]), to_json(q[3])}); }

inline Json to_json(const ExtQuatF& p) { return p.is_infinity() ? Json("inf") : to_json(p.value()); }
inline Json to_json(const ExtQuatExact& p) { return p.is_infinity() ? Json("inf") : to_json(p.value()); }

template <class T>
Json to_json(const Mat2<T>& g)
{
    return Json::array({Json::array({to_json(g.a), to_json(g.b)}), Json::array({to_json(g.c), to_json(g.d)})});
}

inline Json to_json(const H5Point& p) { return {{"q", to_json(p.q)}, {"t", to_json(p.t)}}; }

inline Json to_json(const IntMatrix& m)
{
    Json a = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        a.push_back(r);
    }
    return a;
}

inline Json to_json(const IntVector& v)
{
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Json to_json(const Word& w)
{
    Json a = Json::array();
    for (const auto& l : w) a.push_back(Json::array({l.generator, l.exponent}));
    return a;
}

inline Json field_json(const QuadraticField& k) { return {{"n", k.n()}, {"theta", k.theta_description()}}; }

// Parsing.

inline Rational rational_from_json(const Json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw SchemaError("expected a rational given as a string or integer, got " + j.dump());
}

inline Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        Rational q = parse_rational(j.get<std::string>());
        if (is_integer(q)) return q.get_num();
    }
    throw SchemaError("expected an integer, got " + j.dump());
}

inline FieldElement field_element_from_json(const QuadraticField& k, const Json& j)
{
    if (j.is_string()) return FieldElement::parse(k, j.get<std::string>());
    if (j.is_number_integer()) return {k, Rational(j.get<long>())};
    throw SchemaError("expected a field element string such as \"1/2+3*theta\", got " + j.dump());
}

inline QuatExact quat_from_json(const QuadraticField& k, const Json& j)
{
    if (!j.is_array() || j.size() != 4) throw SchemaError("a quaternion is an array of 4 coordinates, got " + j.dump());
    return {field_element_from_json(k, j[0]), field_element_from_json(k, j[1]), field_element_from_json(k, j[2]),
            field_element_from_json(k, j[3])};
}

inline QuatF quatf_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 4) throw SchemaError("a quaternion is an array of 4 coordinates, got " + j.dump());
    QuatF q;
    for (int n = 0; n < 4; ++n) {
        const Json& x = j[static_cast<std::size_t>(n)];
        if (x.is_number()) q[n] = x.get<double>();
        else if (x.is_string()) q[n] = to_double(parse_rational(x.get<std::string>()));
        else throw SchemaError("quaternion coordinate must be a number, got " + x.dump());
    }
    return q;
}

inline ExtQuatF ext_quatf_from_json(const Json& j)
{
    if (j.is_string() && j.get<std::string>() == "inf") return ExtQuatF::infinity();
    return quatf_from_json(j);
}

namespace detail {
inline void check_mat_shape(const Json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
        j[1].size() != 2)
        throw SchemaError("a matrix is [[a, b], [c, d]] with quaternion entries");
}
} // namespace detail

inline QuatMat2Exact mat2_from_json(const QuadraticField& k, const Json& j)
{
    detail::check_mat_shape(j);
    return {quat_from_json(k, j[0][0]), quat_from_json(k, j[0][1]), quat_from_json(k, j[1][0]),
            quat_from_json(k, j[1][1])};
}

inline QuatMat2Float mat2f_from_json(const Json& j)
{
    detail::check_mat_shape(j);
    return {quatf_from_json(j[0][0]), quatf_from_json(j[0][1]), quatf_from_json(j[1][0]), quatf_from_json(j[1][1])};
}

inline H5Point h5_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("q") || !j.contains("t") || !j["t"].is_number())
        throw SchemaError("a point of H^5 is {\"q\": [x0, x1, x2, x3], \"t\": height}");
    return {quatf_from_json(j["q"]), j["t"].get<double>()};
}

inline IntMatrix int_matrix_from_json(const Json& j)
{
    if (!j.is_array() || j.empty()) throw SchemaError("expected a nonempty integer matrix");
    IntMatrix m;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != j.size()) throw SchemaError("expected a square integer matrix");
        IntVector r;
        for (const auto& x : row) r.push_back(integer_from_json(x));
        m.push_back(std::move(r));
    }
    return m;
}

inline IntVector int_vector_from_json(const Json& j)
{
    if (!j.is_array()) throw SchemaError("expected an integer array");
    IntVector v;
    for (const auto& x : j) v.push_back(integer_from_json(x));
    return v;
}

// Orders.

inline Json order_json(const Order& o)
{
    Json z = Json::array();
    for (const auto& b : o.zbasis()) z.push_back(to_json(b));
    return {{"n", o.field().n()}, {"name", o.name()}, {"zbasis", z}};
}

/// {"n": int, "name": str, "basis": [4 quaternions]} (a Z_K-basis) or
/// {"n": int, "name": str, "zbasis": [...]} (a Z-basis).
inline Order order_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw SchemaError("order file needs an integer field \"n\"");
    QuadraticField k(j["n"].get<long>());
    std::string name = j.value("name", std::string("custom"));
    auto read_list = [&](const Json& arr) {
        std::vector<QuatExact> v;
        if (!arr.is_array()) throw SchemaError("basis must be an array of quaternions");
        for (const auto& q : arr) v.push_back(quat_from_json(k, q));
        return v;
    };
    if (j.contains("basis")) return Order::from_zk_basis(k, read_list(j["basis"]), name);
    if (j.contains("zbasis")) return Order(k, read_list(j["zbasis"]), name);
    throw SchemaError("order file needs \"basis\" or \"zbasis\"");
}

inline Order load_order_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open order file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("order file '" + path + "' is not valid JSON: " + e.what());
    }
    return order_from_json(j);
}

// Certificates.

inline Json to_json(const MonodromyCertificate& c)
{
    Json j;
    j["matrix"] = to_json(c.matrix);
    j["charpoly"] = to_json(c.charpoly);
    j["det"] = to_json(c.det);
    j["anosov"] = c.anosov;
    j["eigen_moduli"] = c.eigen_moduli;
    j["moduli_method"] = c.closed_form_moduli ? "closed form" : "numeric eigensolver";
    if (c.unit) {
        j["ell"] = c.ell;
        j["fundamental_unit"] = c.unit->to_string();
        j["fundamental_unit_sqrt"] = c.unit->to_sqrt_string();
        j["unit_norm"] = to_json(*c.unit_norm);
        j["unit_power"] = c.unit_power->to_string();
        j["trace_eps_sq"] = to_json(*c.trace_unit);
        j["expected_charpoly"] = to_json(expected_charpoly(c));
        j["charpoly_matches"] = expected_charpoly(c) == c.charpoly;
    }
    return j;
}

inline Json to_json(const SolvElement& s) { return {{"lattice", to_json(s.lattice)}, {"shift", s.shift}}; }

inline SolvElement solv_from_json(const Json& j, std::size_t dim)
{
    if (!j.is_object() || !j.contains("lattice") || !j.contains("shift") || !j["shift"].is_number_integer())
        throw SchemaError("a solvable-group element is {\"lattice\": [ints], \"shift\": int}");
    SolvElement s{int_vector_from_json(j["lattice"]), j["shift"].get<long>()};
    if (s.lattice.size() != dim) throw SchemaError("lattice part must have " + std::to_string(dim) + " entries");
    return s;
}

} // namespace quatmod
