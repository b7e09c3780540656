#pragma once

// Command-line front end. run() parses the arguments, calls the library and
// returns the JSON envelope {status, command, version, payload, diagnostics}.

#include "quatmod/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace quatmod::cli {

inline constexpr const char* version = "1.0.0";

struct CommandResult {
    int exit_code = 0;
    Json envelope;

    bool ok() const { return exit_code == 0; }
    const Json& payload() const { return envelope["payload"]; }
};

namespace detail {

struct Options {
    long n = 1;
    std::string order = "hurwitz";
    std::string matrix;
    std::string point;
    std::string alpha;
    long c = 0;
    long ell = 1;
    int variant = 0;
    std::string place = "first";
    std::string g, h;
    std::size_t count = 100;
    double tolerance = 1e-9;
    unsigned long seed = 1;
    bool json = true;
};

/// Inline JSON, or @path to read it from a file.
inline Json read_json_arg(const std::string& arg, const char* what)
{
    if (arg.empty()) throw SchemaError(std::string("missing --") + what);
    std::string text = arg;
    if (arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::runtime_error("cannot open '" + arg.substr(1) + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception&) {
        throw SchemaError(std::string("--") + what + " is not valid JSON: " + text);
    }
}

inline Order resolve_order(const Options& o)
{
    if (auto named = parse_named_order(o.order)) return make_named_order(*named, QuadraticField(o.n));
    Order ord = load_order_file(o.order);
    RingCertificate rc = verify_ring(ord);
    if (!rc.ok) throw std::invalid_argument("order file '" + o.order + "' is not a ring: " + rc.detail);
    return ord;
}

inline Json bool_map(const QuatMat2Exact& g)
{
    return {{"1", bg_check(g, BGVariant::conjugate_form)},
            {"2", bg_check(g, BGVariant::column_form)},
            {"3", bg_check(g, BGVariant::row_form)}};
}

inline Json cmd_field(const Options& o)
{
    QuadraticField k(o.n);
    Json p;
    p["field"] = field_json(k);
    if (k.is_rational()) {
        p["fundamental_unit"] = nullptr;
        return p;
    }
    FieldElement eps = fundamental_unit(k);
    FieldElement tp = totally_positive_generator(k);
    auto [e1, e2] = eps.embed_real_pair();
    p["fundamental_unit"] = eps.to_string();
    p["fundamental_unit_sqrt"] = eps.to_sqrt_string();
    p["norm"] = to_json(eps.norm());
    p["trace"] = to_json(eps.trace());
    p["embedding"] = Json::array({e1, e2});
    p["totally_positive_generator"] = tp.to_string();
    p["totally_positive_generator_sqrt"] = tp.to_sqrt_string();
    return p;
}

inline Json cmd_order(const Options& o)
{
    Order ord = resolve_order(o);
    RingCertificate rc = verify_ring(ord);
    Json p = order_json(ord);
    p["ring"] = {{"ok", rc.ok}, {"detail", rc.detail}};
    Json pure = Json::array();
    for (const auto& b : pure_sublattice(ord)) pure.push_back(to_json(b));
    p["pure_sublattice"] = pure;
    return p;
}

inline Json cmd_units(const Options& o)
{
    Order ord = resolve_order(o);
    TorsionGroup tg = unit_torsion(ord);
    Json p;
    p["order"] = ord.name();
    p["field"] = field_json(ord.field());
    p["count"] = tg.elements.size();
    p["class"] = tg.classification.label();
    Json census = Json::object();
    for (auto [k, v] : order_census(tg.elements)) census[std::to_string(k)] = v;
    p["census"] = census;
    Json gens = Json::array();
    for (const auto& u : torsion_generators(ord, tg)) gens.push_back(to_json(u));
    p["generators"] = gens;
    Json el = Json::array();
    for (const auto& u : tg.elements) el.push_back(to_json(u));
    p["elements"] = el;
    return p;
}

inline Json cmd_bg(const Options& o)
{
    QuadraticField k(o.n);
    QuatMat2Exact g = mat2_from_json(k, read_json_arg(o.matrix, "matrix"));
    Json p;
    p["matrix"] = to_json(g);
    if (o.variant != 0) {
        if (o.variant < 1 || o.variant > 3) throw std::invalid_argument("--variant must be 1, 2 or 3");
        p["variant"] = o.variant;
        p["bg"] = bg_check(g, static_cast<BGVariant>(o.variant));
    } else {
        p["variants"] = bool_map(g);
        p["bg"] = bg_check_all(g);
    }
    return p;
}

inline Json cmd_iwasawa(const Options& o)
{
    QuatMat2Float g = mat2f_from_json(read_json_arg(o.matrix, "matrix"));
    IwasawaFactors f = iwasawa_decompose(g, {o.tolerance, o.tolerance});
    Json p;
    p["lambda"] = f.lambda;
    p["omega"] = to_json(f.omega);
    p["alpha"] = to_json(f.alpha);
    p["beta"] = to_json(f.beta);
    p["reassembly_error"] = max_entry_error(iwasawa_compose(f), g);
    p["norm_residual"] = std::abs(f.alpha.nrd() + f.beta.nrd() - 1);
    p["orthogonality_residual"] = std::abs((f.alpha * f.beta.conj()).re());
    p["omega_real_part"] = f.omega.re();
    return p;
}

inline Json cmd_det(const Options& o)
{
    QuadraticField k(o.n);
    QuatMat2Exact g = mat2_from_json(k, read_json_arg(o.matrix, "matrix"));
    FieldElement d2 = dieudonne_det_sq(g);
    Json p;
    p["det_sq"] = d2.to_string();
    p["det"] = std::sqrt(std::max(0.0, d2.to_double()));
    p["special"] = d2 == FieldElement::one(k);
    return p;
}

inline Json cmd_inverse(const Options& o)
{
    QuadraticField k(o.n);
    QuatMat2Exact g = mat2_from_json(k, read_json_arg(o.matrix, "matrix"));
    InverseResult r = sl2_inverse_with_route(g);
    Json p;
    p["inverse"] = to_json(r.inverse);
    p["route"] = to_string(r.route);
    p["verified"] = g * r.inverse == identity2(k) && r.inverse * g == identity2(k);
    return p;
}

inline Json cmd_act(const Options& o)
{
    QuadraticField k(o.n);
    QuatMat2Exact g = mat2_from_json(k, read_json_arg(o.matrix, "matrix"));
    if (o.place != "first" && o.place != "second") throw std::invalid_argument("--place must be first or second");
    Place pl = o.place == "first" ? Place::first : Place::second;
    QuatMat2Float gf = to_float(g, pl);
    Json pt = read_json_arg(o.point, "point");
    Json p;
    if (pt.is_string() && pt.get<std::string>() == "inf") {
        ExtQuatExact img = moebius_apply(g, ExtQuatExact::infinity());
        p["image"] = to_json(moebius_apply(gf, ExtQuatF::infinity()));
        p["exact_image"] = to_json(img);
        return p;
    }
    if (pt.is_object()) {
        H5Point h = h5_from_json(pt);
        p["image"] = to_json(poincare_extend(gf, h));
        return p;
    }
    QuatF q = quatf_from_json(pt);
    p["image"] = to_json(moebius_apply(gf, ExtQuatF(q)));
    Json chain = Json::array();
    for (const auto& m : moebius_decompose(gf))
        chain.push_back({{"map", m.name()}, {"left", to_json(m.left)}, {"right", to_json(m.right)}});
    p["decomposition"] = chain;
    p["decomposition_image"] = to_json(apply_chain(moebius_decompose(gf), ExtQuatF(q)));
    return p;
}

inline Json cmd_reduce(const Options& o)
{
    H5Point h = h5_from_json(read_json_arg(o.point, "point"));
    ChimneyPoint cp = reduce_to_chimney(h);
    Json p;
    p["point"] = to_json(cp.p);
    p["word"] = to_json(cp.witness_word);
    p["inversions"] = cp.inversions;
    p["in_chimney"] = in_chimney(cp.p, o.tolerance);
    Json names = Json::array();
    for (const auto& g : generators(make_named_order(NamedOrder::hurwitz, QuadraticField()))) names.push_back(g.name);
    p["generators"] = names;
    return p;
}

inline Json cmd_cusp(const Options& o)
{
    QuadraticField k;
    QuatExact alpha = quat_from_json(k, read_json_arg(o.alpha, "alpha"));
    BezoutCusp bz = bezout_cusp_matrix(alpha, o.c);
    const QuatMat2Exact& g = bz.gamma;
    Order hur = make_named_order(NamedOrder::hurwitz, k);
    ExtQuatExact img = moebius_apply(g, ExtQuatExact::infinity());
    QuatExact target = alpha * quat(k, Rational(1) / Rational(o.c));
    Json p;
    p["gamma"] = to_json(g);
    p["mu"] = to_json(bz.mu);
    p["nu"] = to_json(bz.nu);
    p["bezout_identity"] = alpha * bz.mu - quat(k, o.c) * bz.nu == quat_one(k);
    p["det_sq_one"] = dieudonne_det_sq(g) == FieldElement::one(k);
    p["entries_in_order"] = entries_in(g, hur);
    p["image_of_infinity"] = to_json(img);
    p["image_matches"] = !img.is_infinity() && img.value() == target;
    return p;
}

inline Json cmd_monodromy(const Options& o)
{
    Order ord = resolve_order(o);
    Json p = to_json(monodromy(ord, o.ell));
    p["order"] = ord.name();
    p["field"] = field_json(ord.field());
    return p;
}

inline Json cmd_solv(const Options& o)
{
    Order ord = resolve_order(o);
    SolvGroup grp(monodromy_matrix(ord, o.ell));
    Json p;
    p["matrix"] = to_json(grp.matrix());
    if (!o.g.empty() || !o.h.empty()) {
        SolvElement g = solv_from_json(read_json_arg(o.g, "lhs"), grp.dim());
        SolvElement h = solv_from_json(read_json_arg(o.h, "rhs"), grp.dim());
        p["product"] = to_json(grp.mul(g, h));
        return p;
    }
    // randomized group-law check
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<long> lat(-5, 5), sh(-3, 3);
    auto draw = [&] {
        SolvElement s{IntVector(grp.dim()), sh(rng)};
        for (auto& x : s.lattice) x = lat(rng);
        return s;
    };
    std::size_t assoc = 0, ident = 0, inv = 0, conj = 0;
    const SolvElement e = grp.identity();
    for (std::size_t n = 0; n < o.count; ++n) {
        SolvElement a = draw(), b = draw(), c = draw();
        assoc += grp.mul(grp.mul(a, b), c) == grp.mul(a, grp.mul(b, c));
        ident += grp.mul(e, a) == a && grp.mul(a, e) == a;
        inv += grp.mul(a, grp.inverse(a)) == e && grp.mul(grp.inverse(a), a) == e;
        SolvElement lam{a.lattice, 0};
        SolvElement t{IntVector(grp.dim(), 0), 1}, ti{IntVector(grp.dim(), 0), -1};
        conj += grp.mul(grp.mul(t, lam), ti) == SolvElement{matvec(grp.matrix(), a.lattice), 0};
    }
    p["seed"] = o.seed;
    p["samples"] = o.count;
    p["associative"] = assoc == o.count;
    p["identity"] = ident == o.count;
    p["inverses"] = inv == o.count;
    p["conjugation"] = conj == o.count;
    return p;
}

} // namespace detail

inline CommandResult run(std::vector<std::string> args)
{
    using namespace detail;
    Options opt;
    CLI::App app{"exact quaternionic modular-group computations"};
    app.require_subcommand(1);
    app.add_flag("--json", opt.json, "JSON output (the default and only format)");
    app.add_option("--tolerance", opt.tolerance, "tolerance for geometric checks")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "seed for randomized commands");

    using Handler = std::function<Json(const Options&)>;
    std::map<std::string, Handler> handlers;
    auto sub = [&](const std::string& name, const std::string& help, Handler h) {
        handlers[name] = std::move(h);
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };
    auto add_n = [&](CLI::App* s) { s->add_option("--n", opt.n, "field Q(sqrt n); 1 means Q"); };
    auto add_order = [&](CLI::App* s) {
        add_n(s);
        s->add_option("--order", opt.order, "lipschitz | hurwitz | binary_octahedral | binary_icosahedral | file");
    };
    auto add_matrix = [&](CLI::App* s) { s->add_option("--matrix", opt.matrix, "[[a,b],[c,d]] as JSON or @file")->required(); };

    add_n(sub("field", "fundamental unit and embeddings of Q(sqrt n)", cmd_field));
    add_order(sub("order", "Z-basis, ring check and pure sublattice of an order", cmd_order));
    add_order(sub("units", "torsion units of an order and their classification", cmd_units));
    {
        auto* s = sub("bg", "Bisi-Gentili conditions", cmd_bg);
        add_n(s);
        add_matrix(s);
        s->add_option("--variant", opt.variant, "1, 2 or 3 (default: all)");
    }
    add_matrix(sub("iwasawa", "Iwasawa factors of a BG matrix", cmd_iwasawa));
    {
        auto* s = sub("det", "squared Dieudonne determinant", cmd_det);
        add_n(s);
        add_matrix(s);
    }
    {
        auto* s = sub("inverse", "exact inverse of a matrix with det 1", cmd_inverse);
        add_n(s);
        add_matrix(s);
    }
    {
        auto* s = sub("act", "Moebius action, or Poincare extension for {q, t} points", cmd_act);
        add_n(s);
        add_matrix(s);
        s->add_option("--point", opt.point, "quaternion, \"inf\", or {\"q\": [...], \"t\": h}")->required();
        s->add_option("--place", opt.place, "real place used for the float image: first | second");
    }
    sub("reduce", "reduce a point of H^5 into the chimney", cmd_reduce)
        ->add_option("--point", opt.point, "{\"q\": [...], \"t\": h}")
        ->required();
    {
        auto* s = sub("cusp", "Bezout matrix sending infinity to alpha/c", cmd_cusp);
        s->add_option("--alpha", opt.alpha, "Hurwitz quaternion")->required();
        s->add_option("--c", opt.c, "nonzero integer")->required();
    }
    {
        auto* s = sub("monodromy", "monodromy of eps^(2 ell) on Im O", cmd_monodromy);
        add_order(s);
        s->add_option("--ell", opt.ell, "power ell >= 1");
    }
    {
        auto* s = sub("solv", "product in Z^6 x| Z, or a randomized group-law check", cmd_solv);
        add_order(s);
        s->add_option("--ell", opt.ell, "power ell >= 1");
        s->add_option("--lhs", opt.g, "{\"lattice\": [...], \"shift\": l}");
        s->add_option("--rhs", opt.h, "{\"lattice\": [...], \"shift\": l}");
        s->add_option("--count", opt.count, "samples for the randomized check");
    }

    Json env;
    env["status"] = "ok";
    env["command"] = nullptr;
    env["version"] = version;
    env["payload"] = nullptr;
    env["diagnostics"] = Json::array();

    CommandResult res;
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        env["payload"] = app.help();
        res.envelope = env;
        return res;
    } catch (const CLI::ParseError& e) {
        env["status"] = "error";
        env["diagnostics"].push_back(std::string("usage: ") + e.what());
        res.exit_code = 2;
        res.envelope = env;
        return res;
    }
    std::string name = app.get_subcommands().front()->get_name();
    env["command"] = name;
    try {
        env["payload"] = handlers.at(name)(opt);
    } catch (const std::exception& e) {
        env["status"] = "error";
        env["diagnostics"].push_back(name + ": " + e.what());
        res.exit_code = 1;
    }
    res.envelope = env;
    return res;
}

} // namespace quatmod::cli
