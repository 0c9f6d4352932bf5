#include "padyn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "padyn/report_json.hpp"

namespace padyn {

using nlohmann::json;

namespace {

struct Globals {
    unsigned long p = 13;
    int precision = PrimeContext::kDefaultPrecision;
    int guard = PrimeContext::kDefaultGuard;
};

struct MapArgs {
    std::string a, b;
};

struct GibbsArgs {
    std::string job;
    int k = 2;
    std::size_t n = 2;
    std::string J = "0", J1 = "0", J0 = "0";
    std::string field = "unit";
    std::size_t period = 1;
    bool entries = false;
};

int exit_code(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Domain: return 1;
    case ErrorKind::Precision: return 2;
    case ErrorKind::Verification: return 3;
    }
    return 1;
}

MapParams map_params(const PrimeContext& ctx, const MapArgs& m) {
    return MapParams(parse_literal(ctx, m.a), parse_literal(ctx, m.b));
}

void add_map_options(CLI::App* cmd, MapArgs& m) {
    cmd->add_option("--a", m.a, "parameter a in E_p")->required();
    cmd->add_option("--b", m.b, "parameter b in E_p, b != 1")->required();
}

json word_json(const Word& w) { return to_string(w); }

std::vector<PadicNumber> orbit_for_source(const Couplings& c, const std::string& source) {
    const MapParams params(c.a(), c.b());
    if (source == "x0") return {find_x0(params)};
    const Word w = parse_word(source);
    const SymbolicSystem sys = make_symbolic_system(params);
    return backward_orbit(params, periodic_point_g(sys, w), w.size());
}

// Everything a gibbs job needs, from flags or from a JSON job file.
struct GibbsJob {
    PrimeContext ctx;
    int k;
    std::size_t n;
    Couplings couplings;
    json field;
};

GibbsJob load_job(const Globals& g, const GibbsArgs& args) {
    if (args.job.empty()) {
        PrimeContext ctx(g.p, g.precision, g.guard);
        return {ctx, args.k, args.n,
                Couplings(parse_literal(ctx, args.J), parse_literal(ctx, args.J1), parse_literal(ctx, args.J0)),
                args.field};
    }
    std::ifstream in(args.job);
    if (!in) throw ParseError("cannot open job file " + args.job);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(std::string("job file: ") + e.what());
    }
    try {
        PrimeContext ctx(j.value("p", g.p), j.value("precision", g.precision), j.value("guard", g.guard));
        auto coupling = [&](const char* key) {
            return j.contains(key) ? padic_from_json(ctx, j.at(key)) : PadicNumber(ctx);
        };
        return {ctx, j.value("k", args.k), j.value("n", args.n),
                Couplings(coupling("J"), coupling("J1"), coupling("J0")), j.value("field", json("unit"))};
    } catch (const json::exception& e) {
        throw ParseError(std::string("job file: ") + e.what());
    }
}

HVector hvector_from_json(const PrimeContext& ctx, const json& j) {
    if (j.is_array() && j.size() == 4)
        return {padic_from_json(ctx, j[0]), padic_from_json(ctx, j[1]), padic_from_json(ctx, j[2]),
                padic_from_json(ctx, j[3])};
    if (j.is_object())
        return {padic_from_json(ctx, j.at("--")), padic_from_json(ctx, j.at("-+")),
                padic_from_json(ctx, j.at("+-")), padic_from_json(ctx, j.at("++"))};
    throw ParseError("field vector must be [--, -+, +-, ++] or an object with those keys");
}

// Field classes from a source description: "unit", "solve", "orbit:<word>" or a
// list of vectors (one per level class).
json build_field(const GibbsJob& job, const CayleyTree& tree, std::size_t period,
                 std::vector<HVector>& classes) {
    json info;
    if (job.field.is_array()) {
        for (const json& v : job.field) classes.push_back(hvector_from_json(job.ctx, v));
        info["source"] = "explicit";
        return info;
    }
    if (!job.field.is_string()) throw ParseError("field source must be a string or a list");
    const std::string src = job.field.get<std::string>();
    if (src == "unit") {
        classes.assign(period, HVector::unit(job.ctx));
        info["source"] = "unit";
    } else if (src == "solve") {
        SolveResult r = solve_product_system(tree, job.couplings,
                                             std::vector<HVector>(period, HVector::unit(job.ctx)));
        classes = r.classes;
        info["source"] = "solve";
        info["iterations"] = r.iterations;
    } else if (src.rfind("orbit:", 0) == 0) {
        const auto orbit = orbit_for_source(job.couplings, src.substr(6));
        const std::size_t depth = std::max(job.n, orbit.size() + 1);
        const auto valid = valid_placements(tree, job.couplings, orbit, depth);
        for (const PadicNumber& h : orbit) classes.push_back(place(valid.front().placement, h, job.couplings.a()));
        info["source"] = src;
        info["placement"] = to_string(valid.front().placement);
    } else {
        throw ParseError("unknown field source '" + src + "'");
    }
    return info;
}

json classes_json(const std::vector<HVector>& classes) {
    json out = json::array();
    for (const HVector& h : classes) out.push_back(to_json(h));
    return out;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-adic dynamics of the generalized Ising mapping", "padyn"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--p", g.p, "odd prime")->capture_default_str();
    app.add_option("--precision", g.precision, "p-adic digits N")->capture_default_str();
    app.add_option("--guard", g.guard, "guard digits g")->capture_default_str();

    std::function<json()> action;
    // Reports that fail their own check are still printed, with exit code 3.
    int status = 0;
    MapArgs m;
    auto context = [&] { return PrimeContext(g.p, g.precision, g.guard); };

    auto* fp = app.add_subcommand("fixed-points", "fixed points, classification and lemma clauses");
    add_map_options(fp, m);
    fp->callback([&] {
        action = [&] { return to_json(analyze_fixed_points(map_params(context(), m))); };
    });

    std::string x_text;
    auto* cl = app.add_subcommand("classify", "classify a fixed point of g");
    add_map_options(cl, m);
    cl->add_option("--x", x_text, "point")->required();
    cl->callback([&] {
        action = [&] {
            const MapParams params = map_params(context(), m);
            const PadicNumber x = parse_literal(params.context(), x_text);
            const FixedPointKind kind = classify(params, x);
            const PNorm dnorm = deriv_g_norm(params, x);
            return json{{"x", to_json(x)}, {"kind", std::string(to_string(kind))}, {"derivative_norm", to_json(dnorm)}};
        };
    });

    std::string map_name = "g";
    std::size_t steps = 10;
    auto* orb = app.add_subcommand("orbit", "iterate g or k from a start point");
    add_map_options(orb, m);
    orb->add_option("--x", x_text, "start point")->required();
    orb->add_option("--map", map_name, "g or k")->check(CLI::IsMember({"g", "k"}))->capture_default_str();
    orb->add_option("--steps", steps, "iterations")->capture_default_str();
    orb->callback([&] {
        action = [&] {
            const MapParams params = map_params(context(), m);
            PadicNumber x = parse_literal(params.context(), x_text);
            json iterates = json::array({to_json(x)});
            for (std::size_t i = 0; i < steps; ++i) {
                x = map_name == "g" ? eval_g(params, x) : eval_k(params, x);
                iterates.push_back(to_json(x));
            }
            return json{{"map", map_name}, {"iterates", iterates}};
        };
    });

    std::size_t max_iter = 100;
    auto* bs = app.add_subcommand("basin", "basin-of-attraction status of a point");
    add_map_options(bs, m);
    bs->add_option("--x", x_text, "point")->required();
    bs->add_option("--max-iter", max_iter, "iteration budget")->capture_default_str();
    bs->callback([&] {
        action = [&] {
            const MapParams params = map_params(context(), m);
            return to_json(basin_status(params, parse_literal(params.context(), x_text), max_iter));
        };
    });

    std::size_t length = 8;
    auto* it = app.add_subcommand("itinerary", "symbolic itinerary under k");
    add_map_options(it, m);
    it->add_option("--x", x_text, "point")->required();
    it->add_option("--length", length, "number of symbols")->capture_default_str();
    it->callback([&] {
        action = [&] {
            const SymbolicSystem sys = make_symbolic_system(map_params(context(), m));
            const PadicNumber x = parse_literal(sys.params.context(), x_text);
            const Word code = itinerary(sys, x, length);
            return json{{"x", to_json(x)}, {"itinerary", word_json(code)}};
        };
    });

    std::string word_text;
    auto* per = app.add_subcommand("periodic", "periodic points of k and g with a given itinerary");
    add_map_options(per, m);
    per->add_option("--word", word_text, "word over {1,2}, e.g. 12 or 1,2")->required();
    per->callback([&] {
        action = [&] {
            const SymbolicSystem sys = make_symbolic_system(map_params(context(), m));
            const Word w = parse_word(word_text);
            const PadicNumber xk = periodic_point_k(sys, w);
            const PadicNumber xg = periodic_point_g(sys, w);
            json orbit = json::array();
            for (const PadicNumber& h : backward_orbit(sys.params, xg, w.size())) orbit.push_back(to_json(h));
            const Word code = itinerary(sys, xk, w.size());
            const BasinStatus basin = basin_status(sys.params, xg, 100);
            return json{{"word", word_json(w)}, {"k_point", to_json(xk)}, {"g_point", to_json(xg)},
                        {"g_orbit", orbit}, {"itinerary", word_json(code)}, {"basin", to_json(basin)}};
        };
    });

    std::size_t depth = 2;
    auto* cyl = app.add_subcommand("cylinders", "cylinder balls of the Julia set of k");
    add_map_options(cyl, m);
    cyl->add_option("--depth", depth, "word length")->capture_default_str();
    cyl->callback([&] {
        action = [&] {
            const SymbolicSystem sys = make_symbolic_system(map_params(context(), m));
            json list = json::array();
            for (const Cylinder& c : julia_cylinders(sys, depth))
                list.push_back({{"word", word_json(c.word)}, {"ball", to_json(c.ball)}});
            return json{{"depth", depth}, {"cylinders", list}};
        };
    });

    auto* lem = app.add_subcommand("lemmas", "fixed-point clauses and the expansion of k");
    add_map_options(lem, m);
    lem->callback([&] {
        action = [&] {
            const MapParams params = map_params(context(), m);
            const FixedPointReport report = analyze_fixed_points(params);
            json outj{{"fixed_point_clauses", to_json(report.lemma)}};
            if (params.context().prime() % 4 == 1 && params.strict_regime()) {
                const SymbolicSystem sys = make_symbolic_system(params);
                const ExpansionReport ex = check_expansion(sys, 6);
                json samples = json::array();
                for (const ExpansionSample& s : ex.samples)
                    samples.push_back({{"ball", s.ball}, {"before", to_json(s.before)},
                                       {"after", to_json(s.after)}, {"ok", s.ok}});
                const auto inc = incidence_matrix(sys);
                outj["expansion"] = {{"holds", ex.holds},
                                     {"expansion_exponent", sys.geometry.expansion_exponent},
                                     {"samples", samples},
                                     {"balls_disjoint", k_balls_disjoint(sys)},
                                     {"k_equals_balls", k_equals_closed_balls(sys)},
                                     {"incidence", {{inc[0][0], inc[0][1]}, {inc[1][0], inc[1][1]}}},
                                     {"geometry", to_json(sys.geometry)}};
            } else {
                outj["expansion"] = nullptr;
                outj["expansion_reason"] = "needs p = 1 (mod 4) and |a - 1| < |b - 1|";
            }
            return outj;
        };
    });

    auto* gib = app.add_subcommand("gibbs", "p-adic Gibbs measures on the Cayley tree");
    gib->require_subcommand(1);
    gib->fallthrough();
    GibbsArgs ga;
    auto add_gibbs_options = [&](CLI::App* cmd) {
        cmd->add_option("--job", ga.job, "JSON job file");
        cmd->add_option("--k", ga.k, "tree order")->capture_default_str();
        cmd->add_option("--n", ga.n, "depth for the compatibility check")->capture_default_str();
        cmd->add_option("--J", ga.J, "nearest-neighbour coupling")->capture_default_str();
        cmd->add_option("--J1", ga.J1, "prolonged next-nearest coupling")->capture_default_str();
        cmd->add_option("--J0", ga.J0, "one-level next-nearest coupling")->capture_default_str();
        cmd->add_flag("--entries", ga.entries, "list the residual for every base configuration");
    };

    auto* gsolve = gib->add_subcommand("solve", "solve the product system and check compatibility");
    add_gibbs_options(gsolve);
    gsolve->add_option("--period", ga.period, "number of level classes")->capture_default_str();
    gsolve->callback([&] {
        action = [&] {
            GibbsJob job = load_job(g, ga);
            const CayleyTree tree(job.k);
            SolveResult r = solve_product_system(tree, job.couplings,
                                                 std::vector<HVector>(ga.period, HVector::unit(job.ctx)));
            json trace = json::array();
            for (const PNorm& t : r.trace) trace.push_back(to_json(t));
            const GibbsField field = level_periodic_field(tree, r.classes, std::max(job.n, ga.period + 1));
            const CompatibilityReport rep = check_compatibility(tree, job.couplings, field, job.n);
            json outj{{"classes", classes_json(r.classes)},
                      {"iterations", r.iterations},
                      {"trace", trace},
                      {"compatibility", to_json(rep, ga.entries)}};
            if (!rep.compatible) status = rep.precision_exhausted ? 2 : 3;
            return outj;
        };
    });

    auto* gverify = gib->add_subcommand("verify", "check compatibility of a boundary field");
    add_gibbs_options(gverify);
    gverify->add_option("--field", ga.field, "unit, solve, orbit:<word|x0>")->capture_default_str();
    gverify->add_option("--period", ga.period, "level classes for unit/solve")->capture_default_str();
    gverify->callback([&] {
        action = [&] {
            GibbsJob job = load_job(g, ga);
            const CayleyTree tree(job.k);
            std::vector<HVector> classes;
            json info = build_field(job, tree, ga.period, classes);
            const GibbsField field = level_periodic_field(tree, classes, job.n);
            const CompatibilityReport rep = check_compatibility(tree, job.couplings, field, job.n);
            json outj{{"field", info}, {"classes", classes_json(classes)},
                      {"compatibility", to_json(rep, ga.entries)}};
            if (!rep.compatible) status = rep.precision_exhausted ? 2 : 3;
            return outj;
        };
    });

    std::string source = "x0";
    auto* gper = gib->add_subcommand("periodic", "level-periodic fields from periodic orbits of g");
    add_gibbs_options(gper);
    gper->add_option("--word", source, "x0 or a word over {1,2}")->capture_default_str();
    gper->callback([&] {
        action = [&] {
            GibbsJob job = load_job(g, ga);
            const CayleyTree tree(job.k);
            const auto orbit = orbit_for_source(job.couplings, source);
            const std::size_t d = std::max(job.n, orbit.size() + 1);
            json orbit_json = json::array();
            for (const PadicNumber& h : orbit) orbit_json.push_back(to_json(h));
            json candidates = json::array();
            bool any = false;
            for (const PlacementCandidate& c : scan_placements(tree, job.couplings, orbit, d)) {
                json cj{{"placement", to_string(c.placement)}, {"system", to_json(c.residual)}};
                if (c.residual.holds) {
                    any = true;
                    const CompatibilityReport rep = check_compatibility(tree, job.couplings, c.field, job.n);
                    if (!rep.compatible) status = rep.precision_exhausted ? 2 : 3;
                    cj["compatibility"] = to_json(rep, ga.entries);
                    cj["level_periodic"] = is_level_periodic(tree, c.field, orbit.size(), d);
                }
                candidates.push_back(std::move(cj));
            }
            json outj{{"source", source}, {"period", orbit.size()}, {"orbit", orbit_json},
                      {"candidates", candidates}};
            if (!any) status = 3;
            return outj;
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code(e.kind());
    }

    try {
        const json result = action();
        out << result.dump(2) << "\n";
        return status;
    } catch (const Error& e) {
        json report{{"error", e.name()}, {"message", e.what()}};
        out << report.dump(2) << "\n";
        err << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const json::exception& e) {
        err << "json: " << e.what() << "\n";
        return 1;
    }
}

} // namespace padyn
