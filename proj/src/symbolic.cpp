#include "padyn/symbolic.hpp"

#include <algorithm>

namespace padyn {

namespace {

PadicNumber integer(const PrimeContext& ctx, long n) { return PadicNumber::from_integer(ctx, n); }

// Iterates the inverse-branch composition to its fixed point and checks it
// inside `wide` without rounding.
PadicNumber synthesize_k(const SymbolicSystem& wide, const Word& w) {
    const PrimeContext& ctx = wide.params.context();
    const std::size_t m = w.size();
    const long contraction = static_cast<long>(m) * wide.geometry.expansion_exponent;
    const long passes = (ctx.precision() + contraction - 1) / contraction + 2;

    PadicNumber x = wide.geometry.ball(w.front()).center;
    bool stable = false;
    for (long pass = 0; pass < passes && !stable; ++pass) {
        PadicNumber y = x;
        for (std::size_t i = m; i-- > 0;) y = inverse_branch(wide, w[i], y);
        stable = difference_valuation(x, y) == PadicNumber::kInfinity;
        x = std::move(y);
    }
    if (!stable)
        throw NoConvergence("inverse-branch iteration for word " + to_string(w) + " did not settle");

    if (itinerary(wide, x, m) != w)
        throw VerificationError("periodic point does not carry the itinerary " + to_string(w));
    PadicNumber y = x;
    for (std::size_t i = 0; i < m; ++i) y = eval_k(wide.params, y);
    if (!eq_to_tolerance(x, y))
        throw VerificationError("k^m(x) != x for word " + to_string(w));
    return x;
}

int k_half(const PadicNumber& x, const std::optional<PadicNumber>& alpha1, const PNorm& r) {
    if (alpha1 && distance(x, *alpha1) <= r) return 1;
    return 2;
}

} // namespace

// ----------------------------------------------------------------- words

Word parse_word(const std::string& text) {
    Word w;
    for (char c : text) {
        if (c == ',' || c == ' ') continue;
        if (c != '1' && c != '2') throw ParseError("word symbols must be 1 or 2: '" + text + "'");
        w.push_back(c - '0');
    }
    if (w.empty()) throw ParseError("empty word");
    return w;
}

std::string to_string(const Word& w) {
    std::string s;
    for (int c : w) s += static_cast<char>('0' + c);
    return s;
}

void validate_word(const Word& w) {
    if (w.empty()) throw DomainError("empty word");
    for (int c : w)
        if (c != 1 && c != 2) throw DomainError("word symbols must be 1 or 2");
}

std::vector<Word> all_words(std::size_t m) {
    std::vector<Word> out;
    for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
        Word w(m);
        for (std::size_t i = 0; i < m; ++i) w[i] = ((bits >> (m - 1 - i)) & 1u) ? 2 : 1;
        out.push_back(std::move(w));
    }
    return out;
}

// ------------------------------------------------------------ K and basin

bool k_membership(const MapParams& params, const PadicNumber& x0, const PadicNumber& x) {
    const PrimeContext& ctx = params.context();
    if (distance(x, x0) != PNorm::power(ctx.prime(), 0)) return false;
    const PadicNumber one = integer(ctx, 1);
    return distance(x * x, -one) <= distance(params.b2(), one);
}

bool k_membership(const MapParams& params, const PadicNumber& x) {
    return k_membership(params, find_x0(params), x);
}

BasinStatus basin_status(const MapParams& params, const PadicNumber& x, std::size_t max_iter) {
    if (max_iter < 1) throw DomainError("basin_status needs max_iter >= 1");
    const PrimeContext& ctx = params.context();
    const PadicNumber x0 = find_x0(params);
    std::optional<PadicNumber> alpha1;
    if (ctx.prime() % 4 == 1) alpha1 = sqrt(integer(ctx, -1));

    BasinStatus status;
    std::vector<PadicNumber> orbit;
    PadicNumber current = x;
    for (std::size_t n = 0; n < max_iter; ++n) {
        if (!k_membership(params, x0, current)) {
            status.outcome = BasinOutcome::InBasin;
            status.steps = n;
            status.trail.push_back(0);
            // Once outside K the next iterate lies in E_p, where g contracts.
            const std::size_t budget = static_cast<std::size_t>(ctx.precision() + ctx.guard()) + 1;
            for (std::size_t t = 1; t <= budget; ++t) {
                current = eval_g(params, current);
                if (eq_to_tolerance(current, x0)) {
                    status.converged_after = t;
                    break;
                }
            }
            return status;
        }
        status.trail.push_back(k_half(current, alpha1, params.r()));
        for (std::size_t j = 0; j < orbit.size(); ++j) {
            if (eq_to_tolerance(orbit[j], current)) {
                status.outcome = BasinOutcome::StaysInK;
                status.steps = max_iter;
                status.cycle_length = n - j;
                return status;
            }
        }
        orbit.push_back(current);
        current = eval_g(params, current);
    }
    status.outcome = BasinOutcome::StaysInK;
    status.steps = max_iter;
    return status;
}

// --------------------------------------------------------------- geometry

Ball RepellerGeometry::ball(int j) const {
    if (j != 1 && j != 2) throw DomainError("ball index must be 1 or 2");
    return Ball{j == 1 ? x1sq : x2sq, -static_cast<long>(b_order), false};
}

SymbolicSystem make_symbolic_system(const MapParams& params) {
    const PrimeContext& ctx = params.context();
    if (ctx.prime() % 4 != 1) throw DomainError("the repeller needs p = 1 (mod 4)");
    if (!params.strict_regime()) throw DomainError("the repeller needs |a - 1|_p < |b - 1|_p");
    FixedPointReport fixed = analyze_fixed_points(params);
    if (!fixed.roots) throw DomainError("no repelling fixed points");

    auto [alpha1, alpha2] = sqrt_both(integer(ctx, -1));
    const PadicNumber& x1 = fixed.roots->first;
    const PadicNumber& x2 = fixed.roots->second;
    PadicNumber x1sq = x1 * x1;
    PadicNumber x2sq = x2 * x2;
    const int kappa = difference_valuation(x1sq, x2sq);
    RepellerGeometry geometry{alpha1, alpha2, x1, x2, x1sq, x2sq, params.r(),
                              params.b_order(), params.b_order(), kappa};
    return SymbolicSystem{params, std::move(fixed), std::move(geometry)};
}

SymbolicSystem widen(const SymbolicSystem& sys, int extra) {
    const PrimeContext& ctx = sys.params.context();
    const PrimeContext wide(ctx.prime(), ctx.precision() + extra, ctx.guard() + extra);
    return make_symbolic_system(
        MapParams(sys.params.a().with_context(wide), sys.params.b().with_context(wide)));
}

bool in_repeller_domain(const SymbolicSystem& sys, const PadicNumber& x) {
    return in_ball(x, sys.geometry.ball(1)) || in_ball(x, sys.geometry.ball(2));
}

PadicNumber inverse_branch(const SymbolicSystem& sys, int j, const PadicNumber& x) {
    if (!in_repeller_domain(sys, x)) throw DomainError("inverse_branch needs x in B_r(x1^2) u B_r(x2^2)");
    const Ball target = sys.geometry.ball(j);
    const MapParams& params = sys.params;
    auto [s1, s2] = sqrt_both(x);
    for (const PadicNumber& s : {s1, s2}) {
        PadicNumber y = (params.a() - params.b2() * s) / (s - params.ab2());
        if (in_ball(y, target)) return y;
    }
    throw BranchError("neither square-root branch lands in B_r(x" + std::to_string(j) + "^2)");
}

PadicNumber periodic_point_k(const SymbolicSystem& sys, const Word& w) {
    validate_word(w);
    const int extra = static_cast<int>(w.size()) * sys.geometry.expansion_exponent;
    const SymbolicSystem wide = widen(sys, extra);
    return synthesize_k(wide, w).with_context(sys.params.context());
}

PadicNumber periodic_point_g(const SymbolicSystem& sys, const Word& w) {
    validate_word(w);
    const int extra = static_cast<int>(w.size()) * sys.geometry.expansion_exponent;
    const SymbolicSystem wide = widen(sys, extra);
    const PadicNumber y = synthesize_k(wide, w);

    auto [s1, s2] = sqrt_both(y);
    const Ball home{w.front() == 1 ? wide.geometry.x1 : wide.geometry.x2,
                    -static_cast<long>(wide.geometry.b_order), false};
    if (!in_ball(s1, home)) std::swap(s1, s2);
    for (const PadicNumber& candidate : {s1, s2}) {
        PadicNumber z = candidate;
        for (std::size_t i = 0; i < w.size(); ++i) z = eval_g(wide.params, z);
        if (eq_to_tolerance(z, candidate)) return candidate.with_context(sys.params.context());
    }
    throw VerificationError("no square root of the k-periodic point is g-periodic for word " +
                            to_string(w));
}

std::vector<PadicNumber> backward_orbit(const MapParams& params, const PadicNumber& start,
                                        std::size_t period) {
    if (period == 0) throw DomainError("period must be positive");
    std::vector<PadicNumber> forward{start};
    for (std::size_t j = 1; j < period; ++j) forward.push_back(eval_g(params, forward.back()));
    std::vector<PadicNumber> orbit;
    for (std::size_t i = 0; i < period; ++i) orbit.push_back(forward[(period - i) % period]);
    return orbit;
}

Word itinerary(const SymbolicSystem& sys, const PadicNumber& x, std::size_t length) {
    Word out;
    PadicNumber current = x;
    for (std::size_t i = 0; i < length; ++i) {
        if (in_ball(current, sys.geometry.ball(1)))
            out.push_back(1);
        else if (in_ball(current, sys.geometry.ball(2)))
            out.push_back(2);
        else
            throw EscapeError(i);
        if (i + 1 < length) current = eval_k(sys.params, current);
    }
    return out;
}

PNorm subshift_metric(const SymbolicSystem& sys, const Word& u, const Word& v) {
    if (u.size() != v.size()) throw LengthMismatch("words have different lengths");
    for (const Word* w : {&u, &v})
        for (int c : *w)
            if (c != 1 && c != 2) throw DomainError("word symbols must be 1 or 2");
    const unsigned long p = sys.params.prime();
    const auto mismatch = std::mismatch(u.begin(), u.end(), v.begin());
    if (mismatch.first == u.end()) return PNorm::zero(p);
    const long n = mismatch.first - u.begin();
    return PNorm::power(p, -(n * sys.geometry.expansion_exponent + sys.geometry.kappa));
}

std::array<std::array<int, 2>, 2> incidence_matrix(const SymbolicSystem& sys) {
    std::array<std::array<int, 2>, 2> a{};
    for (int i = 1; i <= 2; ++i) {
        const PadicNumber& center = sys.geometry.ball(i).center;
        for (int j = 1; j <= 2; ++j) {
            try {
                PadicNumber y = inverse_branch(sys, j, center);
                a[i - 1][j - 1] = in_ball(y, sys.geometry.ball(j)) &&
                                  eq_to_tolerance(eval_k(sys.params, y), center);
            } catch (const Error&) {
                a[i - 1][j - 1] = 0;
            }
        }
    }
    return a;
}

std::vector<Cylinder> julia_cylinders(const SymbolicSystem& sys, std::size_t depth) {
    if (depth < 1) throw DomainError("cylinder depth must be >= 1");
    std::vector<Cylinder> out;
    const long radius = -static_cast<long>(sys.geometry.b_order) -
                        static_cast<long>(depth - 1) * sys.geometry.expansion_exponent;
    for (Word& w : all_words(depth)) {
        PadicNumber center = sys.geometry.ball(w.back()).center;
        for (std::size_t i = depth - 1; i-- > 0;) center = inverse_branch(sys, w[i], center);
        out.push_back(Cylinder{std::move(w), Ball{std::move(center), radius, false}});
    }
    return out;
}

bool k_equals_closed_balls(const SymbolicSystem& sys) {
    const RepellerGeometry& g = sys.geometry;
    auto same = [&](const PadicNumber& c1, const PadicNumber& c2) { return distance(c1, c2) <= g.r; };
    const bool paired = (same(g.x1, g.alpha1) && same(g.x2, g.alpha2)) ||
                        (same(g.x1, g.alpha2) && same(g.x2, g.alpha1));
    const PadicNumber& x0 = sys.fixed.x0;
    return paired && !same(g.alpha1, g.alpha2) && k_membership(sys.params, x0, g.alpha1) &&
           k_membership(sys.params, x0, g.alpha2) && k_membership(sys.params, x0, g.x1) &&
           k_membership(sys.params, x0, g.x2);
}

bool k_balls_disjoint(const SymbolicSystem& sys) {
    return !in_ball(sys.geometry.x2sq, sys.geometry.ball(1)) &&
           !in_ball(sys.geometry.x1sq, sys.geometry.ball(2));
}

ExpansionReport check_expansion(const SymbolicSystem& sys, std::size_t pairs_per_ball) {
    const PrimeContext& ctx = sys.params.context();
    const int base = sys.geometry.b_order + 1;
    ExpansionReport report{true, {}};
    for (int j : {1, 2}) {
        const PadicNumber& c = j == 1 ? sys.geometry.x1sq : sys.geometry.x2sq;
        for (std::size_t i = 0; i < pairs_per_ball; ++i) {
            const int shift = base + static_cast<int>(i % 3);
            const PadicNumber x = c + PadicNumber::from_scaled(ctx, shift, static_cast<long>(2 * i + 1));
            const PadicNumber y = c - PadicNumber::from_scaled(ctx, base, static_cast<long>(i + 2));
            ExpansionSample s{j, distance(x, y), distance(eval_k(sys.params, x), eval_k(sys.params, y)), false};
            s.ok = s.after == s.before * PNorm::power(ctx.prime(), sys.geometry.expansion_exponent);
            report.holds = report.holds && s.ok;
            report.samples.push_back(std::move(s));
        }
    }
    return report;
}

} // namespace padyn
