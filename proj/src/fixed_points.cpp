#include "padyn/fixed_points.hpp"

namespace padyn {

namespace {

PadicNumber integer(const PrimeContext& ctx, long n) { return PadicNumber::from_integer(ctx, n); }

} // namespace

std::string_view to_string(FixedPointKind kind) {
    switch (kind) {
    case FixedPointKind::Attracting: return "Attracting";
    case FixedPointKind::Indifferent: return "Indifferent";
    case FixedPointKind::Repelling: return "Repelling";
    }
    return "?";
}

bool FixedPointLemma::all_hold() const {
    auto ok = [](const std::optional<bool>& c) { return !c || *c; };
    return i && iv && ok(ii) && ok(iii) && ok(v) && ok(vi) && ok(vii);
}

PadicNumber find_x0(const MapParams& params, int* iterations) {
    const PrimeContext& ctx = params.context();
    const int budget = ctx.precision() + ctx.guard();
    PadicNumber u = integer(ctx, 1);
    for (int step = 0; step <= budget; ++step) {
        PadicNumber next = eval_g(params, u);
        if (eq_to_tolerance(u, next)) {
            if (iterations) *iterations = step;
            return next;
        }
        u = std::move(next);
    }
    throw NoConvergence("fixed-point iteration for x0 exceeded " + std::to_string(budget) + " steps");
}

QuadraticCoeffs quadratic_coeffs(const MapParams& params, const PadicNumber& x0) {
    QuadraticCoeffs q{x0 - params.ab2(), params.a() / x0};
    const PadicNumber from_cubic = x0 * x0 - params.ab2() * x0 + params.b2();
    if (!eq_to_tolerance(q.C, from_cubic))
        throw ConsistencyError("a/x0 differs from x0^2 - ab^2 x0 + b^2");
    return q;
}

PadicNumber discriminant(const MapParams& params, const PadicNumber& x0) {
    const PrimeContext& ctx = params.context();
    const PadicNumber x0sq = x0 * x0;
    return integer(ctx, -3) * x0sq + integer(ctx, 2) * params.ab2() * x0 -
           integer(ctx, 4) * params.b2() + params.ab2() * params.ab2();
}

std::optional<std::pair<PadicNumber, PadicNumber>> repelling_roots(const MapParams& params,
                                                                   const PadicNumber& x0,
                                                                   const PadicNumber& delta) {
    const PrimeContext& ctx = params.context();
    if (ctx.prime() % 4 == 3) {
        if (sqrt_exists(delta))
            throw VerificationError("discriminant is a square although p = 3 (mod 4)");
        return std::nullopt;
    }
    if (!sqrt_exists(delta))
        throw VerificationError("discriminant is not a square although p = 1 (mod 4)");
    auto [root, other] = sqrt_both(delta);
    const PadicNumber base = params.ab2() - x0;
    const PadicNumber two = integer(ctx, 2);
    return std::make_pair((base + root) / two, (base + other) / two);
}

bool is_fixed_point(const MapParams& params, const PadicNumber& x) {
    const PrimeContext& ctx = params.context();
    const PNorm residual = distance(eval_g(params, x), x);
    return residual <= PNorm::power(ctx.prime(), -ctx.tolerance_digits());
}

FixedPointKind classify(const MapParams& params, const PadicNumber& x) {
    if (!is_fixed_point(params, x)) throw NotAFixedPoint("|g(x) - x|_p exceeds p^-(N-g)");
    const PNorm lambda = deriv_g_norm(params, x);
    const PNorm one = PNorm::power(params.prime(), 0);
    if (lambda < one) return FixedPointKind::Attracting;
    if (lambda == one) return FixedPointKind::Indifferent;
    return FixedPointKind::Repelling;
}

FixedPointLemma verify_fixed_point_lemma(const MapParams& params, const FixedPointReport& report) {
    const PrimeContext& ctx = params.context();
    const unsigned long p = ctx.prime();
    const PadicNumber one = integer(ctx, 1);
    const PadicNumber& x0 = report.x0;
    const PadicNumber& a = params.a();
    const PadicNumber& b2 = params.b2();
    const PNorm r = params.r();

    FixedPointLemma out;
    out.i = distance(x0, a) < r;
    const PadicNumber x0sq = x0 * x0;
    out.iv = distance(x0sq, -b2) * distance(x0sq * b2, -one) == PNorm::power(p, 0);

    if (report.roots) {
        bool ii = true, iii = true, v = true;
        for (const PadicNumber* x : {&report.roots->first, &report.roots->second}) {
            const PadicNumber xsq = *x * *x;
            // b^2 - 1 + (b^2 a - x0) x
            ii = ii && distance(b2 + (params.ab2() - x0) * *x, one) == r;
            const PNorm plus_b2 = distance(xsq, -b2);
            iii = iii && plus_b2 == r;
            v = v && plus_b2 * distance(xsq * b2, -one) <= PNorm::power(p, -2);
            if (x == &report.roots->first) out.iii_value = plus_b2;
        }
        out.ii = ii;
        out.iii = iii;
        out.v = v;
    }
    if (params.strict_regime()) {
        out.vi = distance(x0, one) < r;
        const long m = params.b_order();
        const int delta_plus_4 = difference_valuation(report.delta, integer(ctx, -4));
        out.vii = delta_plus_4 >= 2 * m;
    }
    return out;
}

FixedPointReport analyze_fixed_points(const MapParams& params) {
    int iterations = 0;
    PadicNumber x0 = find_x0(params, &iterations);
    quadratic_coeffs(params, x0);
    PadicNumber delta = discriminant(params, x0);
    FixedPointReport report{x0, repelling_roots(params, x0, delta), delta,
                            classify(params, x0), std::nullopt, {}, iterations};
    if (report.roots)
        report.root_kinds = std::make_pair(classify(params, report.roots->first),
                                           classify(params, report.roots->second));
    report.lemma = verify_fixed_point_lemma(params, report);
    return report;
}

} // namespace padyn
