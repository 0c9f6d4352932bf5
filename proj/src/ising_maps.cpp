#include "padyn/ising_maps.hpp"

namespace padyn {

namespace {

PadicNumber one(const PrimeContext& ctx) { return PadicNumber::from_integer(ctx, 1); }

PadicNumber checked_sum(const PadicNumber& x, const PadicNumber& y, const char* what) {
    PadicNumber s(x.context());
    try {
        s = x + y;
    } catch (const PrecisionExhausted&) {
        throw PoleError(std::string(what) + " vanishes at working precision");
    }
    require_nonpole(s, what);
    return s;
}

} // namespace

MapParams::MapParams(PadicNumber a, PadicNumber b)
    : a_(std::move(a)), b_(std::move(b)), b2_(b_ * b_), ab2_(a_ * b2_),
      strict_(false), r_(PNorm::zero(a_.prime())) {
    if (!(a_.context() == b_.context())) throw DomainError("a and b use different contexts");
    if (!in_Ep(a_)) throw DomainError("a must lie in E_p (|a - 1|_p < 1)");
    if (!in_Ep(b_)) throw DomainError("b must lie in E_p (|b - 1|_p < 1)");
    const PadicNumber unit = one(context());
    r_ = distance(b_, unit);
    if (r_.is_zero()) throw DomainError("b = 1 at working precision");
    strict_ = distance(a_, unit) < r_;
}

void require_nonpole(const PadicNumber& denominator, const char* what) {
    const PrimeContext& ctx = denominator.context();
    if (denominator.is_zero() || denominator.valuation() > ctx.tolerance_digits())
        throw PoleError(std::string(what) + " vanishes at working precision");
}

PadicNumber eval_f(const MapParams& params, const PadicNumber& u) {
    const PadicNumber u2 = u * u;
    const PadicNumber a2 = params.a() * params.a();
    const PadicNumber den = checked_sum(params.b2(), a2 * u2, "b^2 + a^2 u^2");
    return (params.ab2() * params.a() * u2 + one(params.context())) / den;
}

PadicNumber eval_g(const MapParams& params, const PadicNumber& u) {
    const PadicNumber u2 = u * u;
    const PadicNumber den = checked_sum(params.b2(), u2, "b^2 + u^2");
    return params.a() * (params.b2() * u2 + one(params.context())) / den;
}

PadicNumber eval_k(const MapParams& params, const PadicNumber& x) {
    const PadicNumber den = checked_sum(params.b2(), x, "b^2 + x");
    const PadicNumber root = params.a() * (params.b2() * x + one(params.context())) / den;
    return root * root;
}

PadicNumber conjugate_f_to_g(const MapParams& params, const PadicNumber& u) {
    return params.a() * u;
}

PNorm deriv_g_norm(const MapParams& params, const PadicNumber& x) {
    const PrimeContext& ctx = params.context();
    const unsigned long p = params.prime();
    const PadicNumber x2 = x * x;
    const PNorm den = distance(params.b2(), -x2);
    if (den.is_zero() || den < PNorm::power(p, -ctx.tolerance_digits()))
        throw PoleError("b^2 + x^2 vanishes at working precision");
    const PadicNumber unit = one(ctx);
    // b^4 - 1 = (b - 1)(b + 1)(b^2 + 1).
    const PNorm b4_minus_1 = distance(params.b(), unit) * distance(params.b(), -unit) *
                             distance(params.b2(), -unit);
    const PNorm two_a = (PadicNumber::from_integer(ctx, 2) * params.a()).norm();
    return two_a * x.norm() * b4_minus_1 / (den * den);
}

} // namespace padyn
