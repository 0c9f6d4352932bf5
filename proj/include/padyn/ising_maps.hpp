#pragma once

// The rational maps
//   f(u) = ((abu)^2 + 1) / (b^2 + a^2 u^2)
//   g(u) = a (b^2 u^2 + 1) / (b^2 + u^2)        generalized Ising mapping
//   k(x) = (a (b^2 x + 1) / (b^2 + x))^2        g conjugated by squaring
// for parameters a, b in E_p.

#include "padyn/padic.hpp"

namespace padyn {

class MapParams {
public:
    // Throws DomainError unless a, b lie in E_p and b != 1 at working precision.
    MapParams(PadicNumber a, PadicNumber b);

    const PrimeContext& context() const noexcept { return a_.context(); }
    unsigned long prime() const noexcept { return a_.prime(); }
    const PadicNumber& a() const noexcept { return a_; }
    const PadicNumber& b() const noexcept { return b_; }
    const PadicNumber& b2() const noexcept { return b2_; }
    const PadicNumber& ab2() const noexcept { return ab2_; }

    // |a - 1|_p < |b - 1|_p.
    bool strict_regime() const noexcept { return strict_; }
    // r = |b - 1|_p.
    const PNorm& r() const noexcept { return r_; }
    // ord_p(b - 1).
    int b_order() const noexcept { return static_cast<int>(-r_.exponent()); }

private:
    PadicNumber a_, b_, b2_, ab2_;
    bool strict_;
    PNorm r_;
};

PadicNumber eval_f(const MapParams& params, const PadicNumber& u);
PadicNumber eval_g(const MapParams& params, const PadicNumber& u);
PadicNumber eval_k(const MapParams& params, const PadicNumber& x);

// h(u) = a u intertwines f and g: g(a u) = a f(u).
PadicNumber conjugate_f_to_g(const MapParams& params, const PadicNumber& u);

// |g'(x)|_p = |2a|_p |x|_p |b^4 - 1|_p / |b^2 + x^2|_p^2.
PNorm deriv_g_norm(const MapParams& params, const PadicNumber& x);

// Denominators whose norm drops below p^-(N-g) are poles at working precision.
void require_nonpole(const PadicNumber& denominator, const char* what);

} // namespace padyn
