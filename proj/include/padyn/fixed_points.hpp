#pragma once

// Fixed points of g_{a,b}: the attracting point x0 in E_p, and for p = 1 (mod 4)
// the two repelling roots of x^2 + (x0 - ab^2) x + a/x0.

#include <optional>
#include <string_view>
#include <utility>

#include "padyn/ising_maps.hpp"

namespace padyn {

enum class FixedPointKind { Attracting, Indifferent, Repelling };

std::string_view to_string(FixedPointKind kind);

struct QuadraticCoeffs {
    PadicNumber B;  // x0 - ab^2
    PadicNumber C;  // a / x0
};

// Each clause of the structural lemma on x0, x1, x2, evaluated as an exact norm
// comparison. Clauses that need the repelling roots or the strict regime are
// empty when those are unavailable.
struct FixedPointLemma {
    bool i = false;                // |x0 - a| < |b - 1|
    std::optional<bool> ii;        // |b^2 - 1 + (b^2 a - x0) x_{1,2}| = |b - 1|
    std::optional<bool> iii;       // |x_{1,2}^2 + b^2| = |b - 1|
    bool iv = false;               // |x0^2 + b^2| |x0^2 b^2 + 1| = 1
    std::optional<bool> v;         // |x_{1,2}^2 + b^2| |x_{1,2}^2 b^2 + 1| <= p^-2
    std::optional<bool> vi;        // |x0 - 1| < |b - 1|
    std::optional<bool> vii;       // ord(Delta + 4) >= 2 ord(b - 1)
    std::optional<PNorm> iii_value;  // |x1^2 + b^2|

    bool all_hold() const;
};

struct FixedPointReport {
    PadicNumber x0;
    std::optional<std::pair<PadicNumber, PadicNumber>> roots;  // (x1, x2)
    PadicNumber delta;
    FixedPointKind x0_kind = FixedPointKind::Attracting;
    std::optional<std::pair<FixedPointKind, FixedPointKind>> root_kinds;
    FixedPointLemma lemma;
    int iterations = 0;  // contraction steps spent on x0
};

// Iterates u <- g(u) from u = 1 until |g(u) - u| <= p^-(N-g); at most N + g steps.
PadicNumber find_x0(const MapParams& params, int* iterations = nullptr);

// Coefficients of the quotient quadratic; checks a/x0 = x0^2 - ab^2 x0 + b^2.
QuadraticCoeffs quadratic_coeffs(const MapParams& params, const PadicNumber& x0);

// Delta = -3 x0^2 + 2ab^2 x0 - 4b^2 + a^2 b^4.
PadicNumber discriminant(const MapParams& params, const PadicNumber& x0);

// (ab^2 - x0 +- sqrt(Delta)) / 2 with x1 on the canonical square-root branch;
// empty when p = 3 (mod 4).
std::optional<std::pair<PadicNumber, PadicNumber>> repelling_roots(const MapParams& params,
                                                                   const PadicNumber& x0,
                                                                   const PadicNumber& delta);

// |g(x) - x|_p <= p^-(N-g).
bool is_fixed_point(const MapParams& params, const PadicNumber& x);

// Attracting / indifferent / repelling from |g'(x)|_p; NotAFixedPoint otherwise.
FixedPointKind classify(const MapParams& params, const PadicNumber& x);

FixedPointLemma verify_fixed_point_lemma(const MapParams& params, const FixedPointReport& report);

// x0, roots, classification and lemma checks in one pass.
FixedPointReport analyze_fixed_points(const MapParams& params);

} // namespace padyn
