#pragma once

// Symbolic dynamics of g_{a,b} and its squared conjugate k_{a,b}.
//
// For p = 1 (mod 4) and |a - 1|_p < |b - 1|_p = r, the map k expands each of the
// balls B_r(x1^2), B_r(x2^2) by exactly r^-1 and covers both of them, so its
// Julia set is coded by the full shift on {1, 2}. Everything here is computed,
// not assumed: branches are picked by ball membership and every synthesized
// periodic point is checked by forward iteration.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padyn/fixed_points.hpp"

namespace padyn {

// Finite sequence over the symbols {1, 2}.
using Word = std::vector<int>;

// Accepts "122" or "1,2,2"; throws ParseError on anything else.
Word parse_word(const std::string& text);
std::string to_string(const Word& w);
void validate_word(const Word& w);
// All 2^m words of length m in lexicographic order.
std::vector<Word> all_words(std::size_t m);

// K = { x : |x - x0|_p = 1, |x^2 + 1|_p <= |b^2 - 1|_p }.
bool k_membership(const MapParams& params, const PadicNumber& x0, const PadicNumber& x);
bool k_membership(const MapParams& params, const PadicNumber& x);

enum class BasinOutcome { InBasin, StaysInK };

struct BasinStatus {
    BasinOutcome outcome = BasinOutcome::InBasin;
    // InBasin: index of the first iterate outside K. StaysInK: the budget.
    std::size_t steps = 0;
    // Per visited iterate: 0 outside K, otherwise 1 or 2 for the half of K
    // around alpha1 or alpha2 (the two square roots of -1).
    std::vector<int> trail;
    // InBasin: iterations after leaving K until the orbit matches x0.
    std::optional<std::size_t> converged_after;
    // StaysInK: period of the orbit cycle that was detected, if any. A detected
    // cycle certifies that the whole forward orbit stays in K.
    std::optional<std::size_t> cycle_length;
};

// Follows the g-orbit of x. Leaving K proves x is in the basin of x0; staying
// in K for max_iter steps is evidence (a certificate when a cycle is found)
// that x lies in R = intersection of g^-n(K).
BasinStatus basin_status(const MapParams& params, const PadicNumber& x, std::size_t max_iter);

struct RepellerGeometry {
    PadicNumber alpha1, alpha2;  // the square roots of -1, alpha1 canonical
    PadicNumber x1, x2;          // repelling fixed points of g
    PadicNumber x1sq, x2sq;      // ball centers for k
    PNorm r;                     // |b - 1|_p
    int b_order = 0;             // ord_p(b - 1)
    int expansion_exponent = 0;  // ord_p(b - 1): k scales distances by p^this
    int kappa = 0;               // |x1^2 - x2^2|_p = p^-kappa

    // B_r(x_j^2), open.
    Ball ball(int j) const;
};

// Everything the coding needs, built once per parameter pair.
struct SymbolicSystem {
    MapParams params;
    FixedPointReport fixed;
    RepellerGeometry geometry;
};

// Throws DomainError unless p = 1 (mod 4) and the regime is strict.
SymbolicSystem make_symbolic_system(const MapParams& params);

// The same system recomputed with `extra` more digits of precision and guard.
SymbolicSystem widen(const SymbolicSystem& sys, int extra);

// X = B_r(x1^2) u B_r(x2^2).
bool in_repeller_domain(const SymbolicSystem& sys, const PadicNumber& x);

// Branch j of k^-1 on X: y = (a - b^2 s)/(s - ab^2) for the square root s of x
// that lands in B_r(x_j^2).
PadicNumber inverse_branch(const SymbolicSystem& sys, int j, const PadicNumber& x);

// Fixed point of inverse_branch(w_1) o ... o inverse_branch(w_m): the periodic
// point of k with itinerary w. Computed with |w| * expansion_exponent extra
// digits, checked against k^m(x) = x and the itinerary, then rounded back.
PadicNumber periodic_point_k(const SymbolicSystem& sys, const Word& w);

// The square root of periodic_point_k(w) that is itself g-periodic. The root in
// B_r(x_{w_1}) is tried first; VerificationError when neither passes.
PadicNumber periodic_point_g(const SymbolicSystem& sys, const Word& w);

// g-orbit of a periodic point ordered so that h_i = g(h_{i+1}), indices mod m.
std::vector<PadicNumber> backward_orbit(const MapParams& params, const PadicNumber& start,
                                        std::size_t period);

// Symbols of x, k(x), ..., k^{L-1}(x); EscapeError at the first iterate outside X.
Word itinerary(const SymbolicSystem& sys, const PadicNumber& x, std::size_t length);

// d(u, v) = p^-(n tau + kappa) where n is the first index where u and v differ.
PNorm subshift_metric(const SymbolicSystem& sys, const Word& u, const Word& v);

// a_ij = 1 iff branch j maps the center of B_r(x_i^2) into B_r(x_j^2) and k
// sends the image back to that center.
std::array<std::array<int, 2>, 2> incidence_matrix(const SymbolicSystem& sys);

struct Cylinder {
    Word word;
    Ball ball;
};

// Depth-d cylinders of the Julia set of k: one ball of radius r p^-(d-1) tau per word.
std::vector<Cylinder> julia_cylinders(const SymbolicSystem& sys, std::size_t depth);

// K equals the union of the closed r-balls around alpha1, alpha2 and around x1, x2.
bool k_equals_closed_balls(const SymbolicSystem& sys);
// B_r(x1^2) and B_r(x2^2) are disjoint.
bool k_balls_disjoint(const SymbolicSystem& sys);

struct ExpansionSample {
    int ball = 1;
    PNorm before, after;
    bool ok = false;
};

struct ExpansionReport {
    bool holds = false;
    std::vector<ExpansionSample> samples;
};

// |k(x) - k(y)| = p^tau |x - y| on deterministic pairs inside each ball.
ExpansionReport check_expansion(const SymbolicSystem& sys, std::size_t pairs_per_ball);

} // namespace padyn
