#pragma once

// p-adic Ising-Vannimenus model on a Cayley tree: Hamiltonian, the measures
// mu_h^(n), exhaustive compatibility checks and boundary fields built from
// periodic orbits of g_{a,b}.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padyn/cayley_tree.hpp"
#include "padyn/padic.hpp"

namespace padyn {

// Coupling constants with |J|, |J1|, |J0| <= 1/p so that exp_p(H_n) exists.
class Couplings {
public:
    Couplings(PadicNumber J, PadicNumber J1, PadicNumber J0);
    static Couplings zero(const PrimeContext& ctx);

    const PadicNumber& J() const noexcept { return J_; }
    const PadicNumber& J1() const noexcept { return J1_; }
    const PadicNumber& J0() const noexcept { return J0_; }
    // a = exp_p(J), b = exp_p(J1).
    const PadicNumber& a() const noexcept { return a_; }
    const PadicNumber& b() const noexcept { return b_; }
    const PrimeContext& context() const noexcept { return J_.context(); }

private:
    PadicNumber J_, J1_, J0_, a_, b_;
};

// h_{xy} = (h_{--}, h_{-+}, h_{+-}, h_{++}).
struct HVector {
    PadicNumber mm, mp, pm, pp;

    static HVector unit(const PrimeContext& ctx);
    // Component h_{s_x s_y} for spins s_x, s_y in {-1, +1}.
    const PadicNumber& at(int sx, int sy) const;
    PadicNumber& at(int sx, int sy);

    friend bool operator==(const HVector&, const HVector&) = default;
};

// Boundary field keyed by the child endpoint of each edge.
class GibbsField {
public:
    void set(const Vertex& child, HVector h);
    bool contains(const Vertex& child) const { return edges_.count(child) != 0; }
    // DomainError when the edge is missing.
    const HVector& at(const Vertex& child) const;
    const std::map<Vertex, HVector>& edges() const noexcept { return edges_; }

private:
    std::map<Vertex, HVector> edges_;
};

// Edge with child at level l gets classes[l mod m].
GibbsField level_periodic_field(const CayleyTree& tree, const std::vector<HVector>& classes,
                                std::size_t depth);
// Same vector on every edge up to depth.
GibbsField translation_invariant_field(const CayleyTree& tree, const HVector& h, std::size_t depth);

// Spins indexed like CayleyTree::ball(n); entries are -1 or +1.
using Configuration = std::vector<int>;

// sigma on V_{n-1} followed by omega on W_n.
Configuration concatenate(const Configuration& sigma, const Configuration& omega);
// Spin i is +1 when bit i of `bits` is set.
Configuration configuration_from_bits(std::size_t size, unsigned long long bits);

PadicNumber hamiltonian(const CayleyTree& tree, const Couplings& couplings,
                        const Configuration& sigma, std::size_t n);

// mu_h^(n) on V_n with the weights precomputed once.
class FiniteMeasure {
public:
    // Exhaustive: 2^|V_n| terms, so |V_n| is capped at 24.
    FiniteMeasure(const CayleyTree& tree, const Couplings& couplings, const GibbsField& field,
                  std::size_t n);

    std::size_t depth() const noexcept { return n_; }
    std::size_t size() const noexcept { return size_; }
    PadicNumber weight(const Configuration& sigma) const;
    // Z_n; ZeroPartitionFunction when it vanishes at working precision.
    const PadicNumber& partition() const;
    PadicNumber measure(const Configuration& sigma) const;

private:
    struct Pair {
        std::size_t x, y;
    };
    const PadicNumber& exp_of_counts(long nj, long nj1, long nj0) const;

    PrimeContext ctx_;
    Couplings couplings_;
    std::size_t n_, size_;
    std::vector<Pair> edges_, prolonged_, siblings_;
    std::vector<Pair> boundary_;
    // Per boundary edge: factors for (--, -+, +-, ++) with the exponent applied.
    std::vector<std::array<PadicNumber, 4>> factors_;
    mutable std::map<std::array<long, 3>, PadicNumber> exp_cache_;
    mutable std::optional<PadicNumber> partition_;
};

PadicNumber measure_weight(const CayleyTree& tree, const Couplings& couplings,
                           const GibbsField& field, const Configuration& sigma, std::size_t n);
PadicNumber partition_fn(const CayleyTree& tree, const Couplings& couplings,
                         const GibbsField& field, std::size_t n);
PadicNumber measure(const CayleyTree& tree, const Couplings& couplings, const GibbsField& field,
                    const Configuration& sigma, std::size_t n);

struct CompatibilityEntry {
    Configuration sigma;  // on V_{n-1}
    std::optional<PadicNumber> lhs, rhs;
    PNorm residual;
    bool ok = false;
};

struct CompatibilityReport {
    bool compatible = false;
    PNorm worst;
    std::size_t base_configurations = 0;
    std::size_t boundary_configurations = 0;
    std::vector<CompatibilityEntry> entries;
    // Set when a sum lost too many digits to cancellation; `note` says where.
    bool precision_exhausted = false;
    std::string note;
};

// Sum over omega of mu^(n)(sigma v omega) against mu^(n-1)(sigma) for every
// sigma, to N - g digits. Precision failures are reported, not thrown.
CompatibilityReport check_compatibility(const CayleyTree& tree, const Couplings& couplings,
                                        const GibbsField& field, std::size_t n);

struct SystemResidual {
    bool holds = false;
    PNorm worst;
    std::string note;
};

// Residual of the three product equations linking each edge to the edges below it,
// over every vertex y with 1 <= depth(y) < depth.
SystemResidual system_residual(const CayleyTree& tree, const Couplings& couplings,
                               const GibbsField& field, std::size_t depth);

struct SolveResult {
    std::vector<HVector> classes;  // class l lives on edges whose child is at level l mod m
    std::size_t iterations = 0;
    std::vector<PNorm> trace;      // change per sweep
};

// Fixed-point iteration of the product system for a level-periodic ansatz with
// period classes.size(). The gauge h_{++} = 1 is imposed after the first sweep.
SolveResult solve_product_system(const CayleyTree& tree, const Couplings& couplings,
                                 std::vector<HVector> initial, std::size_t max_iter = 0);

enum class Placement { MinusMinus, MinusPlus, PlusMinus, PlusPlus, ConjugateSquare };
std::string to_string(Placement placement);
std::vector<Placement> all_placements();

// Vector carried by an edge whose orbit value is h. Single placements put h in
// one component and 1 elsewhere; ConjugateSquare is (1, (h/a)^2, (h/a)^2, 1).
HVector place(Placement placement, const PadicNumber& h, const PadicNumber& a);

// Edge with child at level l gets the vector of orbit[l mod m].
GibbsField periodic_field_from_orbit(const CayleyTree& tree, const Couplings& couplings,
                                     const std::vector<PadicNumber>& orbit, Placement placement,
                                     std::size_t depth);

struct PlacementCandidate {
    Placement placement;
    GibbsField field;
    SystemResidual residual;
};

std::vector<PlacementCandidate> scan_placements(const CayleyTree& tree, const Couplings& couplings,
                                                const std::vector<PadicNumber>& orbit,
                                                std::size_t depth);
// Candidates passing the product system; NoValidPlacement with every residual otherwise.
std::vector<PlacementCandidate> valid_placements(const CayleyTree& tree, const Couplings& couplings,
                                                 const std::vector<PadicNumber>& orbit,
                                                 std::size_t depth);

// h_{tau_g(x)} = h_x for all g in H_m and every edge inside V_depth.
bool is_level_periodic(const CayleyTree& tree, const GibbsField& field, std::size_t m,
                       std::size_t depth);

} // namespace padyn
