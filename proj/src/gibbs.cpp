#include "padyn/gibbs.hpp"

#include <algorithm>

#include "padyn/error.hpp"

namespace padyn {

namespace {

void require_small(const PadicNumber& x, const char* name) {
    if (!x.is_zero() && x.valuation() < 1)
        throw DomainError(std::string(name) + " must satisfy |" + name + "|_p <= 1/p");
}

void require_nonzero_components(const HVector& h) {
    for (const PadicNumber* c : {&h.mm, &h.mp, &h.pm, &h.pp})
        if (c->is_zero()) throw DomainError("field components must be nonzero");
}

std::size_t component_index(int sx, int sy) {
    return static_cast<std::size_t>((sx > 0 ? 2 : 0) + (sy > 0 ? 1 : 0));
}

Vertex parent(const Vertex& y) { return Vertex(y.begin(), y.end() - 1); }

} // namespace

Couplings::Couplings(PadicNumber J, PadicNumber J1, PadicNumber J0)
    : J_(std::move(J)), J1_(std::move(J1)), J0_(std::move(J0)), a_(J_.context()), b_(J_.context()) {
    if (!(J1_.context() == J_.context()) || !(J0_.context() == J_.context()))
        throw DomainError("couplings live in different contexts");
    require_small(J_, "J");
    require_small(J1_, "J1");
    require_small(J0_, "J0");
    a_ = exp_p(J_);
    b_ = exp_p(J1_);
}

Couplings Couplings::zero(const PrimeContext& ctx) {
    return Couplings(PadicNumber(ctx), PadicNumber(ctx), PadicNumber(ctx));
}

HVector HVector::unit(const PrimeContext& ctx) {
    const PadicNumber one = PadicNumber::from_integer(ctx, 1);
    return HVector{one, one, one, one};
}

const PadicNumber& HVector::at(int sx, int sy) const {
    switch (component_index(sx, sy)) {
    case 0: return mm;
    case 1: return mp;
    case 2: return pm;
    default: return pp;
    }
}

PadicNumber& HVector::at(int sx, int sy) {
    return const_cast<PadicNumber&>(static_cast<const HVector&>(*this).at(sx, sy));
}

void GibbsField::set(const Vertex& child, HVector h) {
    if (child.empty()) throw DomainError("the root has no incoming edge");
    require_nonzero_components(h);
    edges_.insert_or_assign(child, std::move(h));
}

const HVector& GibbsField::at(const Vertex& child) const {
    auto it = edges_.find(child);
    if (it == edges_.end()) throw DomainError("field has no value on edge into " + vertex_label(child));
    return it->second;
}

GibbsField level_periodic_field(const CayleyTree& tree, const std::vector<HVector>& classes,
                                std::size_t depth) {
    if (classes.empty()) throw DomainError("need at least one field class");
    GibbsField field;
    for (std::size_t l = 1; l <= depth; ++l)
        for (const Vertex& y : tree.level(l)) field.set(y, classes[l % classes.size()]);
    return field;
}

GibbsField translation_invariant_field(const CayleyTree& tree, const HVector& h, std::size_t depth) {
    return level_periodic_field(tree, {h}, depth);
}

Configuration concatenate(const Configuration& sigma, const Configuration& omega) {
    Configuration out = sigma;
    out.insert(out.end(), omega.begin(), omega.end());
    return out;
}

Configuration configuration_from_bits(std::size_t size, unsigned long long bits) {
    Configuration out(size);
    for (std::size_t i = 0; i < size; ++i) out[i] = ((bits >> i) & 1ULL) ? 1 : -1;
    return out;
}

namespace {

template <class Pairs>
long spin_sum(const Pairs& pairs, const Configuration& s) {
    long total = 0;
    for (const auto& pr : pairs) total += s[pr.x] * s[pr.y];
    return total;
}

} // namespace

PadicNumber hamiltonian(const CayleyTree& tree, const Couplings& couplings,
                        const Configuration& sigma, std::size_t n) {
    if (sigma.size() != tree.ball_size(n))
        throw LengthMismatch("configuration does not cover V_" + std::to_string(n));
    auto sum = [&](const std::vector<VertexPair>& pairs) {
        long total = 0;
        for (const auto& [x, y] : pairs) total += sigma[tree.index(x)] * sigma[tree.index(y)];
        return total;
    };
    const PrimeContext& ctx = couplings.context();
    return couplings.J() * PadicNumber::from_integer(ctx, sum(tree.edges(n))) +
           couplings.J1() * PadicNumber::from_integer(ctx, sum(tree.prolonged_pairs(n))) +
           couplings.J0() * PadicNumber::from_integer(ctx, sum(tree.one_level_pairs(n)));
}

FiniteMeasure::FiniteMeasure(const CayleyTree& tree, const Couplings& couplings,
                             const GibbsField& field, std::size_t n)
    : ctx_(couplings.context()), couplings_(couplings), n_(n), size_(tree.ball_size(n)) {
    if (size_ > 24) throw DomainError("V_n too large for exhaustive enumeration");
    auto index_pairs = [&](const std::vector<VertexPair>& pairs) {
        std::vector<Pair> out;
        for (const auto& [x, y] : pairs) out.push_back({tree.index(x), tree.index(y)});
        return out;
    };
    edges_ = index_pairs(tree.edges(n));
    prolonged_ = index_pairs(tree.prolonged_pairs(n));
    siblings_ = index_pairs(tree.one_level_pairs(n));
    if (n == 0) return;
    for (const Vertex& y : tree.level(n)) {
        const HVector& h = field.at(y);
        boundary_.push_back({tree.index(parent(y)), tree.index(y)});
        // sigma(x) sigma(y) = -1 on the mixed components, so those enter inverted.
        factors_.push_back({h.mm, PadicNumber::from_integer(ctx_, 1) / h.mp,
                            PadicNumber::from_integer(ctx_, 1) / h.pm, h.pp});
    }
}

const PadicNumber& FiniteMeasure::exp_of_counts(long nj, long nj1, long nj0) const {
    const std::array<long, 3> key{nj, nj1, nj0};
    auto it = exp_cache_.find(key);
    if (it != exp_cache_.end()) return it->second;
    const PadicNumber H = couplings_.J() * PadicNumber::from_integer(ctx_, nj) +
                          couplings_.J1() * PadicNumber::from_integer(ctx_, nj1) +
                          couplings_.J0() * PadicNumber::from_integer(ctx_, nj0);
    return exp_cache_.emplace(key, exp_p(H)).first->second;
}

PadicNumber FiniteMeasure::weight(const Configuration& s) const {
    if (s.size() != size_) throw LengthMismatch("configuration does not cover V_" + std::to_string(n_));
    PadicNumber w = exp_of_counts(spin_sum(edges_, s), spin_sum(prolonged_, s), spin_sum(siblings_, s));
    for (std::size_t e = 0; e < boundary_.size(); ++e)
        w = w * factors_[e][component_index(s[boundary_[e].x], s[boundary_[e].y])];
    return w;
}

const PadicNumber& FiniteMeasure::partition() const {
    if (!partition_) {
        PadicNumber z(ctx_);
        const unsigned long long total = 1ULL << size_;
        for (unsigned long long bits = 0; bits < total; ++bits)
            z = z + weight(configuration_from_bits(size_, bits));
        if (z.is_zero() || z.valuation() > ctx_.tolerance_digits())
            throw ZeroPartitionFunction("Z_" + std::to_string(n_) + " vanishes at working precision");
        partition_ = z;
    }
    return *partition_;
}

PadicNumber FiniteMeasure::measure(const Configuration& s) const { return weight(s) / partition(); }

PadicNumber measure_weight(const CayleyTree& tree, const Couplings& couplings,
                           const GibbsField& field, const Configuration& sigma, std::size_t n) {
    return FiniteMeasure(tree, couplings, field, n).weight(sigma);
}

PadicNumber partition_fn(const CayleyTree& tree, const Couplings& couplings,
                         const GibbsField& field, std::size_t n) {
    return FiniteMeasure(tree, couplings, field, n).partition();
}

PadicNumber measure(const CayleyTree& tree, const Couplings& couplings, const GibbsField& field,
                    const Configuration& sigma, std::size_t n) {
    return FiniteMeasure(tree, couplings, field, n).measure(sigma);
}

CompatibilityReport check_compatibility(const CayleyTree& tree, const Couplings& couplings,
                                        const GibbsField& field, std::size_t n) {
    if (n < 1) throw DomainError("compatibility needs n >= 1");
    const PrimeContext& ctx = couplings.context();
    CompatibilityReport report{false, PNorm::zero(ctx.prime()), 0, 0, {}, false, {}};
    const FiniteMeasure upper(tree, couplings, field, n);
    const FiniteMeasure lower(tree, couplings, field, n - 1);
    const std::size_t base = tree.ball_size(n - 1);
    const std::size_t boundary = tree.level_size(n);
    report.base_configurations = std::size_t{1} << base;
    report.boundary_configurations = std::size_t{1} << boundary;
    report.compatible = true;
    for (unsigned long long sb = 0; sb < report.base_configurations; ++sb) {
        CompatibilityEntry entry{configuration_from_bits(base, sb), {}, {}, PNorm::zero(ctx.prime()), false};
        try {
            PadicNumber lhs(ctx);
            for (unsigned long long wb = 0; wb < report.boundary_configurations; ++wb)
                lhs = lhs + upper.measure(concatenate(entry.sigma, configuration_from_bits(boundary, wb)));
            entry.lhs = lhs;
            entry.rhs = lower.measure(entry.sigma);
            entry.residual = distance(*entry.lhs, *entry.rhs);
            entry.ok = eq_to_tolerance(*entry.lhs, *entry.rhs);
        } catch (const PrecisionExhausted& e) {
            entry.residual = PNorm::power(ctx.prime(), 0);
            entry.ok = false;
            report.precision_exhausted = true;
            report.note = e.what();
        }
        report.worst = std::max(report.worst, entry.residual);
        report.compatible = report.compatible && entry.ok;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

namespace {

struct Sides {
    PadicNumber u, v, w;  // products h_{++}h_{-+}, h_{--}h_{+-}, h_{++}h_{+-}
};

Sides left_sides(const HVector& h) { return {h.pp * h.mp, h.mm * h.pm, h.pp * h.pm}; }

// Right-hand factors of the product system for one child edge.
Sides right_factors(const Couplings& c, const HVector& h) {
    const PadicNumber a2 = c.a() * c.a();
    const PadicNumber b2 = c.b() * c.b();
    const PadicNumber ab2 = a2 * b2;
    const PadicNumber one = PadicNumber::from_integer(c.context(), 1);
    const PadicNumber t_plus = h.pp * h.mp;
    const PadicNumber t_minus = h.mm * h.pm;
    const PadicNumber num_plus = ab2 * t_plus + one;
    return {num_plus / (a2 * t_plus + b2), (ab2 * t_minus + one) / (a2 * t_minus + b2),
            num_plus * h.mp / ((a2 * h.mm * h.mp + b2) * h.pm)};
}

Sides right_sides(const Couplings& c, const std::vector<HVector>& children) {
    const PadicNumber one = PadicNumber::from_integer(c.context(), 1);
    Sides out{one, one, one};
    for (const HVector& h : children) {
        const Sides f = right_factors(c, h);
        out.u = out.u * f.u;
        out.v = out.v * f.v;
        out.w = out.w * f.w;
    }
    return out;
}

PNorm worst_of(const Sides& l, const Sides& r) {
    return std::max({distance(l.u, r.u), distance(l.v, r.v), distance(l.w, r.w)});
}

bool sides_agree(const Sides& l, const Sides& r) {
    return eq_to_tolerance(l.u, r.u) && eq_to_tolerance(l.v, r.v) && eq_to_tolerance(l.w, r.w);
}

} // namespace

SystemResidual system_residual(const CayleyTree& tree, const Couplings& couplings,
                               const GibbsField& field, std::size_t depth) {
    const unsigned long p = couplings.context().prime();
    SystemResidual out{true, PNorm::zero(p), {}};
    if (depth < 2) throw DomainError("the product system needs depth >= 2");
    for (std::size_t l = 1; l < depth; ++l)
        for (const Vertex& y : tree.level(l)) {
            std::vector<HVector> children;
            for (const Vertex& z : tree.successors(y)) children.push_back(field.at(z));
            try {
                const Sides lhs = left_sides(field.at(y));
                const Sides rhs = right_sides(couplings, children);
                out.worst = std::max(out.worst, worst_of(lhs, rhs));
                out.holds = out.holds && sides_agree(lhs, rhs);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::Verification) throw;
                out.holds = false;
                out.worst = std::max(out.worst, PNorm::power(p, 0));
                out.note = "at " + vertex_label(y) + ": " + e.what();
            }
        }
    return out;
}

SolveResult solve_product_system(const CayleyTree& tree, const Couplings& couplings,
                                 std::vector<HVector> classes, std::size_t max_iter) {
    if (classes.empty()) throw DomainError("need at least one field class");
    for (const HVector& h : classes) require_nonzero_components(h);
    const PrimeContext& ctx = couplings.context();
    if (max_iter == 0) max_iter = 4 * static_cast<std::size_t>(ctx.precision() + ctx.guard());
    const std::size_t m = classes.size();
    const auto k = static_cast<std::size_t>(tree.order());
    const PadicNumber one = PadicNumber::from_integer(ctx, 1);

    SolveResult result;
    for (std::size_t it = 1; it <= max_iter; ++it) {
        std::vector<HVector> next;
        next.reserve(m);
        for (std::size_t l = 0; l < m; ++l) {
            const Sides r = right_sides(couplings, std::vector<HVector>(k, classes[(l + 1) % m]));
            // Gauge h_{++} = 1: the three products then fix the other components.
            next.push_back(HVector{r.v / r.w, r.u, r.w, one});
        }
        PNorm change = PNorm::zero(ctx.prime());
        bool stable = true;
        for (std::size_t l = 0; l < m; ++l)
            for (int sx : {-1, 1})
                for (int sy : {-1, 1}) {
                    change = std::max(change, distance(next[l].at(sx, sy), classes[l].at(sx, sy)));
                    stable = stable && difference_valuation(next[l].at(sx, sy), classes[l].at(sx, sy)) ==
                                           PadicNumber::kInfinity;
                }
        classes = std::move(next);
        result.trace.push_back(change);
        result.iterations = it;
        if (stable) {
            result.classes = classes;
            const std::size_t depth = m + 1;
            const SystemResidual check =
                system_residual(tree, couplings, level_periodic_field(tree, classes, depth), depth);
            if (!check.holds)
                throw NoConvergence("iteration stalled with residual " + check.worst.to_string());
            return result;
        }
    }
    std::string trace;
    const std::size_t from = result.trace.size() > 5 ? result.trace.size() - 5 : 0;
    for (std::size_t i = from; i < result.trace.size(); ++i)
        trace += (trace.empty() ? "" : ", ") + result.trace[i].to_string();
    throw NoConvergence("no stable field after " + std::to_string(max_iter) +
                        " sweeps; last changes: " + trace);
}

std::string to_string(Placement placement) {
    switch (placement) {
    case Placement::MinusMinus: return "--";
    case Placement::MinusPlus: return "-+";
    case Placement::PlusMinus: return "+-";
    case Placement::PlusPlus: return "++";
    case Placement::ConjugateSquare: return "conjugate-square";
    }
    return "?";
}

std::vector<Placement> all_placements() {
    return {Placement::MinusMinus, Placement::MinusPlus, Placement::PlusMinus, Placement::PlusPlus,
            Placement::ConjugateSquare};
}

HVector place(Placement placement, const PadicNumber& h, const PadicNumber& a) {
    HVector out = HVector::unit(h.context());
    switch (placement) {
    case Placement::MinusMinus: out.mm = h; break;
    case Placement::MinusPlus: out.mp = h; break;
    case Placement::PlusMinus: out.pm = h; break;
    case Placement::PlusPlus: out.pp = h; break;
    case Placement::ConjugateSquare: {
        const PadicNumber t = h / a;
        out.mp = t * t;
        out.pm = out.mp;
        break;
    }
    }
    return out;
}

GibbsField periodic_field_from_orbit(const CayleyTree& tree, const Couplings& couplings,
                                     const std::vector<PadicNumber>& orbit, Placement placement,
                                     std::size_t depth) {
    if (orbit.empty()) throw DomainError("empty orbit");
    std::vector<HVector> classes;
    for (const PadicNumber& h : orbit) classes.push_back(place(placement, h, couplings.a()));
    return level_periodic_field(tree, classes, depth);
}

std::vector<PlacementCandidate> scan_placements(const CayleyTree& tree, const Couplings& couplings,
                                                const std::vector<PadicNumber>& orbit,
                                                std::size_t depth) {
    std::vector<PlacementCandidate> out;
    for (Placement pl : all_placements()) {
        GibbsField field = periodic_field_from_orbit(tree, couplings, orbit, pl, depth);
        SystemResidual res = system_residual(tree, couplings, field, depth);
        out.push_back({pl, std::move(field), std::move(res)});
    }
    return out;
}

std::vector<PlacementCandidate> valid_placements(const CayleyTree& tree, const Couplings& couplings,
                                                 const std::vector<PadicNumber>& orbit,
                                                 std::size_t depth) {
    std::vector<PlacementCandidate> all = scan_placements(tree, couplings, orbit, depth);
    std::vector<PlacementCandidate> valid;
    std::string diagnostics;
    for (PlacementCandidate& c : all) {
        diagnostics += " " + to_string(c.placement) + "=" + c.residual.worst.to_string();
        if (c.residual.holds) valid.push_back(std::move(c));
    }
    if (valid.empty())
        throw NoValidPlacement("no placement satisfies the product system; residuals:" + diagnostics);
    return valid;
}

bool is_level_periodic(const CayleyTree& tree, const GibbsField& field, std::size_t m,
                       std::size_t depth) {
    if (m == 0) throw DomainError("period must be positive");
    for (std::size_t dg = m; dg < depth; dg += m)
        for (const Vertex& g : tree.level(dg))
            for (std::size_t dx = 1; dg + dx <= depth; ++dx)
                for (const Vertex& x : tree.level(dx))
                    if (!(field.at(translate(g, x)) == field.at(x))) return false;
    return true;
}

} // namespace padyn
