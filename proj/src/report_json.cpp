#include "padyn/report_json.hpp"

namespace padyn {

using nlohmann::json;

namespace {

json optional_bool(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

json spins(const Configuration& s) {
    json out = json::array();
    for (int v : s) out.push_back(v);
    return out;
}

} // namespace

json to_json(const PNorm& norm) { return norm.to_string(); }

json to_json(const Ball& ball) {
    return {{"center", to_json(ball.center)},
            {"radius_exponent", ball.radius_exponent},
            {"closed", ball.closed}};
}

json to_json(const FixedPointLemma& lemma) {
    return {{"i", lemma.i},
            {"ii", optional_bool(lemma.ii)},
            {"iii", optional_bool(lemma.iii)},
            {"iii_value", lemma.iii_value ? to_json(*lemma.iii_value) : json(nullptr)},
            {"iv", lemma.iv},
            {"v", optional_bool(lemma.v)},
            {"vi", optional_bool(lemma.vi)},
            {"vii", optional_bool(lemma.vii)},
            {"all_hold", lemma.all_hold()}};
}

json to_json(const FixedPointReport& report) {
    json out{{"x0", to_json(report.x0)},
             {"x0_kind", std::string(to_string(report.x0_kind))},
             {"delta", to_json(report.delta)},
             {"delta_is_square", report.roots.has_value()},
             {"iterations", report.iterations},
             {"lemma", to_json(report.lemma)}};
    if (report.roots) {
        out["x1"] = to_json(report.roots->first);
        out["x2"] = to_json(report.roots->second);
        out["x1_kind"] = std::string(to_string(report.root_kinds->first));
        out["x2_kind"] = std::string(to_string(report.root_kinds->second));
    } else {
        out["x1"] = nullptr;
        out["x2"] = nullptr;
    }
    return out;
}

json to_json(const BasinStatus& status) {
    json out{{"outcome", status.outcome == BasinOutcome::InBasin ? "InBasin" : "StaysInK"},
             {"steps", status.steps},
             {"trail", status.trail}};
    out["converged_after"] = status.converged_after ? json(*status.converged_after) : json(nullptr);
    out["cycle_length"] = status.cycle_length ? json(*status.cycle_length) : json(nullptr);
    return out;
}

json to_json(const RepellerGeometry& g) {
    return {{"alpha1", to_json(g.alpha1)},
            {"alpha2", to_json(g.alpha2)},
            {"x1", to_json(g.x1)},
            {"x2", to_json(g.x2)},
            {"ball1", to_json(g.ball(1))},
            {"ball2", to_json(g.ball(2))},
            {"r", to_json(g.r)},
            {"b_order", g.b_order},
            {"expansion_exponent", g.expansion_exponent},
            {"kappa", g.kappa}};
}

json to_json(const HVector& h) {
    return {{"--", to_json(h.mm)}, {"-+", to_json(h.mp)}, {"+-", to_json(h.pm)}, {"++", to_json(h.pp)}};
}

json to_json(const SystemResidual& residual) {
    json out{{"holds", residual.holds}, {"worst_residual", to_json(residual.worst)}};
    if (!residual.note.empty()) out["note"] = residual.note;
    return out;
}

json to_json(const CompatibilityReport& report, bool with_entries) {
    json out{{"compatible", report.compatible},
             {"worst_residual", to_json(report.worst)},
             {"base_configurations", report.base_configurations},
             {"boundary_configurations", report.boundary_configurations}};
    if (report.precision_exhausted) out["precision_exhausted"] = true;
    if (!report.note.empty()) out["note"] = report.note;
    if (with_entries) {
        json entries = json::array();
        for (const CompatibilityEntry& e : report.entries)
            entries.push_back({{"sigma", spins(e.sigma)},
                               {"residual", to_json(e.residual)},
                               {"ok", e.ok}});
        out["entries"] = std::move(entries);
    }
    return out;
}

} // namespace padyn
