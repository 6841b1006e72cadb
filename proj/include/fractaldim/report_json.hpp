#pragma once

#include "fractaldim/dimension.hpp"
#include "fractaldim/estimator.hpp"
#include "fractaldim/schedule_json.hpp"

#include <json.hpp>

namespace fractaldim {

inline nlohmann::ordered_json dimension_report_json(const DimensionReport& rep) {
    nlohmann::ordered_json j;
    j["liminf_est"] = rep.liminf_est;
    j["limsup_est"] = rep.limsup_est;
    j["classical_exists"] = trivalent_name(rep.classical_exists);
    if (rep.qdim_value) {
        j["qdim"] = *rep.qdim_value;
        j["oracle"] = rep.oracle_spec;
    }
    j["depth_used"] = rep.depth_used;
    j["method"] = rep.method;
    if (rep.analytic_dim) j["analytic_dim"] = *rep.analytic_dim;
    if (rep.analytic_limsup) j["analytic_limsup"] = *rep.analytic_limsup;
    if (rep.analytic_liminf) j["analytic_liminf"] = *rep.analytic_liminf;
    j["report_tol"] = rep.report_tol;
    return j;
}

inline nlohmann::ordered_json product_report_json(const ProductSummabilityReport& rep) {
    nlohmann::ordered_json j;
    j["qdim_a"] = rep.qdim_a;
    j["qdim_b"] = rep.qdim_b;
    j["qdim_product"] = rep.qdim_product;
    j["qdim_discrepancy"] = rep.qdim_discrepancy;
    j["tol"] = rep.tol;
    j["qdim_identity_pass"] = rep.qdim_identity_pass;
    j["classical_exists_a"] = trivalent_name(rep.classical_exists_a);
    j["classical_exists_b"] = trivalent_name(rep.classical_exists_b);
    j["classical_a"] = rep.classical_a;
    j["classical_b"] = rep.classical_b;
    j["classical_applicable"] = rep.classical_applicable;
    if (rep.classical_applicable) {
        j["classical_product"] = rep.classical_product;
        j["classical_discrepancy"] = rep.classical_discrepancy;
        j["classical_identity_pass"] = rep.classical_identity_pass;
    }
    if (rep.limsup_sum) j["limsup_sum"] = *rep.limsup_sum;
    if (rep.limsup_product) j["limsup_product"] = *rep.limsup_product;
    return j;
}

inline nlohmann::ordered_json content_report_json(const ContentReport& rep) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const ContentRow& r : rep.rows) {
        rows.push_back({{"s", r.s},
                        {"tail", r.trend > 0 ? "diverging" : (r.trend < 0 ? "to-zero" : "flat")}});
    }
    j["rows"] = rows;
    if (rep.has_lower) j["s_lo"] = rep.s_lo;
    if (rep.has_upper) j["s_hi"] = rep.s_hi;
    j["transition_estimate"] = rep.transition_estimate;
    j["limsup_est"] = rep.limsup_est;
    j["bracket_contains_limsup"] = rep.bracket_contains_limsup;
    return j;
}

inline nlohmann::ordered_json slope_fit_json(const SlopeFit& fit) {
    nlohmann::ordered_json j;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["r_squared"] = fit.r_squared;
    j["window"] = {{"level_lo", fit.level_lo}, {"level_hi", fit.level_hi}};
    return j;
}

inline nlohmann::ordered_json ledger_json(const UltrafilterOracle& oracle) {
    nlohmann::ordered_json j;
    j["oracle"] = oracle.spec_name();
    j["horizon"] = oracle.horizon();
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const LedgerEntry& e : oracle.ledger()) {
        nlohmann::ordered_json item;
        item["mode"] = e.mode;
        if (e.is_preimage) {
            item["sequence"] = e.seq_name;
            item["interval"] = e.interval.to_string();
        } else {
            item["set"] = e.description;
        }
        entries.push_back(item);
    }
    j["committed"] = entries;
    return j;
}

inline nlohmann::ordered_json audit_report_json(const AuditReport& rep) {
    nlohmann::ordered_json j;
    j["checks"] = rep.checks;
    j["violations"] = rep.violations;
    j["clean"] = rep.clean();
    return j;
}

} // namespace fractaldim
