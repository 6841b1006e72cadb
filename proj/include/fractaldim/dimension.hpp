#pragma once

#include "fractaldim/digit_fractal.hpp"
#include "fractaldim/ultrafilter.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fractaldim {

/// Strictly decreasing scale sequence eps_n -> 0, described by the digit
/// depth m(n) it induces: every-level walks m = 1, 2, 3, ...; block-ends
/// walks the ends of a partition's blocks (where the ratio extremes live).
class ScaleSequence {
public:
    enum class Kind { EveryLevel, BlockEnds, ExplicitEps };

    static ScaleSequence every_level();
    static ScaleSequence block_ends(std::shared_ptr<PartitionSchedule> part);
    /// Explicit positive scales, strictly decreasing; depths are taken
    /// against the schedule base via d^-(m+1) < eps <= d^-m.
    static ScaleSequence explicit_eps(std::vector<BigRat> eps, int base);

    BigInt depth_at(std::int64_t n) const;
    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::shared_ptr<PartitionSchedule>& partition() const { return part_; }

    /// Horizon that keeps term evaluation tractable: block-end depths grow
    /// super-factorially, so block-indexed sequences use a short horizon.
    std::int64_t default_horizon() const;

private:
    ScaleSequence() = default;
    Kind kind_ = Kind::EveryLevel;
    std::shared_ptr<PartitionSchedule> part_;
    std::vector<BigRat> eps_;
    int base_ = 2;
    std::string name_;
};

/// The ratio sequence n -> log_d count(m(eps_n)) / m(eps_n) as a bounded
/// sequence. Exact interval membership whenever the schedule's counts are
/// pure powers of the base.
SequencePtr ratio_sequence(const DigitSchedule& sched, const ScaleSequence& scales);

enum class Trivalent { Yes, No, Undetermined };

inline const char* trivalent_name(Trivalent t) {
    switch (t) {
        case Trivalent::Yes: return "yes";
        case Trivalent::No: return "no";
        default: return "undetermined";
    }
}

struct DimensionReport {
    double liminf_est = 0.0;
    double limsup_est = 0.0;
    Trivalent classical_exists = Trivalent::Undetermined;
    std::optional<double> qdim_value;
    std::string oracle_spec;
    std::int64_t depth_used = 0;
    std::string method; // "exact-schedule" | "boxcount-regression"
    std::optional<double> analytic_dim;
    std::optional<double> analytic_limsup;
    std::optional<double> analytic_liminf;
    double report_tol = 1e-4;
};

/// Windowed liminf/limsup of the ratio samples. Constant/Blocks/Explicit
/// schedules sample at m = 1..depth; partition schedules (and products with a
/// partition factor) sample at block-boundary depths, where the extremes
/// live. The tail window is the last half of the samples.
DimensionReport classical_dims(const DigitSchedule& sched, std::int64_t depth);

/// Nonstandard dimension: Q-limit of the ratio sequence along the scale
/// sequence under the oracle. Clamped to [0, ambient dimension].
double qdim(const DigitSchedule& sched, const ScaleSequence& scales, UltrafilterOracle& oracle,
            double tol);

struct ProductSummabilityReport {
    double qdim_a = 0.0, qdim_b = 0.0, qdim_product = 0.0;
    double qdim_discrepancy = 0.0;
    double tol = 0.0;
    bool qdim_identity_pass = false;
    Trivalent classical_exists_a = Trivalent::Undetermined;
    Trivalent classical_exists_b = Trivalent::Undetermined;
    double classical_a = 0.0, classical_b = 0.0, classical_product = 0.0;
    bool classical_applicable = false;
    double classical_discrepancy = 0.0;
    bool classical_identity_pass = true;
    std::optional<double> limsup_sum;     // limsup(a) + limsup(b), analytic when known
    std::optional<double> limsup_product; // analytic limsup of a x b
};

/// Verifies dim_Q(a x b) = dim_Q(a) + dim_Q(b) against one shared ledger and
/// reports the classical identity when both factors have classical limits.
ProductSummabilityReport product_summability_check(const DigitSchedule& a, const DigitSchedule& b,
                                                   const ScaleSequence& scales,
                                                   UltrafilterOracle& oracle, double tol,
                                                   std::int64_t classical_depth = 2000);

struct ContentRow {
    double s = 0.0;
    int trend = 0; // +1 diverging, -1 decreasing toward 0, 0 flat
};

struct ContentReport {
    std::vector<ContentRow> rows;
    bool has_lower = false, has_upper = false;
    double s_lo = 0.0; // largest s with diverging tail
    double s_hi = 0.0; // smallest s with non-diverging tail
    double transition_estimate = 0.0;
    double limsup_est = 0.0;
    bool bracket_contains_limsup = false;

    bool bracket_contains(double dim) const {
        // grid points accumulate float error, allow a hair of slack
        return (!has_lower || s_lo <= dim + 1e-9) && (!has_upper || dim <= s_hi + 1e-9);
    }
};

/// Outer-content scan: for each s in the grid, classifies the tail of
/// count(m) * (2 d^-m)^s as diverging or decreasing toward 0 and brackets the
/// zero transition, which sits at the upper Minkowski dimension.
ContentReport content_dimension_check(const DigitSchedule& sched, const std::vector<double>& s_grid,
                                      std::int64_t depth);

struct HausdorffBoundReport {
    double minkowski_upper = 0.0; // upper bound for the Hausdorff dimension
    std::optional<double> supplied_hausdorff;
    bool consistent = true;
};

/// The upper Minkowski dimension dominates the Hausdorff dimension; checks a
/// caller-supplied dim_H value against the windowed limsup.
HausdorffBoundReport hausdorff_bound_check(const DigitSchedule& sched, std::int64_t depth,
                                           std::optional<double> known_dim_h);

/// Oracle spec strings: "frechet" | "tail:even" | "tail:odd" |
/// "tail:blockends-A" | "tail:blockends-B" | "lazy". Block-end tails need a
/// partition (taken from the schedule) and adapt to the scale indexing.
UltrafilterOracle oracle_from_spec(const std::string& spec, const ScaleSequence& scales,
                                   std::shared_ptr<PartitionSchedule> part, OracleOptions opts);

} // namespace fractaldim
