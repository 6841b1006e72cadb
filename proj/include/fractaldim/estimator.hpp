#pragma once

#include "fractaldim/dyadic_cover.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace fractaldim {

/// Occupied-cell counts across dyadic levels. Counts are nondecreasing in the
/// level and reach 1 at level 0 for data in [0,1]^k.
struct ScaleTable {
    struct Row {
        int level = 0;
        std::int64_t count = 0;
    };
    std::vector<Row> rows;

    const Row& at_level(int level) const;
    /// CSV columns level,eps,count with eps as the exact fraction 1/2^n.
    void save_csv(std::ostream& out) const;
    static ScaleTable load_csv(std::istream& in);
};

/// One occupied-cell count per level in [n_min, n_max]. Exact integer keys;
/// cost is one pass over the cloud per level.
ScaleTable scale_table(const PointCloud& cloud, int n_min, int n_max);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int level_lo = 0;
    int level_hi = 0;
};

/// Ordinary least squares of log count against log(1/eps) = n log 2 over the
/// window; the slope estimates the box-counting dimension.
SlopeFit fit_dimension(const ScaleTable& table, int level_lo, int level_hi);

/// Largest level range with 2 < count < cloud_size^0.9: drops the trivial
/// coarse levels and the fine levels where a finite sample saturates.
std::pair<int, int> saturation_window(const ScaleTable& table, std::int64_t cloud_size);

} // namespace fractaldim
