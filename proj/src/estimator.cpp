#include "fractaldim/estimator.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace fractaldim {

const ScaleTable::Row& ScaleTable::at_level(int level) const {
    for (const Row& r : rows)
        if (r.level == level) return r;
    throw std::out_of_range("ScaleTable: no row for level " + std::to_string(level));
}

void ScaleTable::save_csv(std::ostream& out) const {
    out << "level,eps,count\n";
    for (const Row& r : rows) {
        out << r.level << ",";
        if (r.level > 0)
            out << "1/" << pow_big(BigInt(2), static_cast<unsigned long>(r.level)).str();
        else
            out << pow_big(BigInt(2), static_cast<unsigned long>(-r.level)).str();
        out << "," << r.count << "\n";
    }
}

ScaleTable ScaleTable::load_csv(std::istream& in) {
    ScaleTable table;
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!saw_header) {
            saw_header = true;
            continue;
        }
        std::stringstream ss(line);
        std::string level_s, eps_s, count_s;
        if (!std::getline(ss, level_s, ',') || !std::getline(ss, eps_s, ',') ||
            !std::getline(ss, count_s, ','))
            throw std::invalid_argument("scale-table CSV: malformed row");
        Row r;
        r.level = std::stoi(level_s);
        r.count = std::stoll(count_s);
        table.rows.push_back(r);
    }
    if (!saw_header) throw std::invalid_argument("scale-table CSV: missing header");
    return table;
}

ScaleTable scale_table(const PointCloud& cloud, int n_min, int n_max) {
    if (cloud.empty()) throw std::domain_error("scale_table: empty cloud");
    if (n_min > n_max) throw std::domain_error("scale_table: need n_min <= n_max");
    if (n_max > 60)
        throw ResourceError("scale_table: level " + std::to_string(n_max) +
                            " exceeds the exact integer-key budget (60)");
    ScaleTable table;
    table.rows.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n)
        table.rows.push_back({n, dyadic_count_at_level(cloud, n)});
    return table;
}

SlopeFit fit_dimension(const ScaleTable& table, int level_lo, int level_hi) {
    std::vector<double> xs, ys;
    for (const auto& r : table.rows) {
        if (r.level < level_lo || r.level > level_hi) continue;
        if (r.count < 1) throw std::domain_error("fit_dimension: nonpositive count");
        xs.push_back(static_cast<double>(r.level) * std::log(2.0));
        ys.push_back(std::log(static_cast<double>(r.count)));
    }
    if (xs.size() < 3)
        throw FitWindowError("fit_dimension: window [" + std::to_string(level_lo) + "," +
                             std::to_string(level_hi) + "] has fewer than 3 usable levels");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
    }
    const double var_x = sxx - sx * sx / n;
    const double cov = sxy - sx * sy / n;
    const double var_y = syy - sy * sy / n;
    SlopeFit fit;
    fit.level_lo = level_lo;
    fit.level_hi = level_hi;
    fit.slope = cov / var_x;
    fit.intercept = (sy - fit.slope * sx) / n;
    if (var_y <= 0) {
        fit.r_squared = 1.0; // constant counts fit the flat line exactly
    } else {
        const double ss_res = var_y - fit.slope * cov;
        fit.r_squared = std::max(0.0, 1.0 - ss_res / var_y);
    }
    return fit;
}

std::pair<int, int> saturation_window(const ScaleTable& table, std::int64_t cloud_size) {
    if (table.rows.empty()) throw std::domain_error("saturation_window: empty table");
    // count < size^0.9 tested exactly as count^10 < size^9
    const BigInt size_pow = pow_big(BigInt(cloud_size), 9);
    int lo = 0, hi = -1;
    bool found = false;
    // counts are monotone in the level, so the admissible set is one run
    for (const auto& r : table.rows) {
        const bool ok = r.count > 2 && pow_big(BigInt(r.count), 10) < size_pow;
        if (ok) {
            if (!found) {
                lo = r.level;
                found = true;
            }
            hi = r.level;
        } else if (found) {
            break;
        }
    }
    if (!found)
        throw FitWindowError("saturation_window: no level with 2 < count < size^0.9; "
                             "sample deeper or add coarser levels");
    return {lo, hi};
}

} // namespace fractaldim
