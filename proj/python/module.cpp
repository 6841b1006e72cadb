// Python bindings for the main operations: schedule construction, exact
// ratios and counts, dimension reports, q-limits and the identity checks.

#include "fractaldim/dimension.hpp"
#include "fractaldim/estimator.hpp"
#include "fractaldim/schedule_json.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

namespace py = pybind11;
using namespace fractaldim;

namespace {

std::shared_ptr<PartitionSchedule> partition_of(const DigitSchedule& s) {
    if (s.kind() == DigitSchedule::Kind::Partition) return s.partition_schedule();
    if (s.kind() == DigitSchedule::Kind::Product) {
        auto a = partition_of(s.factor(0));
        return a ? a : partition_of(s.factor(1));
    }
    return nullptr;
}

ScaleSequence scales_for(const DigitSchedule& sched, const std::string& spec) {
    if (spec == "every-m") return ScaleSequence::every_level();
    if (spec == "block-ends") {
        auto part = partition_of(sched);
        if (!part) throw std::invalid_argument("block-ends scales need a partition schedule");
        return ScaleSequence::block_ends(part);
    }
    throw std::invalid_argument("unknown scales '" + spec + "'");
}

UltrafilterOracle build_oracle(const DigitSchedule& sched, const ScaleSequence& scales,
                               const std::string& spec, std::int64_t horizon) {
    OracleOptions opts;
    opts.horizon = horizon > 0 ? horizon : scales.default_horizon();
    return oracle_from_spec(spec, scales, partition_of(sched), opts);
}

py::dict report_to_dict(const DimensionReport& rep) {
    py::dict d;
    d["liminf_est"] = rep.liminf_est;
    d["limsup_est"] = rep.limsup_est;
    d["classical_exists"] = trivalent_name(rep.classical_exists);
    if (rep.qdim_value) {
        d["qdim"] = *rep.qdim_value;
        d["oracle"] = rep.oracle_spec;
    }
    d["depth_used"] = rep.depth_used;
    d["method"] = rep.method;
    if (rep.analytic_dim) d["analytic_dim"] = *rep.analytic_dim;
    if (rep.analytic_limsup) d["analytic_limsup"] = *rep.analytic_limsup;
    if (rep.analytic_liminf) d["analytic_liminf"] = *rep.analytic_liminf;
    return d;
}

PointCloud cloud_from_rows(const std::vector<std::vector<std::string>>& rows) {
    if (rows.empty()) throw std::invalid_argument("empty point list");
    PointCloud cloud(static_cast<int>(rows.front().size()));
    std::vector<Frac64> row;
    for (const auto& r : rows) {
        row.clear();
        for (const std::string& entry : r) row.push_back(Frac64::from_rational(parse_rational(entry)));
        cloud.add_point(row);
    }
    return cloud;
}

} // namespace

PYBIND11_MODULE(_fractaldim, m) {
    m.doc() = "exact, nonstandard and box-counting Minkowski dimensions for digit-restricted sets";

    py::class_<DigitSchedule>(m, "Schedule")
        .def_static("cantor", []() { return DigitSchedule::constant_digits(3, {0, 2}); },
                    "middle-thirds Cantor set: base 3, digits {0, 2}")
        .def_static("constant", &DigitSchedule::constant, py::arg("base"), py::arg("f"))
        .def_static("constant_digits", &DigitSchedule::constant_digits, py::arg("base"),
                    py::arg("digits"))
        .def_static("rational_dim", &make_rational_dim, py::arg("base"), py::arg("r"), py::arg("s"),
                    "blocks schedule with exact dimension r/s")
        .def_static("blocks_explicit", &DigitSchedule::blocks_explicit, py::arg("base"),
                    py::arg("block_len"), py::arg("allowed_strings"))
        .def_static(
            "ngrowth",
            [](int base, std::uint64_t seed_a, std::uint64_t seed_b, const std::string& role) {
                return DigitSchedule::partition(base, make_ngrowth(seed_a, seed_b),
                                                role == "B" ? PartitionRole::B : PartitionRole::A);
            },
            py::arg("base") = 10, py::arg("seed_a") = 1, py::arg("seed_b") = 1,
            py::arg("role") = "A")
        .def_static("product", &product_schedule, py::arg("a"), py::arg("b"))
        .def_static("from_json",
                    [](const std::string& text) { return schedule_from_json(nlohmann::json::parse(text)); })
        .def("to_json", [](const DigitSchedule& s) { return schedule_to_json(s).dump(2); })
        .def("describe", &DigitSchedule::describe)
        .def_property_readonly("base", &DigitSchedule::base)
        .def_property_readonly("ambient_dimension", &DigitSchedule::ambient_dimension)
        .def("ratio_log", [](const DigitSchedule& s, std::int64_t m) { return s.ratio_log(BigInt(m)); },
             py::arg("m"))
        .def("ratio",
             [](const DigitSchedule& s, std::int64_t m) { return rational_to_string(s.ratio(BigInt(m))); },
             py::arg("m"), "exact dimension-ratio sample as a fraction string")
        .def("covering_count",
             [](const DigitSchedule& s, std::int64_t m) {
                 return s.covering_count(BigInt(m)).value().str();
             },
             py::arg("m"), "exact covering count at scale base^-m, as a decimal string")
        .def("sample_points",
             [](const DigitSchedule& s, int depth, std::uint64_t cap) {
                 const PointCloud cloud = s.sample_points(depth, cap);
                 std::vector<std::vector<double>> pts(cloud.size());
                 for (std::size_t p = 0; p < cloud.size(); ++p) {
                     pts[p].resize(static_cast<std::size_t>(cloud.dimension()));
                     for (int ax = 0; ax < cloud.dimension(); ++ax)
                         pts[p][static_cast<std::size_t>(ax)] = cloud.coord(p, ax).to_double();
                 }
                 return pts;
             },
             py::arg("depth"), py::arg("cap") = std::uint64_t(1) << 22);

    m.def(
        "classical_dims",
        [](const DigitSchedule& s, std::int64_t depth) { return report_to_dict(classical_dims(s, depth)); },
        py::arg("schedule"), py::arg("depth") = 2000);

    m.def(
        "qdim",
        [](const DigitSchedule& s, const std::string& scales, const std::string& oracle, double tol,
           std::int64_t horizon) {
            const ScaleSequence sc = scales_for(s, scales);
            UltrafilterOracle orc = build_oracle(s, sc, oracle, horizon);
            return qdim(s, sc, orc, tol);
        },
        py::arg("schedule"), py::arg("scales") = "every-m", py::arg("oracle") = "lazy",
        py::arg("tol") = std::pow(2.0, -30), py::arg("horizon") = 0);

    m.def(
        "product_check",
        [](const DigitSchedule& a, const DigitSchedule& b, const std::string& scales,
           const std::string& oracle, double tol, std::int64_t classical_depth, std::int64_t horizon) {
            const ScaleSequence sc = scales_for(a, scales);
            auto part = partition_of(a);
            if (!part) part = partition_of(b);
            OracleOptions opts;
            opts.horizon = horizon > 0 ? horizon : sc.default_horizon();
            UltrafilterOracle orc = oracle_from_spec(oracle, sc, part, opts);
            const ProductSummabilityReport rep =
                product_summability_check(a, b, sc, orc, tol, classical_depth);
            py::dict d;
            d["qdim_a"] = rep.qdim_a;
            d["qdim_b"] = rep.qdim_b;
            d["qdim_product"] = rep.qdim_product;
            d["qdim_discrepancy"] = rep.qdim_discrepancy;
            d["qdim_identity_pass"] = rep.qdim_identity_pass;
            d["classical_applicable"] = rep.classical_applicable;
            if (rep.classical_applicable) {
                d["classical_discrepancy"] = rep.classical_discrepancy;
                d["classical_identity_pass"] = rep.classical_identity_pass;
            }
            if (rep.limsup_sum) d["limsup_sum"] = *rep.limsup_sum;
            if (rep.limsup_product) d["limsup_product"] = *rep.limsup_product;
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("scales") = "every-m", py::arg("oracle") = "lazy",
        py::arg("tol") = std::pow(2.0, -30), py::arg("classical_depth") = 2000,
        py::arg("horizon") = 0);

    m.def(
        "box_count",
        [](const DigitSchedule& s, int depth) {
            const PointCloud cloud = s.sample_points(depth, std::uint64_t(1) << 22);
            const int n_max =
                std::min(24, static_cast<int>(std::ceil(depth * std::log2(double(s.base())))) + 2);
            const ScaleTable table = scale_table(cloud, 0, n_max);
            const auto [lo, hi] = saturation_window(table, static_cast<std::int64_t>(cloud.size()));
            const SlopeFit fit = fit_dimension(table, lo, hi);
            py::dict d;
            d["slope"] = fit.slope;
            d["r_squared"] = fit.r_squared;
            d["window"] = py::make_tuple(fit.level_lo, fit.level_hi);
            d["points"] = cloud.size();
            std::vector<std::pair<int, std::int64_t>> rows;
            for (const auto& r : table.rows) rows.emplace_back(r.level, r.count);
            d["counts"] = rows;
            return d;
        },
        py::arg("schedule"), py::arg("depth") = 12);

    m.def(
        "content_check",
        [](const DigitSchedule& s, double grid_step, std::int64_t depth) {
            std::vector<double> grid;
            for (double v = 0.0; v <= s.ambient_dimension() + 1e-12; v += grid_step) grid.push_back(v);
            const ContentReport rep = content_dimension_check(s, grid, depth);
            py::dict d;
            d["s_lo"] = rep.s_lo;
            d["s_hi"] = rep.s_hi;
            d["transition_estimate"] = rep.transition_estimate;
            d["limsup_est"] = rep.limsup_est;
            d["bracket_contains_limsup"] = rep.bracket_contains_limsup;
            return d;
        },
        py::arg("schedule"), py::arg("grid_step") = 0.01, py::arg("depth") = 1000);

    m.def(
        "dyadic_count",
        [](const std::vector<std::vector<std::string>>& rows, const std::string& eps) {
            return dyadic_count(cloud_from_rows(rows), parse_rational(eps));
        },
        py::arg("points"), py::arg("eps"),
        "occupied dyadic cells of exact rational points at scale eps");

    m.def(
        "sandwich_check",
        [](const std::vector<std::vector<std::string>>& rows, const std::string& eps) {
            const SandwichReport rep = sandwich_check(cloud_from_rows(rows), parse_rational(eps));
            py::dict d;
            d["ball_cover"] = rep.ball_cover;
            d["cube_cover"] = rep.cube_cover;
            d["cell_count"] = rep.cell_count;
            d["pass"] = rep.pass;
            return d;
        },
        py::arg("points"), py::arg("eps"));

    m.def(
        "qlim",
        [](const std::function<double(std::int64_t)>& term, double lo, double hi,
           const std::string& oracle, double tol, std::int64_t horizon) {
            const SequencePtr seq = BoundedSequence::from_double("py", term, lo, hi);
            OracleOptions opts;
            opts.horizon = horizon;
            const ScaleSequence sc = ScaleSequence::every_level();
            UltrafilterOracle orc = oracle_from_spec(oracle, sc, nullptr, opts);
            return qlim(seq, orc, tol);
        },
        py::arg("term"), py::arg("lo"), py::arg("hi"), py::arg("oracle") = "lazy",
        py::arg("tol") = 1e-9, py::arg("horizon") = 100000,
        "nested-interval Q-limit of a bounded python sequence");
}
