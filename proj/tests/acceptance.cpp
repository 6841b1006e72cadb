// Acceptance suite: one binary, one criterion per --criterion invocation,
// one PASS/FAIL line per criterion with the measured quantities. Exit code is
// the number of failed criteria.

#include "fractaldim/dimension.hpp"
#include "fractaldim/estimator.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

using namespace fractaldim;

namespace {

const double kLog32 = std::log(2.0) / std::log(3.0);

struct Outcome {
    bool pass = false;
    std::string details;
};

OracleOptions horizon_opts(std::int64_t h) {
    OracleOptions o;
    o.horizon = h;
    return o;
}

// ---------------------------------------------------------------------------
// 1. exact rational dimension: ratio_log at m = 100 s equals r/s to 1e-12
// ---------------------------------------------------------------------------

Outcome criterion_1() {
    std::mt19937_64 rng(10001);
    std::uniform_int_distribution<int> d_dist(2, 10), s_dist(1, 6);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int d = d_dist(rng);
        const int s = s_dist(rng);
        std::uniform_int_distribution<int> r_dist(1, s);
        const int r = r_dist(rng);
        const DigitSchedule sched = make_rational_dim(d, r, s);
        const double got = sched.ratio_log(BigInt(100 * s));
        const double want = static_cast<double>(r) / static_cast<double>(s);
        worst = std::max(worst, std::abs(got - want));
    }
    Outcome out;
    out.pass = worst <= 1e-12;
    std::ostringstream os;
    os << "50 random (d,r,s), worst |ratio_log(100s) - r/s| = " << worst << " (tol 1e-12)";
    out.details = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// 2. degrees-of-freedom formula: Cantor slope and exact report
// ---------------------------------------------------------------------------

Outcome criterion_2() {
    const DigitSchedule cantor = DigitSchedule::constant_digits(3, {0, 2});
    const PointCloud cloud = cantor.sample_points(12, 1 << 22);
    const ScaleTable table = scale_table(cloud, 0, 19);
    const auto [lo, hi] = saturation_window(table, static_cast<std::int64_t>(cloud.size()));
    const SlopeFit fit = fit_dimension(table, lo, hi);
    const double slope_err = std::abs(fit.slope - kLog32);

    const DimensionReport rep = classical_dims(cantor, 10000);
    const double exact_err = std::abs(rep.limsup_est - kLog32);

    Outcome out;
    out.pass = slope_err <= 0.02 && exact_err <= 1e-6 && rep.classical_exists == Trivalent::Yes;
    std::ostringstream os;
    os << "depth-12 slope " << fit.slope << " (err " << slope_err << ", tol 0.02); exact report err "
       << exact_err << " (tol 1e-6)";
    out.details = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// 3. standard product-summability on 30 random classically-convergent pairs
// ---------------------------------------------------------------------------

namespace c3 {

// random schedule whose classical dimension exists and whose depth-10 sample
// stays between 32 and 1500 points (so box-count fits have a usable window)
DigitSchedule random_schedule(std::mt19937_64& rng, int base) {
    for (;;) {
        std::uniform_int_distribution<int> kind(0, 2);
        DigitSchedule sched = [&]() {
            switch (kind(rng)) {
                case 0: return DigitSchedule::constant(base, 2);
                default: {
                    std::uniform_int_distribution<int> s_dist(1, 4);
                    const int s = s_dist(rng);
                    std::uniform_int_distribution<int> r_dist(1, s);
                    return DigitSchedule::blocks(base, s, r_dist(rng));
                }
            }
        }();
        const BigInt count = sched.covering_count(BigInt(10)).value();
        if (count >= 32 && count <= 1500) return sched;
    }
}

} // namespace c3

Outcome criterion_3() {
    std::mt19937_64 rng(30003);
    std::uniform_int_distribution<int> base_dist(2, 5);
    double worst_exact = 0.0, worst_slope = 0.0;
    int pairs = 0;
    while (pairs < 30) {
        const int base = base_dist(rng);
        const DigitSchedule a = c3::random_schedule(rng, base);
        const DigitSchedule b = c3::random_schedule(rng, base);
        const BigInt budget =
            a.covering_count(BigInt(10)).value() * b.covering_count(BigInt(10)).value();
        if (budget > 800000) continue;
        ++pairs;
        const DigitSchedule prod = product_schedule(a, b);

        // exact reports: block-aligned depth, where the ratio equals the limit
        const int align = 100 * a.block_len() * b.block_len();
        const double dim_a = a.ratio_log(BigInt(align));
        const double dim_b = b.ratio_log(BigInt(align));
        const double dim_ab = prod.ratio_log(BigInt(align));
        worst_exact = std::max(worst_exact, std::abs(dim_ab - dim_a - dim_b));

        // box-count slopes at depth 10 over a shared window
        const PointCloud pa = a.sample_points(10, 1 << 22);
        const PointCloud pb = b.sample_points(10, 1 << 22);
        const PointCloud pab = product_cloud(pa, pb);
        const int n_max = std::min(20, static_cast<int>(std::ceil(10 * std::log2(base))) + 2);
        const ScaleTable ta = scale_table(pa, 0, n_max);
        const ScaleTable tb = scale_table(pb, 0, n_max);
        const ScaleTable tab = scale_table(pab, 0, n_max);
        const auto wa = saturation_window(ta, static_cast<std::int64_t>(pa.size()));
        const auto wb = saturation_window(tb, static_cast<std::int64_t>(pb.size()));
        const auto wab = saturation_window(tab, static_cast<std::int64_t>(pab.size()));
        const int lo = std::max({wa.first, wb.first, wab.first});
        const int hi = std::min({wa.second, wb.second, wab.second});
        const double sa = fit_dimension(ta, lo, hi).slope;
        const double sb = fit_dimension(tb, lo, hi).slope;
        const double sab = fit_dimension(tab, lo, hi).slope;
        worst_slope = std::max(worst_slope, std::abs(sab - sa - sb));
    }
    Outcome out;
    out.pass = worst_exact <= 1e-9 && worst_slope <= 0.05;
    std::ostringstream os;
    os << "30 pairs: worst exact discrepancy " << worst_exact << " (tol 1e-9), worst slope discrepancy "
       << worst_slope << " (tol 0.05)";
    out.details = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// 4. the partition counterexample at 8 block pairs
// ---------------------------------------------------------------------------

Outcome criterion_4() {
    auto part = make_ngrowth(1, 1);
    const DigitSchedule a = DigitSchedule::partition(10, part, PartitionRole::A);
    const DigitSchedule b = DigitSchedule::partition(10, part, PartitionRole::B);
    const DigitSchedule prod = product_schedule(a, b);

    const DimensionReport ra = classical_dims(a, 16); // 8 block pairs
    const DimensionReport rb = classical_dims(b, 16);
    const bool limsup_gate = ra.limsup_est >= 0.95 && rb.limsup_est >= 0.95;

    bool product_exact = true;
    for (std::int64_t m = 1; m <= 1200 && product_exact; ++m)
        product_exact = prod.ratio(BigInt(m)) == 1;
    for (std::size_t i = 0; i < 16 && product_exact; ++i)
        product_exact = prod.ratio(part->block_end(i)) == 1;

    const bool exhibition = a.analytic_limsup() && b.analytic_limsup() &&
                            *a.analytic_limsup() + *b.analytic_limsup() == 2.0 &&
                            prod.analytic_dimension() && *prod.analytic_dimension() == 1.0;

    // deeper run: the 0.95 threshold needs about 20 block pairs under this
    // growth rule (the windowed maxima at 8 pairs cap near 0.89)
    const DimensionReport ra20 = classical_dims(a, 40);
    const DimensionReport rb20 = classical_dims(b, 40);

    Outcome out;
    out.pass = limsup_gate && product_exact && exhibition;
    std::ostringstream os;
    os << std::setprecision(6) << "8 pairs: limsup_A " << ra.limsup_est << ", limsup_B "
       << rb.limsup_est << " vs threshold 0.95 " << (limsup_gate ? "(met)" : "(NOT met)")
       << "; product ratio == 1 exactly: " << (product_exact ? "yes" : "NO")
       << "; limsup sum 2 vs product 1: " << (exhibition ? "exhibited" : "NO");
    if (!limsup_gate)
        os << " | note: the growth rule caps the 8-pair windowed maxima near 0.89; at 20 pairs "
           << "limsup_A " << ra20.limsup_est << ", limsup_B " << rb20.limsup_est
           << " do clear 0.95";
    out.details = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// 5 and 6. nonstandard product-summability and the complement identity
// ---------------------------------------------------------------------------

struct JointRun {
    std::string oracle, scales;
    double qa = 0, qb = 0, qab = 0;
};

std::vector<JointRun> falconer_joint_runs(double tol) {
    auto part = make_ngrowth(1, 1);
    const DigitSchedule a = DigitSchedule::partition(10, part, PartitionRole::A);
    const DigitSchedule b = DigitSchedule::partition(10, part, PartitionRole::B);
    const DigitSchedule prod = product_schedule(a, b);
    std::vector<JointRun> runs;
    for (const std::string scale_name : {"every-m", "block-ends"}) {
        const ScaleSequence scales =
            scale_name == "every-m" ? ScaleSequence::every_level() : ScaleSequence::block_ends(part);
        for (const std::string spec : {"tail:blockends-A", "tail:blockends-B", "lazy"}) {
            UltrafilterOracle oracle =
                oracle_from_spec(spec, scales, part, horizon_opts(scales.default_horizon()));
            const auto vals = qlim_joint(
                {ratio_sequence(a, scales), ratio_sequence(b, scales), ratio_sequence(prod, scales)},
                oracle, tol);
            runs.push_back({spec, scale_name, vals[0], vals[1], vals[2]});
        }
    }
    return runs;
}

Outcome criterion_5() {
    const double tol = std::pow(2.0, -30);
    double worst = 0.0;
    std::string worst_at;
    for (const JointRun& r : falconer_joint_runs(tol)) {
        const double disc = std::abs(r.qab - r.qa - r.qb);
        if (disc > worst) {
            worst = disc;
            worst_at = r.oracle + " x " + r.scales;
        }
    }
    Outcome out;
    out.pass = worst <= 2 * tol;
    std::ostringstream os;
    os << "6 oracle/scale combinations, worst |qdim(AxB) - qdim(A) - qdim(B)| = " << worst
       << " (tol 2^-29" << (worst_at.empty() ? "" : ", worst at " + worst_at) << ")";
    out.details = os.str();
    return out;
}

Outcome criterion_6() {
    const double tol = std::pow(2.0, -30);
    double worst = 0.0;
    for (const JointRun& r : falconer_joint_runs(tol))
        worst = std::max(worst, std::abs(r.qb - (1.0 - r.qa)));
    Outcome out;
    out.pass = worst <= 2 * tol;
    std::ostringstream os;
    os << "6 shared ledgers, worst |qdim(B) - (1 - qdim(A))| = " << worst << " (tol 2^-29)";
    out.details = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// 7. q-limit contracts on seeded random sequences
// ---------------------------------------------------------------------------

namespace c7 {

SequencePtr random_sequence(std::mt19937_64& rng, double* limit) {
    std::uniform_int_distribution<int> kind_dist(0, 3);
    std::uniform_real_distribution<double> c_dist(-1.0, 1.0);
    const int kind = kind_dist(rng);
    const double c = c_dist(rng);
    const double amp = 0.25 + 0.5 * std::abs(c_dist(rng));
    if (limit) *limit = std::nan("");
    switch (kind) {
        case 0: { // geometric decay: classically convergent
            const double rho = 0.4 + 0.5 * std::abs(c_dist(rng));
            if (limit) *limit = c;
            return BoundedSequence::from_double(
                "geom", [c, amp, rho](std::int64_t n) {
                    return c + amp * std::pow(rho, static_cast<double>(std::min<std::int64_t>(n, 3000)));
                },
                c - amp - 1.0, c + amp + 1.0);
        }
        case 1:
            return BoundedSequence::from_double(
                "osc", [c, amp](std::int64_t n) { return c + (n % 2 ? -amp : amp); }, c - amp - 1.0,
                c + amp + 1.0);
        case 2:
            return BoundedSequence::from_double(
                "chaos", [](std::int64_t n) {
                    double x = 0.2 + 0.6 * static_cast<double>(n % 23) / 23.0;
                    for (int i = 0; i < 11; ++i) x = 3.89 * x * (1.0 - x);
                    return x;
                },
                -0.5, 1.5);
        default: {
            const double v0 = c - amp, v1 = c, v2 = c + amp;
            return BoundedSequence::from_double(
                "periodic", [v0, v1, v2](std::int64_t n) {
                    return n % 3 == 0 ? v0 : (n % 3 == 1 ? v1 : v2);
                },
                c - amp - 1.0, c + amp + 1.0);
        }
    }
}

} // namespace c7

Outcome criterion_7() {
    const double tol = std::pow(2.0, -40);
    const std::int64_t horizon = 100000;
    std::mt19937_64 rng(70007);
    double worst_limit = 0.0, worst_cluster = 0.0, worst_add = 0.0;
    int convergent_seen = 0;

    for (int trial = 0; trial < 200; ++trial) {
        double limit = std::nan("");
        const SequencePtr seq = c7::random_sequence(rng, &limit);
        UltrafilterOracle oracle = UltrafilterOracle::lazy_bisect(horizon_opts(horizon));
        const double q = qlim(seq, oracle, tol);
        if (!std::isnan(limit)) {
            ++convergent_seen;
            worst_limit = std::max(worst_limit, std::abs(q - limit));
        }
        double best = 1e18;
        for (std::int64_t n : oracle.members_up_to(oracle.horizon()))
            best = std::min(best, std::abs(seq->value(n) - q));
        worst_cluster = std::max(worst_cluster, best);
    }

    for (int pair = 0; pair < 100; ++pair) {
        const SequencePtr a = c7::random_sequence(rng, nullptr);
        const SequencePtr b = c7::random_sequence(rng, nullptr);
        auto av = a, bv = b;
        const SequencePtr sum = BoundedSequence::from_double(
            "sum", [av, bv](std::int64_t n) { return av->value(n) + bv->value(n); },
            rat_to_double(a->lo()) + rat_to_double(b->lo()),
            rat_to_double(a->hi()) + rat_to_double(b->hi()));
        UltrafilterOracle oracle = UltrafilterOracle::lazy_bisect(horizon_opts(horizon));
        const auto vals = qlim_joint({a, b, sum}, oracle, tol);
        worst_add = std::max(worst_add, std::abs(vals[2] - vals[0] - vals[1]));
    }

    Outcome out;
    out.pass = worst_limit <= tol && worst_cluster <= tol && worst_add <= 2 * tol &&
               convergent_seen >= 30;
    std::ostringstream os;
    os << "200 sequences (" << convergent_seen << " convergent): worst |qlim - limit| = "
       << worst_limit << ", worst cluster distance = " << worst_cluster
       << "; 100 pairs: worst additivity = " << worst_add << " (tol 2^-40 / 2^-39)";
    out.details = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// 8. oracle axiom audit per oracle kind
// ---------------------------------------------------------------------------

Outcome criterion_8() {
    std::ostringstream os;
    bool all_clean = true;
    auto part = make_ngrowth(1, 1);
    const ScaleSequence scales = ScaleSequence::every_level();
    const DigitSchedule a10 = DigitSchedule::partition(10, part, PartitionRole::A);

    for (const std::string spec :
         {"frechet", "tail:even", "tail:odd", "tail:blockends-A", "tail:blockends-B", "lazy"}) {
        std::vector<SequencePtr> seqs;
        seqs.push_back(BoundedSequence::from_double(
            "alternating", [](std::int64_t n) { return n % 2 ? -1.0 : 1.0; }, -1.5, 1.5));
        seqs.push_back(BoundedSequence::from_double(
            "drift", [](std::int64_t n) { return 1.0 / (1.0 + static_cast<double>(n % 1000)); },
            -0.5, 1.5));
        seqs.push_back(ratio_sequence(a10, scales));

        UltrafilterOracle oracle = oracle_from_spec(spec, scales, part, horizon_opts(100000));
        std::mt19937_64 rng(80000 + fnv1a64(spec) % 1000);
        std::uniform_real_distribution<double> unif(-1.4, 1.4);
        std::uniform_int_distribution<std::size_t> pick(0, seqs.size() - 1);
        for (int q = 0; q < 500; ++q) {
            double x = unif(rng), y = unif(rng);
            if (x > y) std::swap(x, y);
            if (x == y) y += 0.25;
            oracle.is_large(IndexSet::preimage(seqs[pick(rng)], SeqInterval(BigRat(x), BigRat(y), false)));
        }

        const bool empty_small = oracle.is_large(IndexSet::empty_set()) == Largeness::Small;
        std::vector<std::int64_t> first;
        for (std::int64_t n = 1; n <= 64; ++n) first.push_back(n);
        const bool finite_small = oracle.is_large(IndexSet::finite(first)) == Largeness::Small;

        const AuditReport rep = axiom_audit(oracle);
        const bool clean = rep.clean() && empty_small && finite_small;
        all_clean = all_clean && clean;
        os << spec << ":" << (clean ? "clean" : "VIOLATIONS") << "(" << rep.checks << " checks) ";
        if (!rep.violations.empty()) os << "[" << rep.violations.front() << "] ";
    }
    Outcome out;
    out.pass = all_clean;
    out.details = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// 9. dyadic sandwich on 1000 random clouds
// ---------------------------------------------------------------------------

Outcome criterion_9() {
    std::mt19937_64 rng(90009);
    std::uniform_int_distribution<int> size_dist(1, 200);
    std::uniform_int_distribution<std::int64_t> num_dist(0, (1LL << 26));
    std::int64_t checked = 0, failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        PointCloud cloud(1);
        const int n = size_dist(rng);
        for (int i = 0; i < n; ++i)
            cloud.add_point_1d(Frac64::from_rational(BigRat(num_dist(rng), 1LL << 26)));
        for (int level = 0; level <= 12; ++level) {
            const SandwichReport rep = sandwich_check(
                cloud, BigRat(BigInt(1), pow_big(BigInt(2), static_cast<unsigned long>(level))));
            ++checked;
            if (!rep.pass) ++failures;
        }
    }
    Outcome out;
    out.pass = failures == 0;
    std::ostringstream os;
    os << checked << " cloud/level sandwiches (N <= S <= 2N exact), failures: " << failures;
    out.details = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// 10. outer-content bracket around the exact dimension
// ---------------------------------------------------------------------------

Outcome criterion_10() {
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(static_cast<double>(i) * 0.01);
    struct Case {
        DigitSchedule sched;
        double dim;
        const char* name;
    };
    const std::vector<Case> cases{
        {DigitSchedule::constant_digits(3, {0, 2}), kLog32, "cantor"},
        {make_rational_dim(2, 1, 2), 0.5, "blocks(2,1,2)"},
        {make_rational_dim(3, 2, 3), 2.0 / 3.0, "blocks(3,2,3)"},
        {make_rational_dim(5, 3, 4), 0.75, "blocks(5,3,4)"},
    };
    bool all = true;
    std::ostringstream os;
    for (const Case& c : cases) {
        const ContentReport rep = content_dimension_check(c.sched, grid, 1000);
        const bool ok = rep.bracket_contains(c.dim) && rep.bracket_contains_limsup;
        all = all && ok;
        os << c.name << ":[" << rep.s_lo << "," << rep.s_hi << "]" << (ok ? " ok " : " MISS ");
    }
    Outcome out;
    out.pass = all;
    out.details = os.str();
    return out;
}

// ---------------------------------------------------------------------------
// 11. covering multiplicativity on 100 random cloud pairs
// ---------------------------------------------------------------------------

Outcome criterion_11() {
    std::mt19937_64 rng(110011);
    std::uniform_int_distribution<int> dim_dist(1, 3), size_dist(1, 200);
    std::uniform_int_distribution<std::int64_t> num_dist(0, (1LL << 20));
    auto random_cloud = [&](int k) {
        PointCloud cloud(k);
        const int n = size_dist(rng);
        std::vector<Frac64> row(static_cast<std::size_t>(k));
        for (int i = 0; i < n; ++i) {
            for (int ax = 0; ax < k; ++ax)
                row[static_cast<std::size_t>(ax)] = Frac64::from_rational(BigRat(num_dist(rng), 1LL << 20));
            cloud.add_point(row);
        }
        return cloud;
    };
    std::int64_t checked = 0, failures = 0;
    for (int pair = 0; pair < 100; ++pair) {
        const PointCloud a = random_cloud(dim_dist(rng));
        const PointCloud b = random_cloud(dim_dist(rng));
        const PointCloud ab = product_cloud(a, b);
        for (int level = 0; level <= 10; ++level) {
            ++checked;
            if (dyadic_count_at_level(ab, level) !=
                dyadic_count_at_level(a, level) * dyadic_count_at_level(b, level))
                ++failures;
        }
    }
    Outcome out;
    out.pass = failures == 0;
    std::ostringstream os;
    os << checked << " pair/level products (exact equality), failures: " << failures;
    out.details = os.str();
    return out;
}

// ---------------------------------------------------------------------------

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "exact rational dimension r/s", criterion_1},
    {2, "degrees-of-freedom dimension log_d f", criterion_2},
    {3, "standard product-summability", criterion_3},
    {4, "oscillating-partition counterexample", criterion_4},
    {5, "nonstandard product-summability", criterion_5},
    {6, "complement identity", criterion_6},
    {7, "q-limit contracts", criterion_7},
    {8, "oracle axiom audit", criterion_8},
    {9, "dyadic covering sandwich", criterion_9},
    {10, "outer-content bracket", criterion_10},
    {11, "covering multiplicativity", criterion_11},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
    }
    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.details = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << "[C" << (c.id < 10 ? "0" : "") << c.id << "] "
                  << (out.pass ? "PASS" : "FAIL") << " " << c.title << " — " << out.details
                  << " [" << std::fixed << std::setprecision(2) << secs << "s]"
                  << std::defaultfloat << "\n";
        if (!out.pass) ++failures;
    }
    return failures;
}
