#include "fractaldim/dimension.hpp"

#include <algorithm>
#include <cmath>

namespace fractaldim {

namespace {
const BigInt kI64Max = BigInt(std::numeric_limits<std::int64_t>::max());
} // namespace

// ---------------------------------------------------------------------------
// ScaleSequence
// ---------------------------------------------------------------------------

ScaleSequence ScaleSequence::every_level() {
    ScaleSequence s;
    s.kind_ = Kind::EveryLevel;
    s.name_ = "every-m";
    return s;
}

ScaleSequence ScaleSequence::block_ends(std::shared_ptr<PartitionSchedule> part) {
    if (!part) throw std::domain_error("ScaleSequence::block_ends: missing partition");
    ScaleSequence s;
    s.kind_ = Kind::BlockEnds;
    s.part_ = std::move(part);
    s.name_ = "block-ends";
    return s;
}

ScaleSequence ScaleSequence::explicit_eps(std::vector<BigRat> eps, int base) {
    if (base < 2) throw std::domain_error("ScaleSequence: base must be >= 2");
    if (eps.empty()) throw std::domain_error("ScaleSequence: empty scale list");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] <= 0) throw std::domain_error("ScaleSequence: scales must be positive");
        if (i && eps[i] >= eps[i - 1])
            throw std::domain_error("ScaleSequence: scales must be strictly decreasing");
    }
    ScaleSequence s;
    s.kind_ = Kind::ExplicitEps;
    s.eps_ = std::move(eps);
    s.base_ = base;
    s.name_ = "explicit";
    return s;
}

namespace {

// unique m with d^-(m+1) < eps <= d^-m
BigInt depth_for_eps(const BigRat& eps, int base) {
    const BigInt p = boost::multiprecision::numerator(eps);
    const BigInt q = boost::multiprecision::denominator(eps);
    auto le_pow = [&](long m) {
        if (m >= 0) return p * pow_big(BigInt(base), static_cast<unsigned long>(m)) <= q;
        return p <= q * pow_big(BigInt(base), static_cast<unsigned long>(-m));
    };
    const double guess = static_cast<double>((log_big(q) - log_big(p)) / std::log(static_cast<long double>(base)));
    long m = static_cast<long>(std::floor(guess));
    while (!le_pow(m)) --m;
    while (le_pow(m + 1)) ++m;
    return BigInt(m);
}

} // namespace

BigInt ScaleSequence::depth_at(std::int64_t n) const {
    if (n < 1) throw std::domain_error("ScaleSequence: indices are 1-based");
    switch (kind_) {
        case Kind::EveryLevel: return BigInt(n);
        case Kind::BlockEnds: return part_->block_end(static_cast<std::size_t>(n - 1));
        case Kind::ExplicitEps:
            if (static_cast<std::size_t>(n) > eps_.size())
                throw std::out_of_range("ScaleSequence: index beyond the explicit scale list");
            return depth_for_eps(eps_[static_cast<std::size_t>(n - 1)], base_);
    }
    throw std::logic_error("unreachable");
}

std::int64_t ScaleSequence::default_horizon() const {
    switch (kind_) {
        case Kind::EveryLevel: return 1'000'000;
        case Kind::BlockEnds: return 1024; // block lengths grow super-factorially
        case Kind::ExplicitEps: return static_cast<std::int64_t>(eps_.size());
    }
    return 1'000'000;
}

// ---------------------------------------------------------------------------
// ratio sequences
// ---------------------------------------------------------------------------

namespace {

using ExponentFn = std::function<BigInt(const BigInt&)>;

ExponentFn make_exponent_fn(const DigitSchedule& sched) {
    switch (sched.kind()) {
        case DigitSchedule::Kind::Constant: {
            const bool full = sched.constant_f() == sched.base();
            return [full](const BigInt& m) { return full ? m : BigInt(0); };
        }
        case DigitSchedule::Kind::Blocks: {
            const int s = sched.block_len();
            const int r = sched.block_free();
            return [s, r](const BigInt& m) {
                const int rem = (m % s).convert_to<int>();
                return (m / s) * r + std::min(r, rem);
            };
        }
        case DigitSchedule::Kind::Partition: {
            auto part = sched.partition_schedule();
            const PartitionRole role = sched.partition_role();
            return [part, role](const BigInt& m) {
                if (m <= kI64Max) return BigInt(part->freedom_i64(role, m.convert_to<std::int64_t>()));
                return part->freedom(role, m);
            };
        }
        case DigitSchedule::Kind::ExplicitPrefix: {
            const std::vector<int> prefix = sched.prefix_freedoms();
            const bool tail_full = sched.tail_freedom() == sched.base();
            const int base = sched.base();
            std::vector<std::int64_t> cum(prefix.size() + 1, 0);
            for (std::size_t i = 0; i < prefix.size(); ++i)
                cum[i + 1] = cum[i] + (prefix[i] == base ? 1 : 0);
            return [cum, tail_full, n_prefix = static_cast<std::int64_t>(prefix.size())](const BigInt& m) {
                if (m <= n_prefix) return BigInt(cum[m.convert_to<std::size_t>()]);
                BigInt e(cum[static_cast<std::size_t>(n_prefix)]);
                if (tail_full) e += m - n_prefix;
                return e;
            };
        }
        case DigitSchedule::Kind::Product: {
            ExponentFn fa = make_exponent_fn(sched.factor(0));
            ExponentFn fb = make_exponent_fn(sched.factor(1));
            return [fa, fb](const BigInt& m) { return fa(m) + fb(m); };
        }
    }
    throw std::logic_error("unreachable");
}

// e/m inside iv, all comparisons exact (m > 0, denominators positive)
bool frac_in_interval(const BigInt& e, const BigInt& m, const SeqInterval& iv) {
    if (iv.small_ok && m <= (std::int64_t(1) << 40)) {
        const auto e64 = static_cast<__int128>(e.convert_to<std::int64_t>());
        const auto m64 = static_cast<__int128>(m.convert_to<std::int64_t>());
        const __int128 lhs_lo = e64 * iv.lo_d64;
        const __int128 rhs_lo = static_cast<__int128>(iv.lo_n64) * m64;
        if (!(iv.lo_closed ? lhs_lo >= rhs_lo : lhs_lo > rhs_lo)) return false;
        return e64 * iv.hi_d64 < static_cast<__int128>(iv.hi_n64) * m64;
    }
    const BigInt& pl = boost::multiprecision::numerator(iv.lo);
    const BigInt& ql = boost::multiprecision::denominator(iv.lo);
    const BigInt lhs_lo = e * ql;
    const BigInt rhs_lo = pl * m;
    const bool lo_ok = iv.lo_closed ? lhs_lo >= rhs_lo : lhs_lo > rhs_lo;
    if (!lo_ok) return false;
    const BigInt& ph = boost::multiprecision::numerator(iv.hi);
    const BigInt& qh = boost::multiprecision::denominator(iv.hi);
    return e * qh < ph * m;
}

} // namespace

SequencePtr ratio_sequence(const DigitSchedule& sched, const ScaleSequence& scales) {
    const int k = sched.ambient_dimension();
    const std::string name = "ratio[" + sched.describe() + ";" + scales.name() + "]";
    DigitSchedule sched_copy = sched;
    ScaleSequence scales_copy = scales;
    auto value = [sched_copy, scales_copy](std::int64_t n) {
        return sched_copy.ratio_log(scales_copy.depth_at(n));
    };
    if (!sched.has_exact_ratio()) {
        // mixed-radix counts (e.g. Cantor in base 3): deterministic double
        // evaluation; the ratio sequence converges for these schedules anyway
        return BoundedSequence::from_double(name, value, -1.0 / 1024.0,
                                            static_cast<double>(k) + 1.0 / 1024.0);
    }
    ExponentFn expfn = make_exponent_fn(sched);
    auto member = [expfn, scales_copy](std::int64_t n, const SeqInterval& iv) {
        const BigInt m = scales_copy.depth_at(n);
        return frac_in_interval(expfn(m), m, iv);
    };
    return BoundedSequence::from_custom(name, value, member, BigRat(-1, 1024),
                                        BigRat(k) + BigRat(1, 1024));
}

// ---------------------------------------------------------------------------
// classical dimensions
// ---------------------------------------------------------------------------

namespace {

std::shared_ptr<PartitionSchedule> find_partition(const DigitSchedule& sched) {
    switch (sched.kind()) {
        case DigitSchedule::Kind::Partition: return sched.partition_schedule();
        case DigitSchedule::Kind::Product: {
            auto a = find_partition(sched.factor(0));
            return a ? a : find_partition(sched.factor(1));
        }
        default: return nullptr;
    }
}

bool structurally_oscillating(const DigitSchedule& sched) {
    switch (sched.kind()) {
        case DigitSchedule::Kind::Partition:
            return sched.partition_schedule()->is_ngrowth();
        case DigitSchedule::Kind::Product: {
            if (sched.classical_convergent()) return false;
            const DigitSchedule& a = sched.factor(0);
            const DigitSchedule& b = sched.factor(1);
            return (structurally_oscillating(a) && b.classical_convergent()) ||
                   (structurally_oscillating(b) && a.classical_convergent());
        }
        default: return false;
    }
}

} // namespace

DimensionReport classical_dims(const DigitSchedule& sched, std::int64_t depth) {
    if (depth < 10) throw std::domain_error("classical_dims: depth must be >= 10");
    DimensionReport rep;
    rep.method = "exact-schedule";

    std::vector<double> samples;
    const auto part = find_partition(sched);
    if (part) {
        // ratio extremes of partition schedules live at block boundaries
        const std::int64_t ends = std::min<std::int64_t>(depth, 64);
        samples.reserve(static_cast<std::size_t>(ends));
        for (std::int64_t i = 0; i < ends; ++i)
            samples.push_back(sched.ratio_log(part->block_end(static_cast<std::size_t>(i))));
        rep.depth_used = ends;
    } else {
        samples.reserve(static_cast<std::size_t>(depth));
        for (std::int64_t m = 1; m <= depth; ++m) samples.push_back(sched.ratio_log(BigInt(m)));
        rep.depth_used = depth;
    }

    const std::size_t from = samples.size() / 2;
    double lo = samples[from], hi = samples[from];
    for (std::size_t i = from; i < samples.size(); ++i) {
        lo = std::min(lo, samples[i]);
        hi = std::max(hi, samples[i]);
    }
    rep.liminf_est = lo;
    rep.limsup_est = hi;

    if (sched.classical_convergent())
        rep.classical_exists = (hi - lo) < rep.report_tol ? Trivalent::Yes : Trivalent::Undetermined;
    else if (structurally_oscillating(sched))
        rep.classical_exists = Trivalent::No;
    else
        rep.classical_exists = Trivalent::Undetermined;

    rep.analytic_dim = sched.analytic_dimension();
    rep.analytic_limsup = sched.analytic_limsup();
    rep.analytic_liminf = sched.analytic_liminf();
    return rep;
}

double qdim(const DigitSchedule& sched, const ScaleSequence& scales, UltrafilterOracle& oracle,
            double tol) {
    const double q = qlim(ratio_sequence(sched, scales), oracle, tol);
    return std::clamp(q, 0.0, static_cast<double>(sched.ambient_dimension()));
}

ProductSummabilityReport product_summability_check(const DigitSchedule& a, const DigitSchedule& b,
                                                   const ScaleSequence& scales,
                                                   UltrafilterOracle& oracle, double tol,
                                                   std::int64_t classical_depth) {
    const DigitSchedule prod = product_schedule(a, b);
    const std::vector<SequencePtr> seqs{ratio_sequence(a, scales), ratio_sequence(b, scales),
                                        ratio_sequence(prod, scales)};
    const std::vector<double> vals = qlim_joint(seqs, oracle, tol);

    ProductSummabilityReport rep;
    rep.qdim_a = vals[0];
    rep.qdim_b = vals[1];
    rep.qdim_product = vals[2];
    rep.qdim_discrepancy = std::abs(vals[2] - vals[0] - vals[1]);
    rep.tol = tol;
    rep.qdim_identity_pass = rep.qdim_discrepancy <= 2 * tol;

    const DimensionReport ra = classical_dims(a, classical_depth);
    const DimensionReport rb = classical_dims(b, classical_depth);
    rep.classical_exists_a = ra.classical_exists;
    rep.classical_exists_b = rb.classical_exists;
    rep.classical_a = ra.limsup_est;
    rep.classical_b = rb.limsup_est;
    if (ra.classical_exists == Trivalent::Yes && rb.classical_exists == Trivalent::Yes) {
        rep.classical_applicable = true;
        const DimensionReport rp = classical_dims(prod, classical_depth);
        rep.classical_product = rp.limsup_est;
        rep.classical_discrepancy = std::abs(rep.classical_product - rep.classical_a - rep.classical_b);
        rep.classical_identity_pass = rep.classical_discrepancy <= 1e-9;
    }
    if (ra.analytic_limsup && rb.analytic_limsup) rep.limsup_sum = *ra.analytic_limsup + *rb.analytic_limsup;
    const DigitSchedule& p = prod;
    if (auto pl = p.analytic_limsup()) rep.limsup_product = pl;
    return rep;
}

// ---------------------------------------------------------------------------
// outer-content transition
// ---------------------------------------------------------------------------

namespace {

BigInt aligned_depth(const DigitSchedule& sched, std::int64_t target) {
    switch (sched.kind()) {
        case DigitSchedule::Kind::Blocks: {
            const int s = sched.block_len();
            const std::int64_t full = std::max<std::int64_t>(1, target / s);
            return BigInt(full * s);
        }
        case DigitSchedule::Kind::Partition: {
            // largest block end <= target (or the first end)
            const auto& part = sched.partition_schedule();
            BigInt best = part->block_end(0);
            for (std::size_t i = 1;; ++i) {
                const BigInt end = part->block_end(i);
                if (end > target) break;
                best = end;
            }
            return best;
        }
        default: return BigInt(std::max<std::int64_t>(1, target));
    }
}

} // namespace

ContentReport content_dimension_check(const DigitSchedule& sched, const std::vector<double>& s_grid,
                                      std::int64_t depth) {
    if (s_grid.size() < 2) throw std::domain_error("content check: need at least two grid points");
    for (std::size_t i = 1; i < s_grid.size(); ++i)
        if (s_grid[i] <= s_grid[i - 1])
            throw std::domain_error("content check: s grid must be strictly increasing");
    if (depth < 4) throw std::domain_error("content check: depth too small");

    const BigInt m2 = aligned_depth(sched, depth);
    const BigInt m1 = aligned_depth(sched, depth / 2);
    if (m1 >= m2) throw std::domain_error("content check: depth too small for two aligned samples");

    const long double ln_d = std::log(static_cast<long double>(sched.base()));
    const long double dlog_count =
        sched.covering_count(m2).log_value() - sched.covering_count(m1).log_value();
    const long double dm = (m2 - m1).convert_to<long double>();

    ContentReport rep;
    rep.transition_estimate = static_cast<double>(dlog_count / (dm * ln_d));
    const long double flat_tol = 1e-9L * dm * ln_d;
    for (double s : s_grid) {
        // log M^s(m2) - log M^s(m1) = dlog_count - s * dm * ln d, strictly
        // decreasing in s; its root is the dimension
        const long double diff = dlog_count - static_cast<long double>(s) * dm * ln_d;
        ContentRow row;
        row.s = s;
        row.trend = diff > flat_tol ? 1 : (diff < -flat_tol ? -1 : 0);
        rep.rows.push_back(row);
        if (row.trend > 0) {
            rep.has_lower = true;
            rep.s_lo = s;
        } else if (!rep.has_upper) {
            rep.has_upper = true;
            rep.s_hi = s;
        }
    }

    const DimensionReport cd = classical_dims(sched, std::min<std::int64_t>(depth, 4000));
    rep.limsup_est = cd.limsup_est;
    // the windowed estimate sits up to ~1/(depth/2) above the true limsup
    // (partial blocks bump the ratio), so containment allows that resolution
    const double est_slack = 4.0 / static_cast<double>(std::max<std::int64_t>(cd.depth_used, 4));
    rep.bracket_contains_limsup =
        (!rep.has_lower || rep.s_lo <= cd.limsup_est + est_slack) &&
        (!rep.has_upper || cd.limsup_est <= rep.s_hi + est_slack);
    return rep;
}

HausdorffBoundReport hausdorff_bound_check(const DigitSchedule& sched, std::int64_t depth,
                                           std::optional<double> known_dim_h) {
    HausdorffBoundReport rep;
    rep.minkowski_upper = classical_dims(sched, depth).limsup_est;
    rep.supplied_hausdorff = known_dim_h;
    if (known_dim_h) rep.consistent = *known_dim_h <= rep.minkowski_upper + 1e-9;
    return rep;
}

// ---------------------------------------------------------------------------
// oracle specs
// ---------------------------------------------------------------------------

UltrafilterOracle oracle_from_spec(const std::string& spec, const ScaleSequence& scales,
                                   std::shared_ptr<PartitionSchedule> part, OracleOptions opts) {
    if (spec == "frechet") return UltrafilterOracle::frechet(opts);
    if (spec == "lazy") return UltrafilterOracle::lazy_bisect(opts);
    if (spec == "tail:even")
        return UltrafilterOracle::tail_of(
            IndexSet::from_predicate("evens", [](std::int64_t n) { return n % 2 == 0; }), "even", opts);
    if (spec == "tail:odd")
        return UltrafilterOracle::tail_of(
            IndexSet::from_predicate("odds", [](std::int64_t n) { return n % 2 == 1; }), "odd", opts);
    if (spec == "tail:blockends-A" || spec == "tail:blockends-B") {
        if (!part)
            throw std::invalid_argument("oracle spec '" + spec + "' needs a partition schedule");
        const PartitionRole role = spec.back() == 'A' ? PartitionRole::A : PartitionRole::B;
        std::function<bool(std::int64_t)> pred;
        switch (scales.kind()) {
            case ScaleSequence::Kind::EveryLevel:
                pred = [part, role](std::int64_t n) { return part->is_block_end(role, n); };
                break;
            case ScaleSequence::Kind::BlockEnds:
                // scale index n walks blocks A_1, B_1, A_2, ...; odd indices
                // are A blocks
                pred = [role](std::int64_t n) { return (n % 2 == 1) == (role == PartitionRole::A); };
                break;
            case ScaleSequence::Kind::ExplicitEps:
                throw std::invalid_argument("block-end tail oracles need structured scales");
        }
        return UltrafilterOracle::tail_of(
            IndexSet::from_predicate("blockends-" + std::string(role_name(role)), pred),
            std::string("blockends-") + role_name(role), opts);
    }
    throw std::invalid_argument("unknown oracle spec '" + spec + "'");
}

} // namespace fractaldim
