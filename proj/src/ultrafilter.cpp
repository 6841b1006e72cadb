#include "fractaldim/ultrafilter.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fractaldim {

// ---------------------------------------------------------------------------
// SeqInterval
// ---------------------------------------------------------------------------

SeqInterval::SeqInterval(BigRat lo_in, BigRat hi_in, bool closed)
    : lo(std::move(lo_in)), hi(std::move(hi_in)), lo_closed(closed) {
    lo_d = rat_to_double(lo);
    hi_d = rat_to_double(hi);
    // midpoint pivots keep denominators around 2^steps * 512, well inside
    // 64-bit words; golden splits overflow this and take the big-int path
    static const BigInt kSmall = BigInt(1) << 62;
    const BigInt& ln = boost::multiprecision::numerator(lo);
    const BigInt& ld = boost::multiprecision::denominator(lo);
    const BigInt& hn = boost::multiprecision::numerator(hi);
    const BigInt& hd = boost::multiprecision::denominator(hi);
    if (ln > -kSmall && ln < kSmall && ld < kSmall && hn > -kSmall && hn < kSmall && hd < kSmall) {
        lo_n64 = ln.convert_to<std::int64_t>();
        lo_d64 = ld.convert_to<std::int64_t>();
        hi_n64 = hn.convert_to<std::int64_t>();
        hi_d64 = hd.convert_to<std::int64_t>();
        small_ok = true;
    }
}

bool SeqInterval::subset_of(const SeqInterval& o) const {
    const bool lo_ok = lo > o.lo || (lo == o.lo && (o.lo_closed || !lo_closed));
    return lo_ok && hi <= o.hi;
}

bool SeqInterval::same_as(const SeqInterval& o) const {
    return lo == o.lo && hi == o.hi && lo_closed == o.lo_closed;
}

std::string SeqInterval::to_string() const {
    std::ostringstream os;
    os << (lo_closed ? "[" : "(") << rational_to_string(lo) << "," << rational_to_string(hi) << ")";
    return os.str();
}

SeqInterval intersect_intervals(const SeqInterval& a, const SeqInterval& b) {
    BigRat lo;
    bool closed;
    if (a.lo > b.lo) {
        lo = a.lo;
        closed = a.lo_closed;
    } else if (b.lo > a.lo) {
        lo = b.lo;
        closed = b.lo_closed;
    } else {
        lo = a.lo;
        closed = a.lo_closed && b.lo_closed;
    }
    return SeqInterval(lo, std::min(a.hi, b.hi), closed);
}

// ---------------------------------------------------------------------------
// BoundedSequence
// ---------------------------------------------------------------------------

std::shared_ptr<const BoundedSequence> BoundedSequence::from_double(std::string name, ValueFn value,
                                                                    double lo, double hi) {
    auto seq = std::shared_ptr<BoundedSequence>(new BoundedSequence());
    seq->name_ = std::move(name);
    seq->lo_ = BigRat(lo);
    seq->hi_ = BigRat(hi);
    seq->value_ = std::move(value);
    seq->exact_ = false;
    return seq;
}

std::shared_ptr<const BoundedSequence> BoundedSequence::from_exact(std::string name, ExactFn term,
                                                                   BigRat lo, BigRat hi) {
    auto seq = std::shared_ptr<BoundedSequence>(new BoundedSequence());
    seq->name_ = std::move(name);
    seq->lo_ = std::move(lo);
    seq->hi_ = std::move(hi);
    ExactFn t = term;
    seq->value_ = [t](std::int64_t n) { return rat_to_double(t(n)); };
    seq->member_ = [t](std::int64_t n, const SeqInterval& iv) { return iv.contains(t(n)); };
    seq->exact_ = true;
    return seq;
}

std::shared_ptr<const BoundedSequence> BoundedSequence::from_custom(std::string name, ValueFn value,
                                                                    MemberFn member, BigRat lo,
                                                                    BigRat hi) {
    auto seq = std::shared_ptr<BoundedSequence>(new BoundedSequence());
    seq->name_ = std::move(name);
    seq->lo_ = std::move(lo);
    seq->hi_ = std::move(hi);
    seq->value_ = std::move(value);
    seq->member_ = std::move(member);
    seq->exact_ = true;
    return seq;
}

// ---------------------------------------------------------------------------
// IndexSet
// ---------------------------------------------------------------------------

IndexSet IndexSet::all() {
    IndexSet s;
    s.desc_ = "N";
    s.pred_ = [](std::int64_t) { return true; };
    s.finiteness_ = Finiteness::Cofinite;
    return s;
}

IndexSet IndexSet::empty_set() {
    IndexSet s;
    s.desc_ = "{}";
    s.pred_ = [](std::int64_t) { return false; };
    s.finiteness_ = Finiteness::Finite;
    return s;
}

IndexSet IndexSet::finite(std::vector<std::int64_t> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    IndexSet s;
    std::ostringstream os;
    os << "finite{" << elements.size() << "}";
    s.desc_ = os.str();
    auto elems = std::make_shared<std::vector<std::int64_t>>(std::move(elements));
    s.pred_ = [elems](std::int64_t n) {
        return std::binary_search(elems->begin(), elems->end(), n);
    };
    s.finiteness_ = Finiteness::Finite;
    return s;
}

IndexSet IndexSet::from_predicate(std::string description, std::function<bool(std::int64_t)> pred) {
    IndexSet s;
    s.desc_ = std::move(description);
    s.pred_ = std::move(pred);
    return s;
}

IndexSet IndexSet::preimage(SequencePtr seq, SeqInterval interval) {
    IndexSet s;
    s.desc_ = "{n: " + seq->name() + "(n) in " + interval.to_string() + "}";
    const BoundedSequence* raw = seq.get();
    const SeqInterval iv = interval;
    s.pred_ = [raw, iv](std::int64_t n) { return raw->in_interval(n, iv); };
    s.seq_ = std::move(seq);
    s.interval_ = std::move(interval);
    return s;
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
    IndexSet s;
    s.desc_ = "(" + desc_ + " & " + other.desc_ + ")";
    auto a = pred_, b = other.pred_;
    s.pred_ = [a, b](std::int64_t n) { return a(n) && b(n); };
    if (finiteness_ == Finiteness::Finite || other.finiteness_ == Finiteness::Finite)
        s.finiteness_ = Finiteness::Finite;
    else if (finiteness_ == Finiteness::Cofinite && other.finiteness_ == Finiteness::Cofinite)
        s.finiteness_ = Finiteness::Cofinite;
    // intersections of same-sequence preimages stay preimages
    if (is_preimage() && other.is_preimage() && seq_ == other.seq_) {
        s.seq_ = seq_;
        s.interval_ = intersect_intervals(interval_, other.interval_);
    }
    return s;
}

IndexSet IndexSet::unite(const IndexSet& other) const {
    IndexSet s;
    s.desc_ = "(" + desc_ + " | " + other.desc_ + ")";
    auto a = pred_, b = other.pred_;
    s.pred_ = [a, b](std::int64_t n) { return a(n) || b(n); };
    if (finiteness_ == Finiteness::Cofinite || other.finiteness_ == Finiteness::Cofinite)
        s.finiteness_ = Finiteness::Cofinite;
    else if (finiteness_ == Finiteness::Finite && other.finiteness_ == Finiteness::Finite)
        s.finiteness_ = Finiteness::Finite;
    return s;
}

IndexSet IndexSet::complement() const {
    IndexSet s;
    s.desc_ = "!(" + desc_ + ")";
    auto a = pred_;
    s.pred_ = [a](std::int64_t n) { return !a(n); };
    if (finiteness_ == Finiteness::Finite) s.finiteness_ = Finiteness::Cofinite;
    else if (finiteness_ == Finiteness::Cofinite) s.finiteness_ = Finiteness::Finite;
    return s;
}

IndexSet IndexSet::minus_finite(std::vector<std::int64_t> removed) const {
    return intersect(IndexSet::finite(std::move(removed)).complement());
}

// ---------------------------------------------------------------------------
// UltrafilterOracle
// ---------------------------------------------------------------------------

UltrafilterOracle UltrafilterOracle::frechet(OracleOptions opts) {
    UltrafilterOracle o;
    o.opts_ = opts;
    o.spec_ = "frechet";
    o.base_ = IndexSet::all();
    o.horizon_ = opts.horizon;
    o.refill_window();
    return o;
}

UltrafilterOracle UltrafilterOracle::tail_of(IndexSet base, std::string name, OracleOptions opts) {
    UltrafilterOracle o;
    o.opts_ = opts;
    o.spec_ = "tail:" + name;
    o.base_ = std::move(base);
    o.horizon_ = opts.horizon;
    o.refill_window();
    return o;
}

UltrafilterOracle UltrafilterOracle::lazy_bisect(OracleOptions opts) {
    UltrafilterOracle o;
    o.opts_ = opts;
    o.spec_ = "lazy";
    o.base_ = IndexSet::all();
    o.horizon_ = opts.horizon;
    o.refill_window();
    return o;
}

bool UltrafilterOracle::deep_member(std::int64_t n) const {
    if (!base_.contains(n)) return false;
    for (const auto& [seq, iv] : seq_commits_)
        if (!seq->in_interval(n, iv)) return false;
    for (const IndexSet& g : generic_commits_)
        if (!g.contains(n)) return false;
    return true;
}

void UltrafilterOracle::refill_window() {
    while (true) {
        window_.clear();
        caches_.clear();
        for (std::int64_t n = horizon_ / 2 + 1; n <= horizon_; ++n)
            if (deep_member(n)) window_.push_back(n);
        if (!window_.empty()) return;
        grow_horizon("committed chain has no member in (H/2, H]");
    }
}

void UltrafilterOracle::grow_horizon(const std::string& why) {
    if (doublings_ >= opts_.max_doublings)
        throw InconsistentHorizonError(
            "oracle '" + spec_ + "': " + why + " at horizon " + std::to_string(horizon_) +
            "; the committed chain cannot be certified infinite (raise the horizon)");
    ++doublings_;
    horizon_ *= 2;
}

const std::vector<double>& UltrafilterOracle::cached_values(const BoundedSequence* seq) {
    for (const auto& [s, vals] : caches_)
        if (s == seq) return vals;
    std::vector<double> vals(window_.size());
    for (std::size_t i = 0; i < window_.size(); ++i) vals[i] = seq->value(window_[i]);
    caches_.emplace_back(seq, std::move(vals));
    return caches_.back().second;
}

void UltrafilterOracle::commit(const IndexSet& side, const std::string& mode) {
    LedgerEntry entry;
    entry.description = side.description();
    entry.mode = mode;
    if (side.is_preimage()) {
        entry.is_preimage = true;
        entry.seq_name = side.sequence()->name();
        entry.interval = side.interval();
        bool found = false;
        for (auto& [seq, iv] : seq_commits_) {
            if (seq == side.sequence()) {
                // keep the conjunction of everything committed for this
                // sequence; replays may re-pose wider intervals
                iv = intersect_intervals(iv, side.interval());
                found = true;
                break;
            }
        }
        if (!found) seq_commits_.emplace_back(side.sequence(), side.interval());
    } else {
        generic_commits_.push_back(side);
    }
    ledger_.push_back(std::move(entry));

    std::vector<std::size_t> keep;
    keep.reserve(window_.size());
    for (std::size_t i = 0; i < window_.size(); ++i)
        if (side.contains(window_[i])) keep.push_back(i);
    if (keep.size() != window_.size()) {
        std::vector<std::int64_t> w;
        w.reserve(keep.size());
        for (std::size_t i : keep) w.push_back(window_[i]);
        window_ = std::move(w);
        for (auto& [s, vals] : caches_) {
            std::vector<double> v;
            v.reserve(keep.size());
            for (std::size_t i : keep) v.push_back(vals[i]);
            vals = std::move(v);
        }
    }
    if (window_.empty()) refill_window();
}

Largeness UltrafilterOracle::is_large(const IndexSet& u) {
    // structural shortcuts: no finite set is large, every cofinite set is
    if (u.finiteness() == IndexSet::Finiteness::Finite) {
        log_.push_back({u, Largeness::Small, "finite"});
        return Largeness::Small;
    }
    if (u.finiteness() == IndexSet::Finiteness::Cofinite) {
        log_.push_back({u, Largeness::Large, "cofinite"});
        commit(u, "cofinite");
        return Largeness::Large;
    }

    bool any_in = false, any_out = false;
    if (u.is_preimage() && !u.sequence()->is_exact()) {
        const std::vector<double>& vals = cached_values(u.sequence().get());
        const SeqInterval& iv = u.interval();
        for (double v : vals) {
            (iv.contains_double(v) ? any_in : any_out) = true;
            if (any_in && any_out) break;
        }
    } else {
        for (std::int64_t n : window_) {
            (u.contains(n) ? any_in : any_out) = true;
            if (any_in && any_out) break;
        }
    }

    if (any_in && !any_out) {
        // u covers the visible tail of the deepest committed set
        log_.push_back({u, Largeness::Large, "tail"});
        commit(u, "tail");
        return Largeness::Large;
    }
    if (any_out && !any_in) {
        // the complement covers the visible tail; commit the other side
        IndexSet side = u.complement();
        if (u.is_preimage()) {
            // complement within the sequence's current committed interval is
            // again an interval when the query anchors at one of its ends
            const SeqInterval cur = current_interval(u.sequence());
            const SeqInterval& iv = u.interval();
            if (iv.lo == cur.lo && iv.lo_closed == cur.lo_closed && iv.hi < cur.hi)
                side = IndexSet::preimage(u.sequence(), SeqInterval(iv.hi, cur.hi, true));
            else if (iv.hi == cur.hi && iv.lo > cur.lo)
                side = IndexSet::preimage(u.sequence(), SeqInterval(cur.lo, iv.lo, cur.lo_closed));
        }
        log_.push_back({u, Largeness::Small, "cotail"});
        commit(side, "cotail");
        return Largeness::Small;
    }

    // both halves meet the visible tail: refine with the queried (lower) set
    log_.push_back({u, Largeness::Large, "refine"});
    commit(u, "refine");
    return Largeness::Large;
}

std::vector<std::int64_t> UltrafilterOracle::members_up_to(std::int64_t cap) const {
    std::vector<std::int64_t> out;
    for (std::int64_t n = 1; n <= cap; ++n)
        if (deep_member(n)) out.push_back(n);
    return out;
}

SeqInterval UltrafilterOracle::current_interval(const SequencePtr& seq) const {
    for (const auto& [s, iv] : seq_commits_)
        if (s == seq) return iv;
    return SeqInterval(seq->lo(), seq->hi(), false);
}

// ---------------------------------------------------------------------------
// Q-limits
// ---------------------------------------------------------------------------

namespace {

BigRat pivot_point(const SeqInterval& cur, PivotPolicy policy) {
    if (policy == PivotPolicy::Midpoint) return (cur.lo + cur.hi) / 2;
    // golden-ratio split, rationalized via a Fibonacci quotient
    return cur.lo + (cur.hi - cur.lo) * BigRat(377, 610);
}

} // namespace

double qlim(const SequencePtr& seq, UltrafilterOracle& oracle, double tol, PivotPolicy pivot) {
    if (!(tol > 0)) throw std::domain_error("qlim: tol must be positive");
    SeqInterval cur(seq->lo(), seq->hi(), false);
    const BigRat tol_r(tol);
    while (cur.width() >= tol_r) {
        const BigRat p = pivot_point(cur, pivot);
        const SeqInterval lower(cur.lo, p, cur.lo_closed);
        if (oracle.is_large(IndexSet::preimage(seq, lower)) == Largeness::Large)
            cur = lower;
        else
            cur = SeqInterval(p, cur.hi, true);
    }
    return rat_to_double(cur.lo + cur.width() / 2);
}

std::vector<double> qlim_joint(const std::vector<SequencePtr>& seqs, UltrafilterOracle& oracle,
                               double tol) {
    // sequential runs against one chain: each later bisection refines the
    // same committed sets, so one index in the final window witnesses every
    // returned interval simultaneously
    std::vector<double> out;
    out.reserve(seqs.size());
    for (const SequencePtr& seq : seqs) out.push_back(qlim(seq, oracle, tol));
    return out;
}

bool uniqueness_check(const SequencePtr& seq, const UltrafilterOracle& frozen, double tol,
                      double* out_a, double* out_b) {
    UltrafilterOracle a = frozen.snapshot();
    UltrafilterOracle b = frozen.snapshot();
    const double la = qlim(seq, a, tol, PivotPolicy::Midpoint);
    const double lb = qlim(seq, b, tol, PivotPolicy::GoldenSplit);
    if (out_a) *out_a = la;
    if (out_b) *out_b = lb;
    return std::abs(la - lb) <= 2 * tol;
}

// ---------------------------------------------------------------------------
// axiom audit
// ---------------------------------------------------------------------------

AuditReport axiom_audit(const UltrafilterOracle& oracle) {
    AuditReport report;
    const auto& log = oracle.query_log();

    auto note = [&report](const std::string& what) { report.violations.push_back(what); };

    // properness
    {
        UltrafilterOracle probe = oracle.snapshot();
        ++report.checks;
        if (probe.is_large(IndexSet::empty_set()) != Largeness::Small)
            note("empty set answered Large");
    }

    // finite sets must have been answered Small
    for (const QueryRecord& q : log) {
        if (q.set.finiteness() == IndexSet::Finiteness::Finite) {
            ++report.checks;
            if (q.answer != Largeness::Small)
                note("finite set answered Large: " + q.set.description());
        }
    }

    // monotonicity on structurally comparable pairs (same-sequence preimages)
    for (std::size_t i = 0; i < log.size(); ++i) {
        if (!log[i].set.is_preimage()) continue;
        for (std::size_t j = 0; j < log.size(); ++j) {
            if (i == j || !log[j].set.is_preimage()) continue;
            if (log[i].set.sequence() != log[j].set.sequence()) continue;
            if (!log[i].set.interval().subset_of(log[j].set.interval())) continue;
            ++report.checks;
            if (log[i].answer == Largeness::Large && log[j].answer == Largeness::Small)
                note("monotonicity: " + log[i].set.description() + " Large but superset " +
                     log[j].set.description() + " Small");
        }
    }

    // dichotomy: the complement of every logged set answers the opposite
    {
        UltrafilterOracle probe = oracle.snapshot();
        for (const QueryRecord& q : log) {
            ++report.checks;
            const Largeness comp = probe.is_large(q.set.complement());
            if (comp == q.answer)
                note("dichotomy: " + q.set.description() + " and its complement both " +
                     (comp == Largeness::Large ? "Large" : "Small"));
        }
    }

    // closure under intersection for pairs answered Large
    {
        UltrafilterOracle probe = oracle.snapshot();
        std::vector<std::size_t> large;
        for (std::size_t i = 0; i < log.size(); ++i)
            if (log[i].answer == Largeness::Large) large.push_back(i);
        const std::size_t step = std::max<std::size_t>(1, large.size() / 64);
        for (std::size_t a = 0; a < large.size(); a += step) {
            for (std::size_t b = a + 1; b < large.size(); b += step) {
                ++report.checks;
                if (probe.is_large(log[large[a]].set.intersect(log[large[b]].set)) != Largeness::Large)
                    note("intersection of Large sets answered Small: " +
                         log[large[a]].set.description() + " & " + log[large[b]].set.description());
            }
        }
    }

    // union splitting: if u|v is Large then one of u, v is
    {
        UltrafilterOracle probe = oracle.snapshot();
        const std::size_t step = std::max<std::size_t>(1, log.size() / 48);
        for (std::size_t a = 0; a < log.size(); a += step) {
            for (std::size_t b = a + 1; b < log.size(); b += step) {
                ++report.checks;
                if (probe.is_large(log[a].set.unite(log[b].set)) == Largeness::Large) {
                    const bool ua = probe.is_large(log[a].set) == Largeness::Large;
                    const bool ub = probe.is_large(log[b].set) == Largeness::Large;
                    if (!ua && !ub)
                        note("union splitting: " + log[a].set.description() + " | " +
                             log[b].set.description() + " Large but both parts Small");
                }
            }
        }
    }

    return report;
}

} // namespace fractaldim
