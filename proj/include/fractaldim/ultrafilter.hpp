#pragma once

#include "fractaldim/exact.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fractaldim {

/// Subinterval of a sequence's bound interval. The upper end is always
/// excluded; the lower end is open for the initial bounds and closed after a
/// pivot lands on it (the pivot belongs to the upper half).
struct SeqInterval {
    BigRat lo, hi;
    bool lo_closed = false;
    double lo_d = 0.0, hi_d = 0.0; // cached doubles for double-valued sequences
    // machine-word endpoint forms (valid when small_ok): keeps the exact
    // membership tests of ratio sequences in 128-bit arithmetic
    std::int64_t lo_n64 = 0, lo_d64 = 1, hi_n64 = 0, hi_d64 = 1;
    bool small_ok = false;

    SeqInterval() = default;
    SeqInterval(BigRat lo_in, BigRat hi_in, bool closed);

    bool contains(const BigRat& v) const {
        return (lo_closed ? v >= lo : v > lo) && v < hi;
    }
    bool contains_double(double v) const {
        return (lo_closed ? v >= lo_d : v > lo_d) && v < hi_d;
    }
    BigRat width() const { return hi - lo; }
    bool subset_of(const SeqInterval& o) const;
    bool same_as(const SeqInterval& o) const;
    std::string to_string() const;
};

SeqInterval intersect_intervals(const SeqInterval& a, const SeqInterval& b);

/// A bounded sequence n >= 1 -> a_n with all terms strictly inside (lo, hi).
/// Exact builders answer interval-membership queries in integer arithmetic;
/// double builders compare machine doubles (deterministic either way).
class BoundedSequence {
public:
    using ValueFn = std::function<double(std::int64_t)>;
    using ExactFn = std::function<BigRat(std::int64_t)>;
    using MemberFn = std::function<bool(std::int64_t, const SeqInterval&)>;

    static std::shared_ptr<const BoundedSequence> from_double(std::string name, ValueFn value,
                                                              double lo, double hi);
    static std::shared_ptr<const BoundedSequence> from_exact(std::string name, ExactFn term,
                                                             BigRat lo, BigRat hi);
    static std::shared_ptr<const BoundedSequence> from_custom(std::string name, ValueFn value,
                                                              MemberFn member, BigRat lo, BigRat hi);

    double value(std::int64_t n) const { return value_(n); }
    bool in_interval(std::int64_t n, const SeqInterval& iv) const {
        return exact_ ? member_(n, iv) : iv.contains_double(value_(n));
    }
    bool is_exact() const { return exact_; }
    const BigRat& lo() const { return lo_; }
    const BigRat& hi() const { return hi_; }
    const std::string& name() const { return name_; }

private:
    BoundedSequence() = default;
    std::string name_;
    ValueFn value_;
    MemberFn member_;
    bool exact_ = false;
    BigRat lo_, hi_;
};

using SequencePtr = std::shared_ptr<const BoundedSequence>;

/// Decidable subset of {1, 2, ...} with enough Boolean structure tracked to
/// recognize finite and cofinite sets and sequence-interval preimages.
class IndexSet {
public:
    enum class Finiteness { Unknown, Finite, Cofinite };

    static IndexSet all();
    static IndexSet empty_set();
    static IndexSet finite(std::vector<std::int64_t> elements);
    static IndexSet from_predicate(std::string description, std::function<bool(std::int64_t)> pred);
    static IndexSet preimage(SequencePtr seq, SeqInterval interval);

    bool contains(std::int64_t n) const { return pred_(n); }
    Finiteness finiteness() const { return finiteness_; }
    const std::string& description() const { return desc_; }

    IndexSet intersect(const IndexSet& other) const;
    IndexSet unite(const IndexSet& other) const;
    IndexSet complement() const;
    IndexSet minus_finite(std::vector<std::int64_t> removed) const;

    bool is_preimage() const { return seq_ != nullptr; }
    const SequencePtr& sequence() const { return seq_; }
    const SeqInterval& interval() const { return interval_; }

private:
    IndexSet() = default;
    std::string desc_;
    std::function<bool(std::int64_t)> pred_;
    Finiteness finiteness_ = Finiteness::Unknown;
    SequencePtr seq_;
    SeqInterval interval_;
};

enum class Largeness { Small = 0, Large = 1 };

struct OracleOptions {
    std::int64_t horizon = 1'000'000;
    int max_doublings = 8;
};

/// One committed refinement; the committed sets form a decreasing chain and
/// every answer ever given stays valid against the final chain.
struct LedgerEntry {
    std::string description;
    std::string mode; // "tail" | "cotail" | "refine" | "cofinite"
    bool is_preimage = false;
    std::string seq_name;
    SeqInterval interval;
};

struct QueryRecord {
    IndexSet set;
    Largeness answer = Largeness::Small;
    std::string mode;
};

/// Finite, consistent stand-in for a non-principal ultrafilter on N.
///
/// The oracle keeps a decreasing chain of committed index sets, starting from
/// a base set (all of N, or a tail generator). A query answers Large when the
/// set covers the whole visible window of the deepest committed set (its
/// members in (H/2, H]); Small when it misses that window entirely; otherwise
/// the window splits and the oracle refines the chain with the queried set,
/// preferring the queried (lower) side. Every answer commits its chosen side,
/// so repeated and derived queries satisfy the ultrafilter axioms over the
/// queried family. Structurally finite sets are always Small, structurally
/// cofinite ones always Large. A committed chain that empties its window
/// forces the horizon to double; past max_doublings the run aborts with
/// InconsistentHorizonError rather than answer inconsistently.
///
/// One oracle instance per logical thread; snapshots and sequences are
/// freely shareable.
class UltrafilterOracle {
public:
    static UltrafilterOracle frechet(OracleOptions opts = {});
    static UltrafilterOracle tail_of(IndexSet base, std::string name, OracleOptions opts = {});
    static UltrafilterOracle lazy_bisect(OracleOptions opts = {});

    Largeness is_large(const IndexSet& u);

    UltrafilterOracle snapshot() const { return *this; }

    std::int64_t horizon() const { return horizon_; }
    const std::string& spec_name() const { return spec_; }
    const std::vector<LedgerEntry>& ledger() const { return ledger_; }
    const std::vector<QueryRecord>& query_log() const { return log_; }

    /// Members of the deepest committed set in (H/2, H].
    const std::vector<std::int64_t>& window_members() const { return window_; }
    /// Members of the deepest committed set in [1, cap] (for brute-force
    /// cluster-point checks).
    std::vector<std::int64_t> members_up_to(std::int64_t cap) const;

    /// Deepest committed interval for a sequence (the full bound interval
    /// when nothing was committed yet).
    SeqInterval current_interval(const SequencePtr& seq) const;

private:
    UltrafilterOracle() = default;
    bool deep_member(std::int64_t n) const;
    void commit(const IndexSet& side, const std::string& mode);
    void refill_window();
    void grow_horizon(const std::string& why);
    const std::vector<double>& cached_values(const BoundedSequence* seq);

    OracleOptions opts_;
    std::string spec_;
    IndexSet base_ = IndexSet::all();
    std::vector<std::pair<SequencePtr, SeqInterval>> seq_commits_;
    std::vector<IndexSet> generic_commits_;
    std::vector<LedgerEntry> ledger_;
    std::vector<QueryRecord> log_;
    std::vector<std::int64_t> window_;
    // window-aligned term values for double-valued sequences
    std::vector<std::pair<const BoundedSequence*, std::vector<double>>> caches_;
    std::int64_t horizon_ = 0;
    int doublings_ = 0;
};

enum class PivotPolicy { Midpoint, GoldenSplit };

/// Nested-interval Q-limit: bisect the bound interval, query the preimage of
/// the lower half, recurse into the large half until the width drops under
/// tol, return the midpoint. The result is within tol of a cluster point of
/// the sequence restricted to the final committed set.
double qlim(const SequencePtr& seq, UltrafilterOracle& oracle, double tol,
            PivotPolicy pivot = PivotPolicy::Midpoint);

/// Q-limits of several sequences against one shared ledger; the returned
/// values obey the limit-homomorphism laws within interval truncation.
std::vector<double> qlim_joint(const std::vector<SequencePtr>& seqs, UltrafilterOracle& oracle,
                               double tol);

/// Replays a frozen ledger under two pivot policies; the limits must agree
/// within 2*tol.
bool uniqueness_check(const SequencePtr& seq, const UltrafilterOracle& frozen, double tol,
                      double* out_a = nullptr, double* out_b = nullptr);

struct AuditReport {
    int checks = 0;
    std::vector<std::string> violations;
    bool clean() const { return violations.empty(); }
};

/// Replays the query log against snapshots and verifies monotonicity,
/// intersection closure, dichotomy, properness, finite-set rejection and
/// union splitting on the queried family.
AuditReport axiom_audit(const UltrafilterOracle& oracle);

} // namespace fractaldim
