#pragma once

#include "fractaldim/dyadic_cover.hpp"
#include "fractaldim/exact.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace fractaldim {

enum class PartitionRole { A, B };

inline const char* role_name(PartitionRole r) { return r == PartitionRole::A ? "A" : "B"; }

/// Alternating connected blocks A_1, B_1, A_2, B_2, ... partitioning the
/// positive integers. Blocks are generated lazily and memoized; concurrent
/// readers observe a consistent, append-only prefix.
class PartitionSchedule {
public:
    struct Block {
        PartitionRole role;
        BigInt first;  // 1-based, inclusive
        BigInt last;
        BigInt cum_a;  // f_A(last)
        BigInt cum_b;  // f_B(last)
    };

    /// |A_{n+1}| = n * T_n, |B_{n+1}| = n * (T_n + |A_{n+1}|), where T_n is
    /// the total length of the first n block pairs. Seeds give |A_1|, |B_1|.
    static std::shared_ptr<PartitionSchedule> ngrowth(std::uint64_t seed_a, std::uint64_t seed_b);

    /// Fixed block lengths |A_1|,|B_1|,|A_2|,...; the list is cycled so the
    /// blocks partition all of N.
    static std::shared_ptr<PartitionSchedule> explicit_lengths(std::vector<BigInt> lengths);

    /// Flat block index: 0 = A_1, 1 = B_1, 2 = A_2, ... Extends on demand.
    Block block(std::size_t flat_index) const;
    BigInt block_end(std::size_t flat_index) const;

    /// f_role(m) = number of positions in {1..m} lying in blocks of the role.
    BigInt freedom(PartitionRole role, const BigInt& m) const;
    /// f_role(m) / m as an exact rational.
    BigRat ratio(PartitionRole role, const BigInt& m) const;

    // Machine-word fast path for oracle scans (m up to the cached range).
    std::int64_t freedom_i64(PartitionRole role, std::int64_t m) const;
    bool is_block_end(PartitionRole role, std::int64_t m) const;

    bool is_ngrowth() const { return kind_ == Kind::NGrowth; }
    std::uint64_t seed_a() const { return seed_a_; }
    std::uint64_t seed_b() const { return seed_b_; }
    const std::vector<BigInt>& explicit_list() const { return explicit_; }

    /// For cycled explicit lists the ratio converges to the A-fraction of one
    /// cycle; NGrowth ratios oscillate between 0 and 1.
    bool ratio_converges() const { return kind_ == Kind::Explicit; }
    BigRat cycle_fraction(PartitionRole role) const;

    std::string describe() const;

private:
    enum class Kind { NGrowth, Explicit };

    PartitionSchedule() = default;
    void extend_to_position(const BigInt& m) const;
    void extend_to_block(std::size_t flat_index) const;
    void append_pair() const;
    std::size_t find_block(const BigInt& m) const; // block containing position m

    Kind kind_ = Kind::NGrowth;
    std::uint64_t seed_a_ = 1, seed_b_ = 1;
    std::vector<BigInt> explicit_;

    mutable std::mutex mu_;
    mutable std::vector<Block> blocks_;
    // prefix of block ends and cumulative freedoms that fit in int64
    mutable std::vector<std::int64_t> small_end_, small_cum_a_;
    mutable std::vector<PartitionRole> small_role_;
};

/// Exact covering count in factored form prod f^mult. Factors are digit
/// freedoms (2..d); forced positions contribute nothing.
struct CoveringCount {
    std::map<std::int64_t, BigInt> factors;

    BigInt value() const;
    long double log_value() const;
    /// Exponent e with count = d^e, when every factor equals d (e may be 0).
    std::optional<BigInt> pure_power_exponent(std::int64_t d) const;
    void multiply_in(std::int64_t factor, const BigInt& multiplicity);
    std::string to_string() const; // factored form, e.g. "2^4 * 3^12"
};

/// Symbolic digit-restricted subset of [0,1] (or of the unit square for
/// products): base d and the number of admissible digit values per position.
class DigitSchedule {
public:
    enum class Kind { Constant, Blocks, Partition, ExplicitPrefix, Product };

    static DigitSchedule constant(int base, int f);
    static DigitSchedule constant_digits(int base, std::vector<int> allowed_digits);
    /// Blocks of length s with d^r admissible strings per block, encoded
    /// positionwise: first r positions of each block free, the rest forced.
    static DigitSchedule blocks(int base, int block_len, int free_positions);
    /// Blocks with an explicit admissible-string set; the set size must be a
    /// power of the base (the positionwise count calculus assumes it).
    /// Counts at depths inside a block follow the positionwise convention
    /// (completed blocks plus free positions of the partial block); they pin
    /// the true prefix counts exactly at block boundaries, where the
    /// dimension lives. Point sampling always enumerates the true prefixes.
    static DigitSchedule blocks_explicit(int base, int block_len, std::vector<std::string> allowed_strings);
    static DigitSchedule partition(int base, std::shared_ptr<PartitionSchedule> part, PartitionRole role);
    static DigitSchedule explicit_prefix(int base, std::vector<int> prefix_freedoms, int tail_freedom);
    static DigitSchedule product(const DigitSchedule& a, const DigitSchedule& b);

    Kind kind() const { return data_->kind; }
    int base() const { return data_->base; }
    /// 1 for subsets of [0,1]; sums over factors for products.
    int ambient_dimension() const;

    /// f_i at position i >= 1 (not defined for products).
    int freedom_at(const BigInt& position) const;

    /// Exact covering count at scale eps in (d^-(m+1), d^-m].
    CoveringCount covering_count(const BigInt& m) const;

    /// Exact dimension-ratio sample log_d(count(m)) / m as a rational.
    /// Requires every admissible-count factor to equal the base (partition
    /// schedules, canonical blocks, and products of such); mixed-radix
    /// schedules must use ratio_log instead.
    BigRat ratio(const BigInt& m) const;
    bool has_exact_ratio() const;

    /// log count(m) / log d^m, evaluated exactly when possible and in long
    /// double otherwise.
    double ratio_log(const BigInt& m) const;

    /// Classical-limit structure: Constant, Blocks and ExplicitPrefix
    /// schedules converge (and products of convergent schedules do); NGrowth
    /// partitions oscillate between liminf 0 and limsup 1.
    bool classical_convergent() const;
    /// True for A x B built from the two roles of one partition; the ratio of
    /// such a product is identically 1.
    bool complementary_pair() const;
    std::optional<double> analytic_dimension() const;
    std::optional<double> analytic_limsup() const;
    std::optional<double> analytic_liminf() const;

    /// All points sum_{i<=depth} a_i d^-i with admissible digit choices.
    /// Canonical digit values are the lexicographically first f_i digits
    /// unless an explicit digit/string set was supplied.
    PointCloud sample_points(int depth, std::uint64_t max_points) const;

    const std::shared_ptr<PartitionSchedule>& partition_schedule() const;
    PartitionRole partition_role() const;
    const DigitSchedule& factor(int which) const; // products only

    // introspection for serialization
    int constant_f() const { return data_->f; }
    const std::vector<int>& constant_digit_set() const { return data_->digits; }
    int block_len() const { return data_->block_len; }
    int block_free() const { return data_->block_free; }
    const std::vector<std::string>& block_strings() const { return data_->allowed_strings; }
    const std::vector<int>& prefix_freedoms() const { return data_->prefix; }
    int tail_freedom() const { return data_->tail_f; }

    std::string describe() const;

private:
    struct Data {
        Kind kind = Kind::Constant;
        int base = 2;
        // constant
        int f = 1;
        std::vector<int> digits;
        // blocks
        int block_len = 1;
        int block_free = 0;
        std::vector<std::string> allowed_strings; // empty -> canonical
        // partition
        std::shared_ptr<PartitionSchedule> part;
        PartitionRole role = PartitionRole::A;
        // explicit prefix
        std::vector<int> prefix;
        int tail_f = 1;
        // product
        std::shared_ptr<const DigitSchedule> prod_a, prod_b;
    };

    explicit DigitSchedule(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
    std::shared_ptr<const Data> data_;
};

/// Blocks schedule with exact Minkowski dimension r/s (r <= s).
DigitSchedule make_rational_dim(int base, int r, int s);

/// Constant schedule with floor(d^(r/s)) freedoms per position. The achieved
/// dimension log_d floor(d^(r/s)) approaches r/s as d grows; `gap` is the
/// shortfall and `floor_bound` the rigorous bound -log_d(1 - d^(-r/s)).
struct FloorPowerResult {
    DigitSchedule schedule;
    BigInt f;
    double achieved_dimension = 0.0;
    double target = 0.0;
    double gap = 0.0;
    double floor_bound = 0.0;
};
FloorPowerResult make_floor_power(int base, int r, int s);

std::shared_ptr<PartitionSchedule> make_ngrowth(std::uint64_t seed_a, std::uint64_t seed_b);

/// Product schedule; the covering count at every scale is the product of the
/// factors' counts. Bases must match (no common grid otherwise).
DigitSchedule product_schedule(const DigitSchedule& a, const DigitSchedule& b);

} // namespace fractaldim
