#include "fractaldim/digit_fractal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace fractaldim {

namespace {
constexpr long double kLn2 = 0.6931471805599453094L;
const BigInt kI64Max = BigInt(std::numeric_limits<std::int64_t>::max());
} // namespace

// ---------------------------------------------------------------------------
// PartitionSchedule
// ---------------------------------------------------------------------------

std::shared_ptr<PartitionSchedule> PartitionSchedule::ngrowth(std::uint64_t seed_a, std::uint64_t seed_b) {
    if (seed_a < 1 || seed_b < 1) throw std::domain_error("ngrowth: seeds must be >= 1");
    auto p = std::shared_ptr<PartitionSchedule>(new PartitionSchedule());
    p->kind_ = Kind::NGrowth;
    p->seed_a_ = seed_a;
    p->seed_b_ = seed_b;
    return p;
}

std::shared_ptr<PartitionSchedule> PartitionSchedule::explicit_lengths(std::vector<BigInt> lengths) {
    if (lengths.empty()) throw std::domain_error("explicit_lengths: need at least one block length");
    for (const BigInt& l : lengths)
        if (l < 1) throw std::domain_error("explicit_lengths: block lengths must be >= 1");
    auto p = std::shared_ptr<PartitionSchedule>(new PartitionSchedule());
    p->kind_ = Kind::Explicit;
    p->explicit_ = std::move(lengths);
    return p;
}

void PartitionSchedule::append_pair() const {
    // caller holds mu_
    auto append_block = [&](const BigInt& len) {
        Block b;
        if (blocks_.empty()) {
            b.role = PartitionRole::A;
            b.first = 1;
            b.cum_a = 0;
            b.cum_b = 0;
        } else {
            const Block& prev = blocks_.back();
            b.role = prev.role == PartitionRole::A ? PartitionRole::B : PartitionRole::A;
            b.first = prev.last + 1;
            b.cum_a = prev.cum_a;
            b.cum_b = prev.cum_b;
        }
        b.last = b.first + len - 1;
        (b.role == PartitionRole::A ? b.cum_a : b.cum_b) += len;
        if (b.last <= kI64Max) {
            small_end_.push_back(b.last.convert_to<std::int64_t>());
            small_cum_a_.push_back(b.cum_a.convert_to<std::int64_t>());
            small_role_.push_back(b.role);
        }
        blocks_.push_back(std::move(b));
    };

    if (kind_ == Kind::NGrowth) {
        if (blocks_.empty()) {
            append_block(BigInt(seed_a_));
            append_block(BigInt(seed_b_));
            return;
        }
        const std::size_t pairs = blocks_.size() / 2;
        const BigInt total = blocks_.back().last; // T_n, end of B_n
        const BigInt len_a = BigInt(pairs) * total;
        append_block(len_a);
        append_block(BigInt(pairs) * (total + len_a));
        return;
    }
    // cycled explicit list
    append_block(explicit_[blocks_.size() % explicit_.size()]);
    append_block(explicit_[blocks_.size() % explicit_.size()]);
}

void PartitionSchedule::extend_to_position(const BigInt& m) const {
    while (blocks_.empty() || blocks_.back().last < m) append_pair();
}

void PartitionSchedule::extend_to_block(std::size_t flat_index) const {
    while (blocks_.size() <= flat_index) append_pair();
}

std::size_t PartitionSchedule::find_block(const BigInt& m) const {
    // first block with last >= m
    std::size_t lo = 0, hi = blocks_.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (blocks_[mid].last < m) lo = mid + 1; else hi = mid;
    }
    return lo;
}

PartitionSchedule::Block PartitionSchedule::block(std::size_t flat_index) const {
    std::lock_guard<std::mutex> lock(mu_);
    extend_to_block(flat_index);
    return blocks_[flat_index];
}

BigInt PartitionSchedule::block_end(std::size_t flat_index) const {
    std::lock_guard<std::mutex> lock(mu_);
    extend_to_block(flat_index);
    return blocks_[flat_index].last;
}

BigInt PartitionSchedule::freedom(PartitionRole role, const BigInt& m) const {
    if (m <= 0) return BigInt(0);
    std::lock_guard<std::mutex> lock(mu_);
    extend_to_position(m);
    const Block& b = blocks_[find_block(m)];
    BigInt cum = role == PartitionRole::A ? b.cum_a : b.cum_b;
    if (b.role == role) cum -= b.last - m;
    return cum;
}

BigRat PartitionSchedule::ratio(PartitionRole role, const BigInt& m) const {
    if (m < 1) throw std::domain_error("PartitionSchedule::ratio: m must be >= 1");
    return BigRat(freedom(role, m), m);
}

std::int64_t PartitionSchedule::freedom_i64(PartitionRole role, std::int64_t m) const {
    if (m <= 0) return 0;
    std::lock_guard<std::mutex> lock(mu_);
    extend_to_position(BigInt(m));
    const auto it = std::lower_bound(small_end_.begin(), small_end_.end(), m);
    const std::size_t i = static_cast<std::size_t>(it - small_end_.begin());
    if (i >= small_end_.size()) {
        // block containing m overflows the cached range; take the slow path
        const Block& b = blocks_[find_block(BigInt(m))];
        BigInt cum = role == PartitionRole::A ? b.cum_a : b.cum_b;
        if (b.role == role) cum -= b.last - m;
        return cum.convert_to<std::int64_t>();
    }
    std::int64_t cum_a = small_cum_a_[i];
    if (small_role_[i] == PartitionRole::A) cum_a -= small_end_[i] - m;
    return role == PartitionRole::A ? cum_a : m - cum_a;
}

bool PartitionSchedule::is_block_end(PartitionRole role, std::int64_t m) const {
    if (m <= 0) return false;
    std::lock_guard<std::mutex> lock(mu_);
    extend_to_position(BigInt(m) + 1); // make sure m is strictly inside the generated range
    const auto it = std::lower_bound(small_end_.begin(), small_end_.end(), m);
    if (it == small_end_.end() || *it != m) return false;
    return small_role_[static_cast<std::size_t>(it - small_end_.begin())] == role;
}

BigRat PartitionSchedule::cycle_fraction(PartitionRole role) const {
    if (kind_ != Kind::Explicit)
        throw TypeMismatchError("cycle_fraction: only explicit-list partitions converge");
    // one full pass through the list placed at both parities covers two
    // cycles, within which each length appears once per role
    BigInt total(0);
    for (const BigInt& l : explicit_) total += l;
    BigInt role_sum(0);
    const std::size_t n = explicit_.size();
    if (n % 2 == 0) {
        for (std::size_t i = 0; i < n; ++i)
            if ((i % 2 == 0) == (role == PartitionRole::A)) role_sum += explicit_[i];
        return BigRat(role_sum, total);
    }
    // odd list: after one pass the parity flips, so every length serves both
    // roles once over two passes
    return BigRat(total, BigInt(2) * total);
}

std::string PartitionSchedule::describe() const {
    std::ostringstream os;
    if (kind_ == Kind::NGrowth) {
        os << "ngrowth(" << seed_a_ << "," << seed_b_ << ")";
    } else {
        os << "lengths[";
        for (std::size_t i = 0; i < explicit_.size(); ++i) os << (i ? "," : "") << explicit_[i].str();
        os << "]";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// CoveringCount
// ---------------------------------------------------------------------------

void CoveringCount::multiply_in(std::int64_t factor, const BigInt& multiplicity) {
    if (factor < 1) throw std::domain_error("CoveringCount: factor must be >= 1");
    if (factor == 1 || multiplicity == 0) return;
    factors[factor] += multiplicity;
}

std::string CoveringCount::to_string() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [f, mult] : factors) {
        if (!first) os << " * ";
        first = false;
        os << f << "^" << mult.str();
    }
    return os.str();
}

BigInt CoveringCount::value() const {
    BigInt v(1);
    for (const auto& [f, mult] : factors) {
        if (mult > BigInt(1) << 26)
            throw ResourceError("covering count too large to materialize: " + to_string());
        v *= pow_big(BigInt(f), mult.convert_to<unsigned long>());
    }
    return v;
}

long double CoveringCount::log_value() const {
    long double s = 0.0L;
    for (const auto& [f, mult] : factors)
        s += mult.convert_to<long double>() * std::log(static_cast<long double>(f));
    return s;
}

std::optional<BigInt> CoveringCount::pure_power_exponent(std::int64_t d) const {
    if (factors.empty()) return BigInt(0);
    if (factors.size() == 1 && factors.begin()->first == d) return factors.begin()->second;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// DigitSchedule
// ---------------------------------------------------------------------------

namespace {
void check_base(int base) {
    if (base < 2) throw std::domain_error("DigitSchedule: base must be >= 2");
}
} // namespace

DigitSchedule DigitSchedule::constant(int base, int f) {
    check_base(base);
    if (f < 1 || f > base) throw std::domain_error("constant schedule: need 1 <= f <= base");
    std::vector<int> digits(static_cast<std::size_t>(f));
    for (int i = 0; i < f; ++i) digits[static_cast<std::size_t>(i)] = i;
    auto d = std::make_shared<Data>();
    d->kind = Kind::Constant;
    d->base = base;
    d->f = f;
    d->digits = std::move(digits);
    return DigitSchedule(std::move(d));
}

DigitSchedule DigitSchedule::constant_digits(int base, std::vector<int> allowed_digits) {
    check_base(base);
    std::sort(allowed_digits.begin(), allowed_digits.end());
    allowed_digits.erase(std::unique(allowed_digits.begin(), allowed_digits.end()), allowed_digits.end());
    if (allowed_digits.empty() || static_cast<int>(allowed_digits.size()) > base)
        throw std::domain_error("constant schedule: need between 1 and base digits");
    for (int dig : allowed_digits)
        if (dig < 0 || dig >= base) throw std::domain_error("constant schedule: digit out of range");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Constant;
    d->base = base;
    d->f = static_cast<int>(allowed_digits.size());
    d->digits = std::move(allowed_digits);
    return DigitSchedule(std::move(d));
}

DigitSchedule DigitSchedule::blocks(int base, int block_len, int free_positions) {
    check_base(base);
    if (block_len < 1) throw std::domain_error("blocks schedule: block length must be >= 1");
    if (free_positions < 0 || free_positions > block_len)
        throw std::domain_error("blocks schedule: need 0 <= r <= block length");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Blocks;
    d->base = base;
    d->block_len = block_len;
    d->block_free = free_positions;
    return DigitSchedule(std::move(d));
}

DigitSchedule DigitSchedule::blocks_explicit(int base, int block_len, std::vector<std::string> allowed_strings) {
    check_base(base);
    if (block_len < 1) throw std::domain_error("blocks schedule: block length must be >= 1");
    std::sort(allowed_strings.begin(), allowed_strings.end());
    allowed_strings.erase(std::unique(allowed_strings.begin(), allowed_strings.end()), allowed_strings.end());
    if (allowed_strings.empty()) throw std::domain_error("blocks schedule: need at least one admissible string");
    for (const std::string& s : allowed_strings) {
        if (static_cast<int>(s.size()) != block_len)
            throw std::domain_error("blocks schedule: admissible string length != block length");
        for (char c : s) {
            const int dig = c - '0';
            if (dig < 0 || dig >= base) throw std::domain_error("blocks schedule: bad digit in admissible string");
        }
    }
    // the count calculus needs |allowed| = base^r for an integer r
    std::size_t n = allowed_strings.size();
    int r = 0;
    while (n % static_cast<std::size_t>(base) == 0) {
        n /= static_cast<std::size_t>(base);
        ++r;
    }
    if (n != 1)
        throw std::domain_error("blocks schedule: admissible-string count must be a power of the base");
    if (r > block_len) throw std::domain_error("blocks schedule: too many admissible strings");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Blocks;
    d->base = base;
    d->block_len = block_len;
    d->block_free = r;
    d->allowed_strings = std::move(allowed_strings);
    return DigitSchedule(std::move(d));
}

DigitSchedule DigitSchedule::partition(int base, std::shared_ptr<PartitionSchedule> part, PartitionRole role) {
    check_base(base);
    if (!part) throw std::domain_error("partition schedule: missing partition");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Partition;
    d->base = base;
    d->part = std::move(part);
    d->role = role;
    return DigitSchedule(std::move(d));
}

DigitSchedule DigitSchedule::explicit_prefix(int base, std::vector<int> prefix_freedoms, int tail_freedom) {
    check_base(base);
    for (int f : prefix_freedoms)
        if (f < 1 || f > base) throw std::domain_error("explicit schedule: freedoms must lie in [1, base]");
    if (tail_freedom < 1 || tail_freedom > base)
        throw std::domain_error("explicit schedule: tail freedom must lie in [1, base]");
    auto d = std::make_shared<Data>();
    d->kind = Kind::ExplicitPrefix;
    d->base = base;
    d->prefix = std::move(prefix_freedoms);
    d->tail_f = tail_freedom;
    return DigitSchedule(std::move(d));
}

DigitSchedule DigitSchedule::product(const DigitSchedule& a, const DigitSchedule& b) {
    if (a.base() != b.base())
        throw std::domain_error("product schedule: factors must share a base (no common grid otherwise)");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Product;
    d->base = a.base();
    d->prod_a = std::make_shared<const DigitSchedule>(a);
    d->prod_b = std::make_shared<const DigitSchedule>(b);
    return DigitSchedule(std::move(d));
}

int DigitSchedule::ambient_dimension() const {
    if (data_->kind == Kind::Product)
        return data_->prod_a->ambient_dimension() + data_->prod_b->ambient_dimension();
    return 1;
}

int DigitSchedule::freedom_at(const BigInt& position) const {
    if (position < 1) throw std::domain_error("freedom_at: positions are 1-based");
    switch (data_->kind) {
        case Kind::Constant: return data_->f;
        case Kind::Blocks: {
            const BigInt offset = (position - 1) % data_->block_len;
            return offset < data_->block_free ? data_->base : 1;
        }
        case Kind::Partition: {
            const BigInt fm = data_->part->freedom(data_->role, position);
            const BigInt fm1 = data_->part->freedom(data_->role, position - 1);
            return fm > fm1 ? data_->base : 1;
        }
        case Kind::ExplicitPrefix: {
            if (position <= static_cast<long>(data_->prefix.size()))
                return data_->prefix[(position - 1).convert_to<std::size_t>()];
            return data_->tail_f;
        }
        case Kind::Product:
            throw TypeMismatchError("freedom_at: product schedules have no per-position freedom");
    }
    throw std::logic_error("unreachable");
}

CoveringCount DigitSchedule::covering_count(const BigInt& m) const {
    if (m < 0) throw std::domain_error("covering_count: m must be >= 0");
    CoveringCount count;
    switch (data_->kind) {
        case Kind::Constant:
            count.multiply_in(data_->f, m);
            break;
        case Kind::Blocks: {
            const BigInt full = m / data_->block_len;
            const int rem = (m % data_->block_len).convert_to<int>();
            count.multiply_in(data_->base, full * data_->block_free + std::min(data_->block_free, rem));
            break;
        }
        case Kind::Partition:
            count.multiply_in(data_->base, data_->part->freedom(data_->role, m));
            break;
        case Kind::ExplicitPrefix: {
            const BigInt plen = BigInt(data_->prefix.size());
            const BigInt in_prefix = m < plen ? m : plen;
            for (std::size_t i = 0; i < in_prefix.convert_to<std::size_t>(); ++i)
                count.multiply_in(data_->prefix[i], BigInt(1));
            if (m > plen) count.multiply_in(data_->tail_f, m - plen);
            break;
        }
        case Kind::Product: {
            count = data_->prod_a->covering_count(m);
            const CoveringCount cb = data_->prod_b->covering_count(m);
            for (const auto& [f, mult] : cb.factors) count.multiply_in(f, mult);
            break;
        }
    }
    return count;
}

bool DigitSchedule::has_exact_ratio() const {
    switch (data_->kind) {
        case Kind::Constant: return data_->f == 1 || data_->f == data_->base;
        case Kind::Blocks: return true;
        case Kind::Partition: return true;
        case Kind::ExplicitPrefix: {
            if (data_->tail_f != 1 && data_->tail_f != data_->base) return false;
            for (int f : data_->prefix)
                if (f != 1 && f != data_->base) return false;
            return true;
        }
        case Kind::Product: return data_->prod_a->has_exact_ratio() && data_->prod_b->has_exact_ratio();
    }
    return false;
}

BigRat DigitSchedule::ratio(const BigInt& m) const {
    if (m < 1) throw std::domain_error("ratio: m must be >= 1");
    const auto e = covering_count(m).pure_power_exponent(data_->base);
    if (!e)
        throw TypeMismatchError("ratio: schedule has mixed digit freedoms; use ratio_log");
    return BigRat(*e, m);
}

double DigitSchedule::ratio_log(const BigInt& m) const {
    if (m < 1) throw std::domain_error("ratio_log: m must be >= 1");
    const CoveringCount count = covering_count(m);
    if (const auto e = count.pure_power_exponent(data_->base))
        return rat_to_double(BigRat(*e, m));
    const long double log_count = count.log_value();
    const long double log_scale = m.convert_to<long double>() * std::log(static_cast<long double>(data_->base));
    return static_cast<double>(log_count / log_scale);
}

bool DigitSchedule::classical_convergent() const {
    switch (data_->kind) {
        case Kind::Constant:
        case Kind::Blocks:
        case Kind::ExplicitPrefix:
            return true;
        case Kind::Partition:
            return data_->part->ratio_converges();
        case Kind::Product: {
            if (data_->prod_a->classical_convergent() && data_->prod_b->classical_convergent()) return true;
            // complementary roles over one partition: the ratios sum to 1 at
            // every single scale, so the product ratio is identically 1
            return complementary_pair();
        }
    }
    return false;
}

bool DigitSchedule::complementary_pair() const {
    if (data_->kind != Kind::Product) return false;
    const DigitSchedule& a = *data_->prod_a;
    const DigitSchedule& b = *data_->prod_b;
    return a.kind() == Kind::Partition && b.kind() == Kind::Partition &&
           a.data_->part == b.data_->part && a.data_->role != b.data_->role;
}

std::optional<double> DigitSchedule::analytic_dimension() const {
    switch (data_->kind) {
        case Kind::Constant:
            return static_cast<double>(std::log(static_cast<long double>(data_->f)) /
                                       std::log(static_cast<long double>(data_->base)));
        case Kind::Blocks:
            return static_cast<double>(data_->block_free) / static_cast<double>(data_->block_len);
        case Kind::ExplicitPrefix:
            return static_cast<double>(std::log(static_cast<long double>(data_->tail_f)) /
                                       std::log(static_cast<long double>(data_->base)));
        case Kind::Partition:
            if (data_->part->ratio_converges())
                return rat_to_double(data_->part->cycle_fraction(data_->role));
            return std::nullopt;
        case Kind::Product: {
            if (complementary_pair()) return 1.0;
            const auto da = data_->prod_a->analytic_dimension();
            const auto db = data_->prod_b->analytic_dimension();
            if (da && db && data_->prod_a->classical_convergent() && data_->prod_b->classical_convergent())
                return *da + *db;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<double> DigitSchedule::analytic_limsup() const {
    if (classical_convergent()) return analytic_dimension();
    if (data_->kind == Kind::Partition && data_->part->is_ngrowth()) return 1.0;
    return std::nullopt;
}

std::optional<double> DigitSchedule::analytic_liminf() const {
    if (classical_convergent()) return analytic_dimension();
    if (data_->kind == Kind::Partition && data_->part->is_ngrowth()) return 0.0;
    return std::nullopt;
}

const std::shared_ptr<PartitionSchedule>& DigitSchedule::partition_schedule() const {
    if (data_->kind != Kind::Partition)
        throw TypeMismatchError("partition_schedule: not a partition schedule");
    return data_->part;
}

PartitionRole DigitSchedule::partition_role() const {
    if (data_->kind != Kind::Partition)
        throw TypeMismatchError("partition_role: not a partition schedule");
    return data_->role;
}

const DigitSchedule& DigitSchedule::factor(int which) const {
    if (data_->kind != Kind::Product) throw TypeMismatchError("factor: not a product schedule");
    return which == 0 ? *data_->prod_a : *data_->prod_b;
}

// ---------------------------------------------------------------------------
// point sampling
// ---------------------------------------------------------------------------

namespace {

// one independently chosen digit group; `values` are the group's digit-string
// values read as base-d integers of width `positions`
struct ChoiceGroup {
    int positions = 1;
    std::vector<std::int64_t> values;
};

std::vector<ChoiceGroup> choice_groups(const DigitSchedule& sched, int depth) {
    const int d = sched.base();
    std::vector<ChoiceGroup> groups;
    switch (sched.kind()) {
        case DigitSchedule::Kind::Constant: {
            ChoiceGroup g;
            g.positions = 1;
            for (int dig : sched.constant_digit_set()) g.values.push_back(dig);
            for (int i = 0; i < depth; ++i) groups.push_back(g);
            break;
        }
        case DigitSchedule::Kind::Blocks: {
            const int s = sched.block_len();
            const int r = sched.block_free();
            if (!sched.block_strings().empty()) {
                for (int start = 0; start < depth; start += s) {
                    const int width = std::min(s, depth - start);
                    std::set<std::int64_t> vals;
                    for (const std::string& str : sched.block_strings()) {
                        std::int64_t v = 0;
                        for (int j = 0; j < width; ++j) v = v * d + (str[static_cast<std::size_t>(j)] - '0');
                        vals.insert(v);
                    }
                    ChoiceGroup g;
                    g.positions = width;
                    g.values.assign(vals.begin(), vals.end());
                    groups.push_back(std::move(g));
                }
            } else {
                for (int i = 0; i < depth; ++i) {
                    ChoiceGroup g;
                    g.positions = 1;
                    if (i % s < r)
                        for (int dig = 0; dig < d; ++dig) g.values.push_back(dig);
                    else
                        g.values.push_back(0);
                    groups.push_back(std::move(g));
                }
            }
            break;
        }
        case DigitSchedule::Kind::Partition: {
            const auto& part = sched.partition_schedule();
            const PartitionRole role = sched.partition_role();
            for (int i = 1; i <= depth; ++i) {
                const bool free_pos =
                    part->freedom(role, BigInt(i)) > part->freedom(role, BigInt(i - 1));
                ChoiceGroup g;
                g.positions = 1;
                if (free_pos)
                    for (int dig = 0; dig < d; ++dig) g.values.push_back(dig);
                else
                    g.values.push_back(0);
                groups.push_back(std::move(g));
            }
            break;
        }
        case DigitSchedule::Kind::ExplicitPrefix: {
            for (int i = 1; i <= depth; ++i) {
                const int f = sched.freedom_at(BigInt(i));
                ChoiceGroup g;
                g.positions = 1;
                for (int dig = 0; dig < f; ++dig) g.values.push_back(dig);
                groups.push_back(std::move(g));
            }
            break;
        }
        case DigitSchedule::Kind::Product:
            throw std::logic_error("choice_groups: products handled by the caller");
    }
    return groups;
}

} // namespace

PointCloud DigitSchedule::sample_points(int depth, std::uint64_t max_points) const {
    if (depth < 1) throw std::domain_error("sample_points: depth must be >= 1");

    if (data_->kind == Kind::Product) {
        BigInt total = data_->prod_a->covering_count(BigInt(depth)).value() *
                       data_->prod_b->covering_count(BigInt(depth)).value();
        if (total > BigInt(max_points))
            throw ResourceError("sample_points: product needs " + total.str() +
                                " points, cap is " + std::to_string(max_points));
        return product_cloud(data_->prod_a->sample_points(depth, max_points),
                             data_->prod_b->sample_points(depth, max_points));
    }

    const BigInt den_big = pow_big(BigInt(data_->base), static_cast<unsigned long>(depth));
    if (den_big > kI64Max)
        throw ResourceError("sample_points: depth " + std::to_string(depth) +
                            " exceeds exact 64-bit coordinates in base " + std::to_string(data_->base));
    const std::int64_t den = den_big.convert_to<std::int64_t>();

    const std::vector<ChoiceGroup> groups = choice_groups(*this, depth);
    BigInt total(1);
    for (const auto& g : groups) {
        total *= BigInt(g.values.size());
        if (total > BigInt(max_points))
            throw ResourceError("sample_points: enumeration exceeds cap of " + std::to_string(max_points) + " points");
    }

    // place value of each group (base^(positions to its right))
    std::vector<std::int64_t> place(groups.size(), 1);
    {
        std::int64_t acc = 1;
        for (std::size_t i = groups.size(); i-- > 0;) {
            place[i] = acc;
            for (int j = 0; j < groups[i].positions; ++j) acc *= data_->base;
        }
    }

    PointCloud cloud(1);
    std::vector<std::size_t> odo(groups.size(), 0);
    while (true) {
        std::int64_t num = 0;
        for (std::size_t i = 0; i < groups.size(); ++i) num += groups[i].values[odo[i]] * place[i];
        cloud.add_point_1d(Frac64::from_rational(BigRat(BigInt(num), BigInt(den))));
        std::size_t i = groups.size();
        while (i-- > 0) {
            if (++odo[i] < groups[i].values.size()) break;
            odo[i] = 0;
            if (i == 0) return cloud;
        }
    }
}

std::string DigitSchedule::describe() const {
    std::ostringstream os;
    switch (data_->kind) {
        case Kind::Constant: {
            os << "constant(base=" << data_->base << ",f=" << data_->f << ",digits={";
            for (std::size_t i = 0; i < data_->digits.size(); ++i) os << (i ? "," : "") << data_->digits[i];
            os << "})";
            break;
        }
        case Kind::Blocks:
            os << "blocks(base=" << data_->base << ",s=" << data_->block_len << ",r=" << data_->block_free;
            if (!data_->allowed_strings.empty()) os << ",explicit(" << data_->allowed_strings.size() << ")";
            os << ")";
            break;
        case Kind::Partition:
            os << "partition(" << data_->part->describe() << "," << role_name(data_->role)
               << ",base=" << data_->base << ")";
            break;
        case Kind::ExplicitPrefix:
            os << "explicit(base=" << data_->base << ",prefix_len=" << data_->prefix.size()
               << ",tail_f=" << data_->tail_f << ")";
            break;
        case Kind::Product:
            os << "product(" << data_->prod_a->describe() << " x " << data_->prod_b->describe() << ")";
            break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

DigitSchedule make_rational_dim(int base, int r, int s) {
    if (r < 1 || s < 1) throw std::domain_error("make_rational_dim: r and s must be >= 1");
    if (r > s) throw std::domain_error("make_rational_dim: r > s would exceed dimension 1");
    return DigitSchedule::blocks(base, s, r);
}

FloorPowerResult make_floor_power(int base, int r, int s) {
    if (base < 2) throw std::domain_error("make_floor_power: base must be >= 2");
    if (r < 1 || s < 1) throw std::domain_error("make_floor_power: r and s must be >= 1");
    if (r > s) throw std::domain_error("make_floor_power: r > s would exceed dimension 1");
    const BigInt f = iroot_floor(pow_big(BigInt(base), static_cast<unsigned long>(r)), static_cast<unsigned>(s));
    FloorPowerResult out{DigitSchedule::constant(base, f.convert_to<int>()), f, 0.0, 0.0, 0.0, 0.0};
    const long double ld = std::log(static_cast<long double>(base));
    out.achieved_dimension = static_cast<double>(log_big(f) / ld);
    out.target = static_cast<double>(r) / static_cast<double>(s);
    out.gap = std::abs(out.target - out.achieved_dimension);
    // floor(d^q) > d^q - 1, so the shortfall is below -log_d(1 - d^-q)
    const long double q = static_cast<long double>(r) / static_cast<long double>(s);
    out.floor_bound = static_cast<double>(-std::log(1.0L - std::exp(-q * ld)) / ld);
    return out;
}

std::shared_ptr<PartitionSchedule> make_ngrowth(std::uint64_t seed_a, std::uint64_t seed_b) {
    return PartitionSchedule::ngrowth(seed_a, seed_b);
}

DigitSchedule product_schedule(const DigitSchedule& a, const DigitSchedule& b) {
    return DigitSchedule::product(a, b);
}

} // namespace fractaldim
