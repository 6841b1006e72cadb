#pragma once

#include "fractaldim/exact.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace fractaldim {

/// Exact rational coordinate in [0,1]: num/den with den > 0, reduced.
/// Kept in machine words so cell assignment stays a couple of integer ops.
struct Frac64 {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Frac64 from_rational(const BigRat& r);
    BigRat to_rational() const { return BigRat(BigInt(num), BigInt(den)); }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

bool operator==(const Frac64& a, const Frac64& b);
bool operator<(const Frac64& a, const Frac64& b);

/// Identifies the dyadic cell prod_i [m_i 2^-n, (m_i+1) 2^-n) at level n.
/// Cells at one level tile R^k, so every point lies in exactly one.
struct CubeKey {
    int level = 0;
    std::vector<std::int64_t> coords;

    bool operator==(const CubeKey&) const = default;
    bool operator<(const CubeKey& other) const;
};

/// Cell coordinate of a single axis value at a dyadic level (level may be
/// negative: cells wider than 1).
std::int64_t dyadic_cell_index(const Frac64& x, int level);

/// A finite set of points with exact rational coordinates in [0,1]^k.
/// Immutable once built; all covering operations are pure.
class PointCloud {
public:
    explicit PointCloud(int dimension);

    int dimension() const { return dim_; }
    std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
    bool empty() const { return coords_.empty(); }

    void add_point(std::span<const Frac64> point);
    void add_point_1d(const Frac64& x);
    Frac64 coord(std::size_t point, int axis) const;

    /// CSV with header "x1,...,xk"; rows of decimal literals or "p/q".
    /// Lines starting with '#' are treated as comments.
    static PointCloud load_csv(std::istream& in);
    void save_csv(std::ostream& out, const std::vector<std::string>& comments = {}) const;

private:
    int dim_;
    std::vector<Frac64> coords_;
};

/// The unique n with 2^-(n+1) < eps <= 2^-n. Exact; eps must be positive.
int level_for_epsilon(const BigRat& eps);

/// Occupied dyadic cells of the cloud at a level, sorted and unique.
std::vector<CubeKey> occupied_cells(const PointCloud& cloud, int level);

/// S_A(eps): number of level-n cells occupied by the cloud, n = level_for_epsilon(eps).
/// This is the minimal dyadic cover since half-open cells tile space.
std::int64_t dyadic_count(const PointCloud& cloud, const BigRat& eps);

/// Occupied-cell count directly at a level (used by the estimator).
std::int64_t dyadic_count_at_level(const PointCloud& cloud, int level);

/// Occupied d-adic cells at depth m (cells [j d^-m, (j+1) d^-m)); exactness
/// cross-check for digit-restricted sets sampled in base d.
std::int64_t dadic_count(const PointCloud& cloud, int base, int depth);

/// Minimal number of closed intervals of the given length covering a 1-D
/// cloud. Greedy sweep from the leftmost uncovered point, optimal in 1-D.
std::int64_t interval_cover_1d(const PointCloud& cloud, const BigRat& length);

/// Minimal number of closed balls of radius eps (intervals of length 2*eps).
std::int64_t ball_cover_1d(const PointCloud& cloud, const BigRat& eps);

/// Covering sandwich check in 1-D. `cube_cover` counts minimal closed
/// intervals of side eps; for dyadic eps the exact sandwich
/// cube_cover <= cell_count <= 2 * cube_cover holds, and ball_cover <= cell_count
/// holds for every eps.
struct SandwichReport {
    int level = 0;
    std::int64_t ball_cover = 0;
    std::int64_t cube_cover = 0;
    std::int64_t cell_count = 0;
    bool lower_ok = false;
    bool upper_ok = false;
    bool pass = false;
};

SandwichReport sandwich_check(const PointCloud& cloud, const BigRat& eps);

/// Cartesian product; dimension is the sum of the factors'.
PointCloud product_cloud(const PointCloud& a, const PointCloud& b);

} // namespace fractaldim
