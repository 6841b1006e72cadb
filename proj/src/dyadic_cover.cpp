#include "fractaldim/dyadic_cover.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace fractaldim {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

// exact comparison num_a/den_a ? num_b/den_b with positive denominators
int cmp_frac(const Frac64& a, const Frac64& b) {
    const __int128 lhs = static_cast<__int128>(a.num) * b.den;
    const __int128 rhs = static_cast<__int128>(b.num) * a.den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

} // namespace

Frac64 Frac64::from_rational(const BigRat& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    static const BigInt kMax = BigInt(std::numeric_limits<std::int64_t>::max());
    if (num > kMax || -num > kMax || den > kMax)
        throw std::invalid_argument("coordinate does not fit 64-bit exact rational: " + rational_to_string(r));
    Frac64 f;
    f.num = num.convert_to<std::int64_t>();
    f.den = den.convert_to<std::int64_t>();
    const std::int64_t g = gcd64(f.num, f.den);
    if (g > 1) {
        f.num /= g;
        f.den /= g;
    }
    return f;
}

bool operator==(const Frac64& a, const Frac64& b) { return cmp_frac(a, b) == 0; }
bool operator<(const Frac64& a, const Frac64& b) { return cmp_frac(a, b) < 0; }

bool CubeKey::operator<(const CubeKey& other) const {
    if (level != other.level) return level < other.level;
    return coords < other.coords;
}

std::int64_t dyadic_cell_index(const Frac64& x, int level) {
    if (x.num < 0) throw std::domain_error("dyadic_cell_index: coordinate must be >= 0");
    if (level >= 0) {
        if (level > 62) throw ResourceError("dyadic_cell_index: level beyond 62 exceeds exact-key budget");
        const __int128 scaled = static_cast<__int128>(x.num) << level;
        return static_cast<std::int64_t>(scaled / x.den);
    }
    const int up = -level;
    if (up > 62) return 0; // cells wider than 2^62 and coords in [0,1]
    const __int128 den = static_cast<__int128>(x.den) << up;
    return static_cast<std::int64_t>(static_cast<__int128>(x.num) / den);
}

PointCloud::PointCloud(int dimension) : dim_(dimension) {
    if (dimension < 1) throw std::domain_error("PointCloud: dimension must be >= 1");
}

void PointCloud::add_point(std::span<const Frac64> point) {
    if (static_cast<int>(point.size()) != dim_)
        throw std::domain_error("PointCloud::add_point: wrong arity");
    for (const Frac64& c : point) {
        if (c.den <= 0) throw std::domain_error("PointCloud: denominator must be positive");
        if (c.num < 0 || c.num > c.den)
            throw std::domain_error("PointCloud: coordinates must lie in [0,1]");
    }
    coords_.insert(coords_.end(), point.begin(), point.end());
}

void PointCloud::add_point_1d(const Frac64& x) {
    add_point(std::span<const Frac64>(&x, 1));
}

Frac64 PointCloud::coord(std::size_t point, int axis) const {
    return coords_[point * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
}

PointCloud PointCloud::load_csv(std::istream& in) {
    std::string line;
    std::vector<std::vector<Frac64>> rows;
    bool saw_header = false;
    int dim = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!saw_header) {
            // header row "x1,...,xk"
            dim = static_cast<int>(fields.size());
            saw_header = true;
            continue;
        }
        if (static_cast<int>(fields.size()) != dim)
            throw std::invalid_argument("point CSV: row arity does not match header");
        std::vector<Frac64> row;
        row.reserve(fields.size());
        for (const std::string& f : fields) row.push_back(Frac64::from_rational(parse_rational(f)));
        rows.push_back(std::move(row));
    }
    if (!saw_header) throw std::invalid_argument("point CSV: missing header row");
    PointCloud cloud(dim);
    for (const auto& r : rows) cloud.add_point(r);
    return cloud;
}

void PointCloud::save_csv(std::ostream& out, const std::vector<std::string>& comments) const {
    for (const std::string& c : comments) out << "# " << c << "\n";
    for (int i = 0; i < dim_; ++i) out << (i ? "," : "") << "x" << (i + 1);
    out << "\n";
    const std::size_t n = size();
    for (std::size_t p = 0; p < n; ++p) {
        for (int a = 0; a < dim_; ++a) {
            const Frac64 c = coord(p, a);
            if (a) out << ",";
            if (c.den == 1) out << c.num;
            else out << c.num << "/" << c.den;
        }
        out << "\n";
    }
}

int level_for_epsilon(const BigRat& eps) {
    if (eps <= 0) throw std::domain_error("level_for_epsilon: eps must be positive");
    const BigInt p = boost::multiprecision::numerator(eps);
    const BigInt q = boost::multiprecision::denominator(eps);
    // eps <= 2^-n  <=>  p * 2^n <= q   (shifts kept nonnegative on both sides)
    auto le_pow = [&](long n) {
        if (n >= 0) return (p << n) <= q;
        return p <= (q << (-n));
    };
    long n = bit_length(q) - bit_length(p); // first guess, off by at most 1
    while (!le_pow(n)) --n;
    while (le_pow(n + 1)) ++n;
    return static_cast<int>(n);
}

namespace {

// Packs one cell key per point when the bits fit a 128-bit word; falls back
// to lexicographic rows otherwise. Distinct counting only needs sort+unique.
std::int64_t count_distinct_cells(const PointCloud& cloud, int level) {
    const int k = cloud.dimension();
    const std::size_t n = cloud.size();
    const int bits_per_axis = level >= 0 ? level + 1 : 1;
    if (static_cast<long>(bits_per_axis) * k <= 120) {
        std::vector<unsigned __int128> keys(n);
        for (std::size_t p = 0; p < n; ++p) {
            unsigned __int128 key = 0;
            for (int a = 0; a < k; ++a) {
                key <<= bits_per_axis;
                key |= static_cast<unsigned __int128>(dyadic_cell_index(cloud.coord(p, a), level));
            }
            keys[p] = key;
        }
        std::sort(keys.begin(), keys.end());
        return static_cast<std::int64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
    }
    std::vector<std::vector<std::int64_t>> keys(n);
    for (std::size_t p = 0; p < n; ++p) {
        std::vector<std::int64_t> key(static_cast<std::size_t>(k));
        for (int a = 0; a < k; ++a) key[static_cast<std::size_t>(a)] = dyadic_cell_index(cloud.coord(p, a), level);
        keys[p] = std::move(key);
    }
    std::sort(keys.begin(), keys.end());
    return static_cast<std::int64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

} // namespace

std::vector<CubeKey> occupied_cells(const PointCloud& cloud, int level) {
    if (cloud.empty()) throw std::domain_error("occupied_cells: empty cloud");
    const int k = cloud.dimension();
    std::vector<CubeKey> keys;
    keys.reserve(cloud.size());
    for (std::size_t p = 0; p < cloud.size(); ++p) {
        CubeKey key;
        key.level = level;
        key.coords.resize(static_cast<std::size_t>(k));
        for (int a = 0; a < k; ++a) key.coords[static_cast<std::size_t>(a)] = dyadic_cell_index(cloud.coord(p, a), level);
        keys.push_back(std::move(key));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

std::int64_t dyadic_count(const PointCloud& cloud, const BigRat& eps) {
    if (cloud.empty()) throw std::domain_error("dyadic_count: covering number of an empty cloud is undefined");
    return count_distinct_cells(cloud, level_for_epsilon(eps));
}

std::int64_t dyadic_count_at_level(const PointCloud& cloud, int level) {
    if (cloud.empty()) throw std::domain_error("dyadic_count_at_level: empty cloud");
    return count_distinct_cells(cloud, level);
}

std::int64_t dadic_count(const PointCloud& cloud, int base, int depth) {
    if (cloud.empty()) throw std::domain_error("dadic_count: empty cloud");
    if (base < 2) throw std::domain_error("dadic_count: base must be >= 2");
    if (depth < 0) throw std::domain_error("dadic_count: depth must be >= 0");
    const BigInt scale = pow_big(BigInt(base), static_cast<unsigned long>(depth));
    const int k = cloud.dimension();
    std::vector<std::vector<BigInt>> keys(cloud.size());
    for (std::size_t p = 0; p < cloud.size(); ++p) {
        std::vector<BigInt> key(static_cast<std::size_t>(k));
        for (int a = 0; a < k; ++a) {
            const Frac64 c = cloud.coord(p, a);
            key[static_cast<std::size_t>(a)] = (BigInt(c.num) * scale) / BigInt(c.den);
        }
        keys[p] = std::move(key);
    }
    std::sort(keys.begin(), keys.end());
    return static_cast<std::int64_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

std::int64_t interval_cover_1d(const PointCloud& cloud, const BigRat& length) {
    if (cloud.dimension() != 1)
        throw std::domain_error("interval_cover_1d: only 1-D clouds are supported");
    if (cloud.empty()) throw std::domain_error("interval_cover_1d: empty cloud");
    if (length <= 0) throw std::domain_error("interval_cover_1d: length must be positive");
    std::vector<Frac64> pts(cloud.size());
    for (std::size_t p = 0; p < cloud.size(); ++p) pts[p] = cloud.coord(p, 0);
    std::sort(pts.begin(), pts.end());
    std::int64_t count = 0;
    BigRat cover_end;
    bool covering = false;
    for (const Frac64& p : pts) {
        const BigRat x = p.to_rational();
        if (!covering || x > cover_end) {
            ++count;
            cover_end = x + length;
            covering = true;
        }
    }
    return count;
}

std::int64_t ball_cover_1d(const PointCloud& cloud, const BigRat& eps) {
    if (eps <= 0) throw std::domain_error("ball_cover_1d: eps must be positive");
    return interval_cover_1d(cloud, BigRat(2) * eps);
}

SandwichReport sandwich_check(const PointCloud& cloud, const BigRat& eps) {
    SandwichReport rep;
    rep.level = level_for_epsilon(eps);
    rep.ball_cover = ball_cover_1d(cloud, eps);
    rep.cube_cover = interval_cover_1d(cloud, eps);
    rep.cell_count = dyadic_count(cloud, eps);
    // cube_cover <= cell_count needs eps to hit the grid size exactly; for
    // eps strictly inside (2^-(n+1), 2^-n) the cells are wider than eps.
    const bool eps_is_dyadic =
        rep.level >= 0 ? (eps * pow_big(BigInt(2), static_cast<unsigned long>(rep.level)) == 1)
                       : (eps == BigRat(pow_big(BigInt(2), static_cast<unsigned long>(-rep.level))));
    rep.lower_ok = rep.ball_cover <= rep.cell_count &&
                   (!eps_is_dyadic || rep.cube_cover <= rep.cell_count);
    rep.upper_ok = rep.cell_count <= 2 * rep.cube_cover;
    rep.pass = rep.lower_ok && rep.upper_ok;
    return rep;
}

PointCloud product_cloud(const PointCloud& a, const PointCloud& b) {
    if (a.empty() || b.empty()) throw std::domain_error("product_cloud: factors must be non-empty");
    PointCloud out(a.dimension() + b.dimension());
    std::vector<Frac64> row(static_cast<std::size_t>(a.dimension() + b.dimension()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (int ax = 0; ax < a.dimension(); ++ax) row[static_cast<std::size_t>(ax)] = a.coord(i, ax);
        for (std::size_t j = 0; j < b.size(); ++j) {
            for (int ax = 0; ax < b.dimension(); ++ax)
                row[static_cast<std::size_t>(a.dimension() + ax)] = b.coord(j, ax);
            out.add_point(row);
        }
    }
    return out;
}

} // namespace fractaldim
