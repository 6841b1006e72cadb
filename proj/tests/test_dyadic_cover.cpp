#include "fractaldim/dyadic_cover.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

using namespace fractaldim;

namespace {

PointCloud cloud_1d(const std::vector<std::string>& entries) {
    PointCloud c(1);
    for (const auto& e : entries) c.add_point_1d(Frac64::from_rational(parse_rational(e)));
    return c;
}

// exhaustive minimal cover of 1-D points by closed intervals of a given
// length: an optimal cover can anchor every interval at a point, so search
// all subsets of anchor points (inputs stay tiny)
std::int64_t min_cover_exhaustive(std::vector<BigRat> pts, const BigRat& len) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int n = static_cast<int>(pts.size());
    REQUIRE(n <= 16);
    int best = n;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        const int k = __builtin_popcount(mask);
        if (k >= best) continue;
        bool covered_all = true;
        for (int p = 0; p < n && covered_all; ++p) {
            bool covered = false;
            for (int i = 0; i < n && !covered; ++i)
                if ((mask >> i) & 1u)
                    covered = pts[i] <= pts[p] && pts[p] <= pts[i] + len;
            covered_all = covered;
        }
        if (covered_all) best = k;
    }
    return best;
}

PointCloud random_cloud_1d(std::mt19937_64& rng, int max_points) {
    std::uniform_int_distribution<int> size_dist(1, max_points);
    std::uniform_int_distribution<std::int64_t> num_dist(0, 1LL << 20);
    PointCloud c(1);
    const int n = size_dist(rng);
    for (int i = 0; i < n; ++i) c.add_point_1d(Frac64{num_dist(rng), 1LL << 20});
    return c;
}

} // namespace

TEST_SUITE("dyadic_cover") {

TEST_CASE("level_for_epsilon") {
    CHECK(level_for_epsilon(BigRat(1)) == 0);
    CHECK(level_for_epsilon(BigRat(1, 4)) == 2);
    // 1/8 < 3/16 <= 1/4
    CHECK(level_for_epsilon(BigRat(3, 16)) == 2);
    CHECK(level_for_epsilon(BigRat(1, 3)) == 1);
    CHECK(level_for_epsilon(BigRat(3)) == -2);
    CHECK_THROWS_AS(level_for_epsilon(BigRat(0)), std::domain_error);
    CHECK_THROWS_AS(level_for_epsilon(BigRat(-1, 2)), std::domain_error);
    // defining property on random rationals
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> num(1, 1 << 20), den(1, 1 << 20);
    for (int i = 0; i < 200; ++i) {
        const BigRat eps(num(rng), den(rng));
        const int n = level_for_epsilon(eps);
        const BigRat upper = n >= 0 ? BigRat(1, pow_big(BigInt(2), n)) : BigRat(pow_big(BigInt(2), -n));
        CHECK(eps <= upper);
        CHECK(eps > upper / 2);
    }
}

TEST_CASE("dyadic_count basics") {
    CHECK(dyadic_count(cloud_1d({"0", "1/2"}), BigRat(1, 2)) == 2);
    CHECK(dyadic_count(cloud_1d({"0", "1/4", "1/2", "3/4"}), BigRat(1)) == 1);
    CHECK_THROWS_AS(dyadic_count(PointCloud(1), BigRat(1, 2)), std::domain_error);
}

TEST_CASE("dyadic_count matches brute-force cells on 3-adic points") {
    // depth-4 triadic points with digits {0,2}: sum a_i 3^-i = num / 81
    std::vector<std::int64_t> nums;
    for (int mask = 0; mask < 16; ++mask) {
        std::int64_t num = 0;
        for (int i = 0; i < 4; ++i) {
            const int digit = (mask >> i) & 1 ? 2 : 0;
            num = num * 3 + digit;
        }
        nums.push_back(num);
    }
    PointCloud cloud(1);
    for (std::int64_t n : nums) cloud.add_point_1d(Frac64{n, 81});
    REQUIRE(cloud.size() == 16);
    // independent oracle: occupied level-5 cells via plain integer floor
    std::set<std::int64_t> cells;
    for (std::int64_t n : nums) cells.insert(n * 32 / 81);
    CHECK(dyadic_count(cloud, BigRat(1, 32)) == static_cast<std::int64_t>(cells.size()));
}

TEST_CASE("cell assignment brackets the point") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> num_dist(0, (1LL << 30) - 1);
    for (int i = 0; i < 300; ++i) {
        const Frac64 x{num_dist(rng), 1LL << 30};
        for (int level : {0, 1, 3, 9, 20}) {
            const std::int64_t m = dyadic_cell_index(x, level);
            const BigRat xv = x.to_rational();
            const BigRat w(BigInt(1), pow_big(BigInt(2), static_cast<unsigned long>(level)));
            CHECK(BigRat(m) * w <= xv);
            CHECK(xv < BigRat(m + 1) * w);
        }
    }
}

TEST_CASE("ball_cover_1d") {
    CHECK(ball_cover_1d(cloud_1d({"0"}), BigRat(1, 7)) == 1);
    CHECK(ball_cover_1d(cloud_1d({"0", "1"}), BigRat(1, 2)) == 1);
    CHECK(ball_cover_1d(cloud_1d({"0", "0.3", "0.61"}), parse_rational("0.15")) == 2);
    CHECK_THROWS_AS(ball_cover_1d(PointCloud(2), BigRat(1, 2)), std::domain_error);
}

TEST_CASE("greedy interval cover is optimal") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 25; ++trial) {
        const PointCloud c = random_cloud_1d(rng, 9);
        std::vector<BigRat> pts;
        for (std::size_t p = 0; p < c.size(); ++p) pts.push_back(c.coord(p, 0).to_rational());
        for (int j = 0; j <= 6; j += 2) {
            const BigRat len(BigInt(1), pow_big(BigInt(2), static_cast<unsigned long>(j)));
            CHECK(interval_cover_1d(c, len) == min_cover_exhaustive(pts, len));
        }
    }
}

TEST_CASE("sandwich on pinned examples") {
    {
        const SandwichReport rep = sandwich_check(cloud_1d({"0"}), BigRat(1, 2));
        CHECK(rep.pass);
        CHECK(rep.ball_cover == 1);
        CHECK(rep.cell_count == 1);
    }
    {
        // one radius-1/2 ball covers {0,1}; the cells and side-eps cubes both
        // come out at 2, within the factor-2 sandwich
        const SandwichReport rep = sandwich_check(cloud_1d({"0", "1"}), BigRat(1, 2));
        CHECK(rep.pass);
        CHECK(rep.ball_cover == 1);
        CHECK(rep.cube_cover == 2);
        CHECK(rep.cell_count == 2);
    }
    {
        // clustered points spanning three cells: the ball cover alone would
        // not give the factor-2 upper bound, the side-eps cube cover does
        const SandwichReport rep = sandwich_check(cloud_1d({"0.2", "0.3", "0.6"}), BigRat(1, 4));
        CHECK(rep.pass);
        CHECK(rep.ball_cover == 1);
        CHECK(rep.cell_count == 3);
        CHECK(rep.cube_cover >= 2);
    }
}

TEST_CASE("sandwich holds on random clouds at dyadic scales") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 150; ++trial) {
        const PointCloud c = random_cloud_1d(rng, 50);
        for (int j = 0; j <= 10; ++j) {
            const SandwichReport rep =
                sandwich_check(c, BigRat(BigInt(1), pow_big(BigInt(2), static_cast<unsigned long>(j))));
            REQUIRE(rep.pass);
        }
    }
}

TEST_CASE("product_cloud") {
    const PointCloud a = cloud_1d({"0", "1/3"});
    const PointCloud b = cloud_1d({"0", "1/3", "2/3"});
    const PointCloud p = product_cloud(a, b);
    CHECK(p.dimension() == 2);
    CHECK(p.size() == 6);
    const PointCloud single = product_cloud(cloud_1d({"0"}), cloud_1d({"0"}));
    CHECK(single.size() == 1);
    CHECK(single.coord(0, 0).num == 0);
}

TEST_CASE("count multiplicativity on product clouds") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const PointCloud a = random_cloud_1d(rng, 25);
        const PointCloud b = random_cloud_1d(rng, 25);
        const PointCloud ab = product_cloud(a, b);
        for (int j : {0, 1, 2, 5, 8}) {
            const BigRat eps(BigInt(1), pow_big(BigInt(2), static_cast<unsigned long>(j)));
            CHECK(dyadic_count(ab, eps) == dyadic_count(a, eps) * dyadic_count(b, eps));
        }
    }
}

TEST_CASE("count monotone in eps") {
    std::mt19937_64 rng(3);
    const PointCloud c = random_cloud_1d(rng, 80);
    std::int64_t prev = dyadic_count(c, BigRat(1));
    for (int j = 1; j <= 14; ++j) {
        const std::int64_t cur =
            dyadic_count(c, BigRat(BigInt(1), pow_big(BigInt(2), static_cast<unsigned long>(j))));
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("counts ignore point order") {
    std::mt19937_64 rng(17);
    PointCloud c = random_cloud_1d(rng, 60);
    std::vector<Frac64> pts;
    for (std::size_t p = 0; p < c.size(); ++p) pts.push_back(c.coord(p, 0));
    std::shuffle(pts.begin(), pts.end(), rng);
    PointCloud shuffled(1);
    for (const Frac64& p : pts) shuffled.add_point_1d(p);
    for (int j : {0, 3, 7})
        CHECK(dyadic_count(c, BigRat(BigInt(1), pow_big(BigInt(2), static_cast<unsigned long>(j)))) ==
              dyadic_count(shuffled, BigRat(BigInt(1), pow_big(BigInt(2), static_cast<unsigned long>(j)))));
}

TEST_CASE("csv round trip") {
    const PointCloud a = product_cloud(cloud_1d({"0", "1/3", "0.25"}), cloud_1d({"1/7", "1"}));
    std::stringstream ss;
    a.save_csv(ss, {"demo"});
    const PointCloud b = PointCloud::load_csv(ss);
    REQUIRE(b.dimension() == a.dimension());
    REQUIRE(b.size() == a.size());
    for (std::size_t p = 0; p < a.size(); ++p)
        for (int ax = 0; ax < a.dimension(); ++ax) CHECK(a.coord(p, ax) == b.coord(p, ax));
}

TEST_CASE("csv rejects malformed input") {
    std::stringstream no_header("");
    CHECK_THROWS_AS(PointCloud::load_csv(no_header), std::invalid_argument);
    std::stringstream bad_arity("x1,x2\n0.5\n");
    CHECK_THROWS_AS(PointCloud::load_csv(bad_arity), std::invalid_argument);
    std::stringstream out_of_range("x1\n1.5\n");
    CHECK_THROWS_AS(PointCloud::load_csv(out_of_range), std::domain_error);
}

TEST_CASE("dadic_count agrees with digit structure") {
    // triadic Cantor points at depth 3: occupied 3-adic cells at depth m
    // equal 2^m for m <= 3
    PointCloud cloud(1);
    for (int mask = 0; mask < 8; ++mask) {
        std::int64_t num = 0;
        for (int i = 0; i < 3; ++i) num = num * 3 + (((mask >> i) & 1) ? 2 : 0);
        cloud.add_point_1d(Frac64{num, 27});
    }
    CHECK(dadic_count(cloud, 3, 1) == 2);
    CHECK(dadic_count(cloud, 3, 2) == 4);
    CHECK(dadic_count(cloud, 3, 3) == 8);
}

} // TEST_SUITE
