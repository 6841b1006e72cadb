#include "fractaldim/dimension.hpp"

#include <doctest.h>

#include <cmath>

using namespace fractaldim;

namespace {

const double kLog32 = std::log(2.0) / std::log(3.0);

DigitSchedule cantor() { return DigitSchedule::constant_digits(3, {0, 2}); }

OracleOptions horizon(std::int64_t h) {
    OracleOptions o;
    o.horizon = h;
    return o;
}

} // namespace

TEST_SUITE("dimension") {

TEST_CASE("classical dims of the Cantor schedule") {
    const DimensionReport rep = classical_dims(cantor(), 10000);
    CHECK(rep.limsup_est == doctest::Approx(kLog32).epsilon(1e-6));
    CHECK(rep.liminf_est == doctest::Approx(kLog32).epsilon(1e-6));
    CHECK(rep.classical_exists == Trivalent::Yes);
    REQUIRE(rep.analytic_dim.has_value());
    CHECK(*rep.analytic_dim == doctest::Approx(kLog32).epsilon(1e-12));
}

TEST_CASE("classical dims of the full interval") {
    const DimensionReport rep = classical_dims(DigitSchedule::constant(7, 7), 500);
    CHECK(rep.limsup_est == doctest::Approx(1.0));
    CHECK(rep.liminf_est == doctest::Approx(1.0));
    CHECK(rep.classical_exists == Trivalent::Yes);
}

TEST_CASE("classical dims of the growth-rule partition oscillate") {
    // 8 block pairs: the windowed estimates freeze at the exact rationals
    // f_A(max A_8)/max A_8 = 361992043/406425600 and
    // f_A(T_8)/T_8 = 361992043/3251404800 (block sums via the recurrence)
    auto part = make_ngrowth(1, 1);
    const DigitSchedule a = DigitSchedule::partition(10, part, PartitionRole::A);
    const DimensionReport rep = classical_dims(a, 16);
    CHECK(rep.classical_exists == Trivalent::No);
    CHECK(rep.limsup_est ==
          doctest::Approx(rat_to_double(BigRat(BigInt(361992043), BigInt(406425600)))).epsilon(1e-12));
    CHECK(rep.liminf_est ==
          doctest::Approx(rat_to_double(BigRat(BigInt(361992043), BigInt(3251404800)))).epsilon(1e-12));
    CHECK(rep.liminf_est <= 0.25);
    REQUIRE(rep.analytic_limsup.has_value());
    CHECK(*rep.analytic_limsup == 1.0);
    CHECK(*rep.analytic_liminf == 0.0);

    // role B mirrors the estimates through complementarity
    const DigitSchedule b = DigitSchedule::partition(10, part, PartitionRole::B);
    const DimensionReport rb = classical_dims(b, 16);
    CHECK(rb.limsup_est ==
          doctest::Approx(rat_to_double(BigRat(BigInt(2889412757), BigInt(3251404800)))).epsilon(1e-12));
    CHECK(rb.classical_exists == Trivalent::No);
}

TEST_CASE("report invariant liminf <= limsup") {
    for (std::int64_t depth : {10, 100, 2000}) {
        const DimensionReport rep = classical_dims(make_rational_dim(5, 2, 3), depth);
        CHECK(rep.liminf_est <= rep.limsup_est + 1e-12);
    }
}

TEST_CASE("qdim of a convergent schedule matches the classical value for every oracle") {
    const ScaleSequence scales = ScaleSequence::every_level();
    const double tol = 1e-8;
    for (const std::string spec : {"lazy", "frechet", "tail:even", "tail:odd"}) {
        UltrafilterOracle oracle = oracle_from_spec(spec, scales, nullptr, horizon(100000));
        const double q = qdim(cantor(), scales, oracle, tol);
        CHECK(q == doctest::Approx(kLog32).epsilon(1e-7));
    }
    // rational-dimension blocks schedule, exact arithmetic end to end
    for (const std::string spec : {"lazy", "frechet"}) {
        UltrafilterOracle oracle = oracle_from_spec(spec, scales, nullptr, horizon(100000));
        const double q = qdim(make_rational_dim(2, 1, 2), scales, oracle, tol);
        CHECK(q == doctest::Approx(0.5).epsilon(1e-7));
    }
}

TEST_CASE("qdim of the growth partition under a block-end tail") {
    auto part = make_ngrowth(1, 1);
    const DigitSchedule a = DigitSchedule::partition(10, part, PartitionRole::A);
    const ScaleSequence scales = ScaleSequence::every_level();
    UltrafilterOracle oracle = oracle_from_spec("tail:blockends-A", scales, part, horizon(1000000));
    const double q = qdim(a, scales, oracle, std::pow(2.0, -30));
    CHECK(q >= 0.8);
    CHECK(q <= 1.0);
}

TEST_CASE("qdim complement identity under a shared ledger") {
    auto part = make_ngrowth(1, 1);
    const DigitSchedule a = DigitSchedule::partition(10, part, PartitionRole::A);
    const DigitSchedule b = DigitSchedule::partition(10, part, PartitionRole::B);
    const double tol = std::pow(2.0, -30);
    for (const std::string spec : {"lazy", "tail:blockends-A", "tail:blockends-B"}) {
        const ScaleSequence scales = ScaleSequence::every_level();
        UltrafilterOracle oracle = oracle_from_spec(spec, scales, part, horizon(1000000));
        const auto vals =
            qlim_joint({ratio_sequence(a, scales), ratio_sequence(b, scales)}, oracle, tol);
        CHECK(std::abs(vals[1] - (1.0 - vals[0])) <= 2 * tol);
    }
}

TEST_CASE("product summability: cantor x cantor") {
    const ScaleSequence scales = ScaleSequence::every_level();
    UltrafilterOracle oracle = UltrafilterOracle::lazy_bisect(horizon(100000));
    const double tol = std::pow(2.0, -30);
    const ProductSummabilityReport rep =
        product_summability_check(cantor(), cantor(), scales, oracle, tol, 2000);
    CHECK(rep.qdim_identity_pass);
    CHECK(rep.qdim_discrepancy <= 2 * tol);
    CHECK(rep.qdim_product == doctest::Approx(2 * kLog32).epsilon(1e-6));
    CHECK(rep.classical_applicable);
    CHECK(rep.classical_identity_pass);
    CHECK(rep.classical_discrepancy <= 1e-9);
}

TEST_CASE("product summability: the partition counterexample") {
    auto part = make_ngrowth(1, 1);
    const DigitSchedule a = DigitSchedule::partition(10, part, PartitionRole::A);
    const DigitSchedule b = DigitSchedule::partition(10, part, PartitionRole::B);
    const ScaleSequence scales = ScaleSequence::every_level();
    UltrafilterOracle oracle = UltrafilterOracle::lazy_bisect(horizon(1000000));
    const double tol = std::pow(2.0, -30);
    const ProductSummabilityReport rep = product_summability_check(a, b, scales, oracle, tol, 16);
    CHECK(rep.qdim_identity_pass);
    // the factors have no classical dimension, yet the q-dimensions add up
    CHECK(rep.classical_exists_a == Trivalent::No);
    CHECK(rep.classical_exists_b == Trivalent::No);
    CHECK(!rep.classical_applicable);
    // upper Minkowski dimensions: 1 + 1 = 2 against 1 for the product
    REQUIRE(rep.limsup_sum.has_value());
    REQUIRE(rep.limsup_product.has_value());
    CHECK(*rep.limsup_sum == 2.0);
    CHECK(*rep.limsup_product == 1.0);
}

TEST_CASE("product with a point keeps the dimension") {
    const DigitSchedule point = DigitSchedule::constant(3, 1);
    const ScaleSequence scales = ScaleSequence::every_level();
    UltrafilterOracle oracle = UltrafilterOracle::lazy_bisect(horizon(100000));
    const double tol = 1e-8;
    const ProductSummabilityReport rep =
        product_summability_check(cantor(), point, scales, oracle, tol, 2000);
    CHECK(rep.qdim_identity_pass);
    CHECK(rep.qdim_product == doctest::Approx(rep.qdim_a).epsilon(1e-6));
    CHECK(rep.qdim_b == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("block-end scales with block-indexed tails") {
    auto part = make_ngrowth(1, 1);
    const DigitSchedule a = DigitSchedule::partition(10, part, PartitionRole::A);
    const DigitSchedule b = DigitSchedule::partition(10, part, PartitionRole::B);
    const ScaleSequence scales = ScaleSequence::block_ends(part);
    const double tol = std::pow(2.0, -30);
    UltrafilterOracle oracle =
        oracle_from_spec("tail:blockends-A", scales, part, horizon(scales.default_horizon()));
    const ProductSummabilityReport rep = product_summability_check(a, b, scales, oracle, tol, 16);
    CHECK(rep.qdim_identity_pass);
    // along A-block ends the A-ratio approaches 1
    CHECK(rep.qdim_a >= 0.95);
    CHECK(rep.qdim_b <= 0.05);
}

TEST_CASE("content bracket contains the dimension") {
    std::vector<double> grid;
    for (double s = 0.0; s <= 1.0 + 1e-12; s += 0.01) grid.push_back(s);
    {
        const ContentReport rep = content_dimension_check(cantor(), grid, 1000);
        CHECK(rep.bracket_contains(kLog32));
        CHECK(rep.bracket_contains_limsup);
        CHECK(rep.rows.front().trend == 1); // s = 0: the count itself diverges
        CHECK(rep.rows.back().trend == -1);
        CHECK(rep.transition_estimate == doctest::Approx(kLog32).epsilon(1e-6));
    }
    {
        // full interval: bounded content at s = 1, transition at the edge
        const ContentReport rep = content_dimension_check(DigitSchedule::constant(4, 4), grid, 1000);
        CHECK(rep.bracket_contains(1.0));
        CHECK(rep.rows.back().trend == 0);
    }
    {
        const ContentReport rep = content_dimension_check(make_rational_dim(3, 1, 2), grid, 1000);
        CHECK(rep.bracket_contains(0.5));
        CHECK(rep.bracket_contains_limsup);
    }
}

TEST_CASE("hausdorff bound check") {
    auto part = make_ngrowth(1, 1);
    const DigitSchedule a = DigitSchedule::partition(10, part, PartitionRole::A);
    CHECK(hausdorff_bound_check(a, 16, 0.0).consistent);
    CHECK(hausdorff_bound_check(cantor(), 2000, kLog32).consistent);
    CHECK(hausdorff_bound_check(DigitSchedule::constant(5, 1), 100, 0.0).consistent);
    CHECK_FALSE(hausdorff_bound_check(cantor(), 2000, 0.9).consistent);
}

TEST_CASE("uniqueness of the q-limit on a frozen ledger") {
    auto part = make_ngrowth(1, 1);
    const DigitSchedule a = DigitSchedule::partition(10, part, PartitionRole::A);
    const ScaleSequence scales = ScaleSequence::every_level();
    const SequencePtr seq = ratio_sequence(a, scales);
    UltrafilterOracle oracle = oracle_from_spec("tail:blockends-A", scales, part, horizon(1000000));
    const double tol = 1e-8;
    qlim(seq, oracle, tol);
    CHECK(uniqueness_check(seq, oracle, tol));
}

TEST_CASE("qdim stays within the windowed bounds plus tol") {
    auto part = make_ngrowth(1, 1);
    const DigitSchedule a = DigitSchedule::partition(10, part, PartitionRole::A);
    const ScaleSequence scales = ScaleSequence::every_level();
    const double tol = 1e-7;
    UltrafilterOracle oracle = UltrafilterOracle::lazy_bisect(horizon(1000000));
    const double q = qdim(a, scales, oracle, tol);
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
    // cluster-point property against the final ledger: some visible index
    // carries a ratio within the final interval (clamping adds at most tol)
    const SequencePtr seq = ratio_sequence(a, scales);
    double best = 1e9;
    for (std::int64_t n : oracle.members_up_to(oracle.horizon()))
        best = std::min(best, std::abs(seq->value(n) - q));
    CHECK(best <= 3 * tol);
}

TEST_CASE("convergent partitions agree with qdim across scales and oracles") {
    // cycled explicit lengths converge to the cycle's A-fraction
    auto part = PartitionSchedule::explicit_lengths({BigInt(3), BigInt(1)});
    const DigitSchedule a = DigitSchedule::partition(5, part, PartitionRole::A);
    const DimensionReport rep = classical_dims(a, 4000);
    REQUIRE(rep.analytic_dim.has_value());
    CHECK(*rep.analytic_dim == doctest::Approx(0.75));
    const double tol = 1e-6;
    for (const std::string scale_name : {"every-m", "block-ends"}) {
        const ScaleSequence scales = scale_name == "every-m" ? ScaleSequence::every_level()
                                                             : ScaleSequence::block_ends(part);
        for (const std::string spec : {"lazy", "frechet", "tail:even"}) {
            UltrafilterOracle oracle =
                oracle_from_spec(spec, scales, part, horizon(scales.default_horizon()));
            const double q = qdim(a, scales, oracle, tol);
            // agreement with the classical limit, up to the finite horizon's
            // residual oscillation within a cycle
            CHECK(std::abs(q - 0.75) <= 1e-3);
        }
    }
}

TEST_CASE("scale sequences") {
    const ScaleSequence every = ScaleSequence::every_level();
    CHECK(every.depth_at(7) == 7);
    auto part = make_ngrowth(1, 1);
    const ScaleSequence ends = ScaleSequence::block_ends(part);
    CHECK(ends.depth_at(1) == 1);   // end of A_1
    CHECK(ends.depth_at(2) == 2);   // end of B_1
    CHECK(ends.depth_at(3) == 4);   // end of A_2
    CHECK(ends.depth_at(7) == 288); // end of A_4
    CHECK(ends.default_horizon() < every.default_horizon());
    const ScaleSequence expl = ScaleSequence::explicit_eps({BigRat(1, 3), BigRat(1, 10)}, 3);
    CHECK(expl.depth_at(1) == 1);
    CHECK(expl.depth_at(2) == 2); // 1/27 < 1/10 <= 1/9
    CHECK_THROWS_AS(expl.depth_at(3), std::out_of_range);
    CHECK_THROWS_AS(ScaleSequence::explicit_eps({BigRat(1, 3), BigRat(1, 2)}, 3),
                    std::domain_error);
}

} // TEST_SUITE
