#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rfm/hs_ops.hpp"
#include "test_support.hpp"

using namespace rfm;

namespace {

GridFunction constant(std::shared_ptr<const Grid> grid, double c) {
    std::vector<double> v(grid->t_count(), c);
    return make_grid_function(std::move(grid), std::move(v));
}

// Unit-norm indicator-style rows: sqrt(T) on one grid point, zero elsewhere.
GridFunction unit_spike(std::shared_ptr<const Grid> grid, std::size_t where) {
    std::vector<double> v(grid->t_count(), 0.0);
    v[where] = std::sqrt(static_cast<double>(grid->t_count()));
    return make_grid_function(std::move(grid), std::move(v));
}

}  // namespace

TEST_CASE("apply examples") {
    auto grid = Grid::uniform(8);
    auto x = unit_spike(grid, 2);
    auto w = make_rank_one(x);
    CHECK(w.norm_sq == doctest::Approx(1.0).epsilon(1e-14));

    // orthogonal input lands in the kernel
    auto y = unit_spike(grid, 5);
    auto out = apply(w, y);
    for (double v : out.values) CHECK(v == 0.0);

    // eigenvector with eigenvalue 1
    auto out2 = apply(w, x);
    for (std::size_t j = 0; j < out2.values.size(); ++j)
        CHECK(out2.values[j] == doctest::Approx(x.values[j]).epsilon(1e-12));

    // constants: <2, 1> = 2, so the image is the constant 4
    auto w2 = make_rank_one(constant(grid, 2.0));
    auto out3 = apply(w2, constant(grid, 1.0));
    for (double v : out3.values) CHECK(v == doctest::Approx(4.0).epsilon(1e-12));

    auto other = make_grid_function(Grid::uniform(9), std::vector<double>(9, 1.0));
    CHECK_THROWS_AS(apply(w, other), GridMismatchError);
}

TEST_CASE("rank-one distance examples") {
    auto grid = Grid::uniform(8);
    auto x = unit_spike(grid, 1);
    auto w = make_rank_one(x);
    CHECK(hs_distance_sq(w, w) == 0.0);

    auto y = unit_spike(grid, 4);
    CHECK(hs_distance_sq(w, make_rank_one(y)) == doctest::Approx(2.0).epsilon(1e-12));

    GridFunction x2 = x;
    for (auto& v : x2.values) v *= 2.0;
    CHECK(hs_distance_sq(w, make_rank_one(x2)) == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("materialize examples") {
    auto grid2 = Grid::uniform(2);
    auto zero = materialize(make_rank_one(constant(grid2, 0.0)));
    for (double v : zero.values()) CHECK(v == 0.0);

    auto ones = materialize(make_rank_one(constant(grid2, 1.0)));
    for (double v : ones.values()) CHECK(v == 1.0);
}

TEST_CASE("frobenius norm examples") {
    auto grid = Grid::uniform(6);
    CovMatrix zero(grid);
    CHECK(frobenius_hs_norm(zero) == 0.0);

    CovMatrix all_ones(grid, std::vector<double>(36, 1.0));
    CHECK(frobenius_hs_norm(all_ones) == doctest::Approx(1.0).epsilon(1e-14));

    auto w = make_rank_one(unit_spike(grid, 3));
    CHECK(frobenius_hs_norm(materialize(w)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cov distance examples") {
    RandomStream rng(7, 0);
    auto grid = Grid::uniform(10);
    auto a = materialize(make_rank_one(rfm_test::random_fn(grid, rng)));
    auto b = materialize(make_rank_one(rfm_test::random_fn(grid, rng)));
    CHECK(cov_hs_distance(a, a) == 0.0);
    CHECK(cov_hs_distance(a, b) == cov_hs_distance(b, a));
}

TEST_CASE("the two distance routes agree on random pairs") {
    RandomStream rng(99, 0);
    for (std::size_t t : {5u, 20u, 101u}) {
        auto grid = Grid::uniform(t);
        for (int trial = 0; trial < 350; ++trial) {
            auto f = rfm_test::random_fn(grid, rng);
            auto g = rfm_test::random_fn(grid, rng, trial % 3 ? 1.0 : 5.0);
            auto wf = make_rank_one(f);
            auto wg = make_rank_one(g);

            const double lemma = hs_distance_sq(wf, wg);
            const double frob = cov_hs_distance(materialize(wf), materialize(wg));
            CHECK(std::abs(lemma - frob * frob) <= 1e-9 * (1.0 + lemma));

            // and against the from-scratch double loop
            const double brute = rfm_test::brute_force_kernel_dist_sq(f.values, g.values);
            CHECK(std::abs(lemma - brute) <= 1e-9 * (1.0 + lemma));
        }
    }
}

TEST_CASE("triangle inequality for materialized operators") {
    RandomStream rng(31, 0);
    auto grid = Grid::uniform(12);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = materialize(make_rank_one(rfm_test::random_fn(grid, rng)));
        auto b = materialize(make_rank_one(rfm_test::random_fn(grid, rng)));
        auto c = materialize(make_rank_one(rfm_test::random_fn(grid, rng)));
        CHECK(cov_hs_distance(a, c) <=
              cov_hs_distance(a, b) + cov_hs_distance(b, c) + 1e-10);
    }
}

TEST_CASE("covariance matrix validation") {
    auto grid = Grid::uniform(3);
    std::vector<double> vals = {1.0, 0.2, 0.0, 0.2, 1.0, 0.0, 0.0, 0.0, 1.0};
    CovMatrix ok(grid, vals);
    CHECK_NOTHROW(ok.validate());
    vals[1] = 0.3;  // break symmetry
    CovMatrix bad(grid, vals);
    CHECK_THROWS_AS(bad.validate(), NumericError);
    CHECK_THROWS_AS(CovMatrix(grid, std::vector<double>(4, 0.0)), ContractError);
}
