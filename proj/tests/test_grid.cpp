#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rfm/grid.hpp"
#include "test_support.hpp"

using namespace rfm;

TEST_CASE("uniform grid covers [0,1] inclusively with constant spacing") {
    auto grid = Grid::uniform(20);
    CHECK(grid->t_count() == 20);
    CHECK(grid->point(0) == 0.0);
    CHECK(grid->point(19) == 1.0);
    CHECK(grid->spacing() == doctest::Approx(1.0 / 19.0).epsilon(1e-14));

    CHECK_THROWS_AS(Grid::uniform(0), ContractError);
    CHECK_THROWS_AS(Grid({0.0, 0.5, 0.6}), ContractError);   // uneven spacing
    CHECK_THROWS_AS(Grid({0.0, 0.0, 1.0}), ContractError);   // not increasing
}

TEST_CASE("grid function validation") {
    auto grid = Grid::uniform(4);
    CHECK_THROWS_AS(make_grid_function(grid, {1.0, 2.0}), ContractError);
    CHECK_THROWS_AS(make_grid_function(grid, {1.0, 2.0, std::nan(""), 0.0}), ContractError);
}

TEST_CASE("inner product examples") {
    auto g20 = Grid::uniform(20);
    auto ones = make_grid_function(g20, std::vector<double>(20, 1.0));
    CHECK(inner(ones, ones) == doctest::Approx(1.0).epsilon(1e-15));

    auto g4 = Grid::uniform(4);
    auto twos = make_grid_function(g4, std::vector<double>(4, 2.0));
    auto threes = make_grid_function(g4, std::vector<double>(4, 3.0));
    CHECK(inner(twos, threes) == doctest::Approx(6.0).epsilon(1e-15));

    // sqrt(2) sin(2 pi t) and sqrt(2) cos(2 pi t) are orthogonal on the
    // inclusive uniform grid: the duplicate endpoint contributes sin = 0.
    std::vector<double> sv(20), cv(20);
    for (std::size_t j = 0; j < 20; ++j) {
        sv[j] = std::numbers::sqrt2 * std::sin(2.0 * std::numbers::pi * g20->point(j));
        cv[j] = std::numbers::sqrt2 * std::cos(2.0 * std::numbers::pi * g20->point(j));
    }
    auto s = make_grid_function(g20, sv);
    auto c = make_grid_function(g20, cv);
    CHECK(std::abs(inner(s, c)) < 1e-10);
}

TEST_CASE("inner product rejects mismatched grids") {
    auto f = make_grid_function(Grid::uniform(4), std::vector<double>(4, 1.0));
    auto g = make_grid_function(Grid::uniform(5), std::vector<double>(5, 1.0));
    CHECK_THROWS_AS(inner(f, g), GridMismatchError);
}

TEST_CASE("norm examples") {
    auto grid = Grid::uniform(7);
    CHECK(norm(make_grid_function(grid, std::vector<double>(7, 0.0))) == 0.0);
    CHECK(norm(make_grid_function(grid, std::vector<double>(7, 1.0))) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(norm(make_grid_function(grid, std::vector<double>(7, -3.5))) ==
          doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("inner product properties on random pairs") {
    RandomStream rng(123, 0);
    auto grid = Grid::uniform(20);
    for (int trial = 0; trial < 200; ++trial) {
        auto f = rfm_test::random_fn(grid, rng);
        auto g = rfm_test::random_fn(grid, rng);

        // Cauchy-Schwarz
        const double fg = inner(f, g);
        CHECK(fg * fg <= inner(f, f) * inner(g, g) + 1e-12);

        // bit-exact symmetry
        CHECK(inner(f, g) == inner(g, f));

        // homogeneity of the norm
        const double a = 4.0 * rng.uniform01() - 2.0;
        GridFunction af = f;
        for (auto& v : af.values) v *= a;
        CHECK(norm(af) == doctest::Approx(std::abs(a) * norm(f)).epsilon(1e-12));
    }
}

TEST_CASE("sample views share rows without copying") {
    auto sample = rfm_test::random_sample(10, 5, 42);
    auto view = sample.view(4, 3);
    CHECK(view.size() == 3);
    CHECK(view.row(0).data() == sample.row(4).data());
    auto sub = view.sub(1, 2);
    CHECK(sub.row(0).data() == sample.row(5).data());
    CHECK_THROWS_AS(sample.view(8, 5), ContractError);
    CHECK_THROWS_AS(view.sub(2, 2), ContractError);
}
