#include "wbansim/stats.h"

#include <doctest.h>

using namespace wbansim;

TEST_CASE("spearman rank correlation")
{
    SUBCASE("perfect inverse ranking is -1")
    {
        CHECK(SpearmanRho({1, 2, 5, 10}, {40, 30, 20, 10}) == doctest::Approx(-1.0));
    }
    SUBCASE("perfect agreement is +1")
    {
        CHECK(SpearmanRho({1, 2, 5, 10}, {3, 4, 9, 12}) == doctest::Approx(1.0));
    }
    SUBCASE("one adjacent swap on four points is -0.8")
    {
        // descending except the first two swapped
        CHECK(SpearmanRho({1, 2, 3, 4}, {30, 40, 20, 10}) == doctest::Approx(-0.8));
    }
    SUBCASE("constant series has undefined correlation, reported as 0")
    {
        CHECK(SpearmanRho({1, 2, 3, 4}, {5, 5, 5, 5}) == doctest::Approx(0.0));
    }
    SUBCASE("monotone transforms do not change the result")
    {
        CHECK(SpearmanRho({1, 2, 5, 10}, {1e3, 1e2, 1e1, 1e0}) == doctest::Approx(-1.0));
    }
}

TEST_CASE("mean, min, max helpers")
{
    std::vector<double> v{3.0, 1.0, 2.0};
    CHECK(Mean(v) == doctest::Approx(2.0));
    CHECK(Min(v) == 1.0);
    CHECK(Max(v) == 3.0);
}
