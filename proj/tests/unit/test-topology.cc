#include "wbansim/topology.h"

#include <doctest.h>

#include <stdexcept>

using namespace wbansim;

TEST_CASE("chain forwarding")
{
    Topology topo(8);
    CHECK(topo.NextHop(8) == 7);
    CHECK(topo.NextHop(1) == Topology::kSinkId);
    CHECK(topo.HopCount(8) == 8);
    CHECK_THROWS_AS(topo.NextHop(Topology::kSinkId), std::logic_error);
}

TEST_CASE("hop trace from any node is strictly decreasing to the sink")
{
    Topology topo(8);
    for (int start = 1; start <= 8; ++start)
    {
        int hops = 0;
        int node = start;
        int prev = start + 1;
        while (node != Topology::kSinkId)
        {
            CHECK(node < prev);
            prev = node;
            node = topo.NextHop(node);
            ++hops;
        }
        CHECK(hops == topo.HopCount(start));
    }
}

TEST_CASE("radio range is adjacent neighbours only")
{
    Topology topo(8);
    CHECK(topo.Hears(0, 1));
    CHECK(topo.Hears(1, 0));
    CHECK(topo.Hears(4, 5));
    CHECK_FALSE(topo.Hears(0, 2));
    CHECK_FALSE(topo.Hears(3, 3));
}
