#include "wbansim/metrics.h"

#include <doctest.h>

#include <stdexcept>

using namespace wbansim;

TEST_CASE("energy arithmetic on hand-computed intervals")
{
    EnergyLedger ledger(2, PowerConfig{}, false);

    SUBCASE("25 ms transmit at 52.2 mW is 1.305 mJ")
    {
        ledger.RecordInterval(0, RadioState::Transmit, 0, 25000);
        CHECK(ledger.NodeEnergyJ(0) == doctest::Approx(1.305e-3).epsilon(1e-12));
    }
    SUBCASE("9700 ms sleep at 0.06 mW is 0.582 mJ")
    {
        ledger.RecordInterval(0, RadioState::Sleep, 0, 9700000);
        CHECK(ledger.NodeEnergyJ(0) == doctest::Approx(0.582e-3).epsilon(1e-12));
    }
    SUBCASE("empty ledger holds zero energy")
    {
        CHECK(ledger.NodeEnergyJ(0) == 0.0);
        CHECK(ledger.TotalEnergyJ() == 0.0);
    }
}

TEST_CASE("ledger intervals must continue the timeline")
{
    EnergyLedger ledger(1, PowerConfig{}, false);
    ledger.RecordInterval(0, RadioState::Sleep, 0, 100);
    CHECK_THROWS_AS(ledger.RecordInterval(0, RadioState::Listen, 150, 200), std::logic_error);
}

TEST_CASE("average delay")
{
    MetricsCollector m(2, PowerConfig{}, 100);
    Packet p;
    p.priority = Priority::Urgent;

    SUBCASE("no matching records reports no data")
    {
        CHECK_FALSE(m.AverageDelayMs(Priority::Urgent).has_value());
    }
    SUBCASE("single 52 ms record")
    {
        p.generatedAt = 0;
        m.RecordDelivery(p, 52000);
        CHECK(*m.AverageDelayMs(Priority::Urgent) == doctest::Approx(52.0));
    }
    SUBCASE("mean of 52 and 104 ms is 78 ms")
    {
        p.id = 1;
        p.generatedAt = 0;
        m.RecordDelivery(p, 52000);
        p.id = 2;
        p.generatedAt = 1000;
        m.RecordDelivery(p, 105000);
        CHECK(*m.AverageDelayMs(Priority::Urgent) == doctest::Approx(78.0));
    }
    SUBCASE("the priority filter selects only matching records")
    {
        p.id = 1;
        p.priority = Priority::Urgent;
        m.RecordDelivery(p, 10000);
        Packet q;
        q.id = 2;
        q.priority = Priority::Normal;
        m.RecordDelivery(q, 90000);
        CHECK(*m.AverageDelayMs(Priority::Urgent) == doctest::Approx(10.0));
        CHECK(*m.AverageDelayMs(Priority::Normal) == doctest::Approx(90.0));
        CHECK(*m.AverageDelayMs(std::nullopt) == doctest::Approx(50.0));
    }
}

TEST_CASE("deliveries stop counting at the target")
{
    MetricsCollector m(2, PowerConfig{}, 3);
    Packet p;
    for (int i = 1; i <= 5; ++i)
    {
        p.id = static_cast<std::uint64_t>(i);
        m.RecordDelivery(p, i * 1000);
    }
    CHECK(m.Delivered() == 3);
    CHECK(m.StopReached());
}

TEST_CASE("a zero target stops immediately")
{
    MetricsCollector m(2, PowerConfig{}, 0);
    CHECK(m.StopReached());
}

TEST_CASE("attributable energy pools")
{
    MetricsCollector m(2, PowerConfig{}, 100);
    m.ChargeEnergy(AttrClass::Urgent, 1000, 50.0);  // 50,000 nJ
    m.ChargeEnergy(AttrClass::Normal, 2000, 50.0);  // 100,000 nJ
    m.ChargeEnergy(AttrClass::Sync, 4000, 50.0);    // 200,000 nJ
    Packet u;
    u.id = 1;
    u.priority = Priority::Urgent;
    m.RecordDelivery(u, 100);
    Packet n;
    n.id = 2;
    n.priority = Priority::Normal;
    m.RecordDelivery(n, 200);

    // per-class: pool/class-delivered + sync/total-delivered
    CHECK(m.EnergyPerDeliveredMj(Priority::Urgent, false) ==
          doctest::Approx(0.05 + 0.1).epsilon(1e-9));
    CHECK(m.EnergyPerDeliveredMj(Priority::Normal, false) ==
          doctest::Approx(0.1 + 0.1).epsilon(1e-9));
    // class-blind reporting pools everything
    CHECK(m.EnergyPerDeliveredMj(Priority::Urgent, true) ==
          m.EnergyPerDeliveredMj(Priority::Normal, true));
}
