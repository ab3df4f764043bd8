#include "wbansim/channel.h"
#include "wbansim/rng.h"

#include <doctest.h>

#include <stdexcept>

#include <vector>

using namespace wbansim;

namespace {

struct StubSink : FrameSink
{
    std::vector<Frame> received;
    std::vector<TimeUs> at;

    void OnFrameReceived(const Frame& f, TimeUs now) override
    {
        received.push_back(f);
        at.push_back(now);
    }
};

struct ChannelFixture
{
    Topology topo;
    MetricsCollector metrics;
    EventQueue queue;
    FrameTrace trace;
    Channel channel;
    std::vector<StubSink> sinks;

    explicit ChannelFixture(int sensorNodes = 8)
        : topo(sensorNodes),
          metrics(topo.TotalNodes(), PowerConfig{}, 0, true),
          channel(queue, topo, metrics, FrameTimings{}, &trace),
          sinks(static_cast<std::size_t>(topo.TotalNodes()))
    {
        for (int i = 0; i < topo.TotalNodes(); ++i)
        {
            channel.AttachNode(i, &sinks[static_cast<std::size_t>(i)]);
        }
    }

    void Drain() { queue.Run([] { return false; }); }

    Frame MakeData(int dst, TimeUs airtime)
    {
        Frame f;
        f.kind = FrameKind::Data;
        f.dst = dst;
        f.airtime = airtime;
        Packet p;
        p.id = 1;
        f.payload.push_back(p);
        return f;
    }
};

} // namespace

TEST_CASE("a frame reaches a neighbour that listened for its whole duration")
{
    ChannelFixture fx;
    fx.queue.Schedule(0, [&] { fx.channel.SetRadioState(1, RadioState::Listen, 0); });
    fx.queue.Schedule(10, [&] { fx.channel.BeginTransmission(2, fx.MakeData(1, 1000), 10); });
    fx.Drain();
    REQUIRE(fx.sinks[1].received.size() == 1);
    CHECK(fx.sinks[1].at[0] == 1010);
    CHECK(fx.trace.Entries().back().outcome == "delivered");
}

TEST_CASE("two frames overlapping by a single microsecond corrupt each other")
{
    ChannelFixture fx;
    fx.queue.Schedule(0, [&] {
        fx.channel.SetRadioState(1, RadioState::Listen, 0);
        fx.channel.SetRadioState(4, RadioState::Listen, 0);
    });
    fx.queue.Schedule(0, [&] { fx.channel.BeginTransmission(2, fx.MakeData(1, 1000), 0); });
    fx.queue.Schedule(999, [&] { fx.channel.BeginTransmission(5, fx.MakeData(4, 1000), 999); });
    fx.Drain();
    CHECK(fx.sinks[1].received.empty());
    CHECK(fx.sinks[4].received.empty());
    for (const auto& e : fx.trace.Entries())
    {
        CHECK(e.outcome == "corrupted");
    }
}

TEST_CASE("back-to-back frames (end == begin) do not overlap")
{
    ChannelFixture fx;
    fx.queue.Schedule(0, [&] {
        fx.channel.SetRadioState(1, RadioState::Listen, 0);
        fx.channel.SetRadioState(4, RadioState::Listen, 0);
    });
    fx.queue.Schedule(0, [&] { fx.channel.BeginTransmission(2, fx.MakeData(1, 1000), 0); });
    fx.queue.Schedule(1000, [&] { fx.channel.BeginTransmission(5, fx.MakeData(4, 500), 1000); });
    fx.Drain();
    CHECK(fx.sinks[1].received.size() == 1);
    CHECK(fx.sinks[4].received.size() == 1);
}

TEST_CASE("a sleeping destination misses the frame without error")
{
    ChannelFixture fx;
    fx.queue.Schedule(0, [&] { fx.channel.BeginTransmission(2, fx.MakeData(1, 1000), 0); });
    fx.Drain();
    CHECK(fx.sinks[1].received.empty());
    CHECK(fx.trace.Entries().back().outcome == "unheard");
}

TEST_CASE("no phantom delivery: joining mid-frame does not count")
{
    ChannelFixture fx;
    fx.queue.Schedule(0, [&] { fx.channel.BeginTransmission(2, fx.MakeData(1, 1000), 0); });
    fx.queue.Schedule(500, [&] { fx.channel.SetRadioState(1, RadioState::Listen, 500); });
    fx.Drain();
    CHECK(fx.sinks[1].received.empty());
}

TEST_CASE("hearing is limited to adjacent chain neighbours")
{
    ChannelFixture fx;
    fx.queue.Schedule(0, [&] {
        fx.channel.SetRadioState(1, RadioState::Listen, 0);
        fx.channel.SetRadioState(3, RadioState::Listen, 0);
        fx.channel.SetRadioState(4, RadioState::Listen, 0);
    });
    // broadcast so delivery is purely range-gated
    fx.queue.Schedule(0, [&] {
        Frame f = fx.MakeData(kBroadcast, 1000);
        fx.channel.BeginTransmission(2, std::move(f), 0);
    });
    fx.Drain();
    CHECK(fx.sinks[1].received.size() == 1);
    CHECK(fx.sinks[3].received.size() == 1);
    CHECK(fx.sinks[4].received.empty());
}

TEST_CASE("double transmit by one node is a fatal logic error")
{
    ChannelFixture fx;
    bool threw = false;
    fx.queue.Schedule(0, [&] { fx.channel.BeginTransmission(2, fx.MakeData(1, 1000), 0); });
    fx.queue.Schedule(10, [&] {
        try
        {
            fx.channel.BeginTransmission(2, fx.MakeData(1, 1000), 10);
        }
        catch (const std::logic_error&)
        {
            threw = true;
        }
    });
    fx.Drain();
    CHECK(threw);
}

TEST_CASE("carrier sense")
{
    ChannelFixture fx;

    SUBCASE("silent window reports idle after exactly 7 ms")
    {
        bool got = false;
        fx.queue.Schedule(0, [&] {
            fx.channel.CarrierSense(1, [&](bool busy) {
                got = true;
                CHECK_FALSE(busy);
                CHECK(fx.queue.Now() == 7000);
            });
        });
        fx.Drain();
        CHECK(got);
    }
    SUBCASE("transmission spanning the whole window reports busy")
    {
        bool busyResult = false;
        fx.queue.Schedule(0, [&] { fx.channel.BeginTransmission(2, fx.MakeData(1, 20000), 0); });
        fx.queue.Schedule(1000, [&] {
            fx.channel.CarrierSense(4, [&](bool busy) { busyResult = busy; });
        });
        fx.Drain();
        CHECK(busyResult);
    }
    SUBCASE("transmission beginning 3 ms into the window reports busy")
    {
        bool busyResult = false;
        fx.queue.Schedule(0, [&] {
            fx.channel.CarrierSense(4, [&](bool busy) { busyResult = busy; });
        });
        fx.queue.Schedule(3000, [&] { fx.channel.BeginTransmission(2, fx.MakeData(1, 500), 3000); });
        fx.Drain();
        CHECK(busyResult);
    }
    SUBCASE("transmission that ended before the window does not linger")
    {
        bool busyResult = true;
        fx.queue.Schedule(0, [&] { fx.channel.BeginTransmission(2, fx.MakeData(1, 500), 0); });
        fx.queue.Schedule(600, [&] {
            fx.channel.CarrierSense(4, [&](bool busy) { busyResult = busy; });
        });
        fx.Drain();
        CHECK_FALSE(busyResult);
    }
}

TEST_CASE("payload airtime")
{
    CHECK(PayloadAirtimeUs(0, 18780) == 0);
    // 58 bytes at the base rate lands on the 25 ms data-frame duration
    CHECK(PayloadAirtimeUs(58, 18780) == 24707);
    CHECK(PayloadAirtimeUs(58, 37560) == 12354);
    CHECK_THROWS_AS(PayloadAirtimeUs(10, 0), std::invalid_argument);
}

TEST_CASE("airtime is linear up to 1 us rounding")
{
    for (std::uint64_t n : {1ULL, 13ULL, 58ULL, 117ULL})
    {
        TimeUs one = PayloadAirtimeUs(n, 18780);
        TimeUs two = PayloadAirtimeUs(2 * n, 18780);
        CHECK(std::abs(two - 2 * one) <= 1);
    }
}

TEST_CASE("data airtime scales with the data rate")
{
    ChannelFixture fx;
    CHECK(fx.channel.DataAirtimeUs(18780) == 25000); // base rate: the configured duration
    CHECK(fx.channel.DataAirtimeUs(37560) == 12500); // doubled rate halves it
}

TEST_CASE("radio state timeline")
{
    ChannelFixture fx;

    SUBCASE("out-of-order timestamps are a logic error")
    {
        fx.queue.Schedule(100, [&] { fx.channel.SetRadioState(1, RadioState::Listen, 100); });
        fx.Drain();
        CHECK_THROWS_AS(fx.channel.SetRadioState(1, RadioState::Sleep, 50), std::logic_error);
    }
    SUBCASE("same-state set is a legal zero-length no-op")
    {
        fx.channel.SetRadioState(1, RadioState::Sleep, 0);
        fx.channel.SetRadioState(1, RadioState::Sleep, 0);
        CHECK(fx.channel.GetRadioState(1) == RadioState::Sleep);
    }
    SUBCASE("sleep -> listen closes the sleep interval exactly at the switch")
    {
        fx.queue.Schedule(500, [&] { fx.channel.SetRadioState(1, RadioState::Listen, 500); });
        fx.Drain();
        fx.channel.FinalizeTimelines(800);
        const auto& ivs = fx.metrics.Ledger().Intervals(1);
        REQUIRE(ivs.size() == 2);
        CHECK(ivs[0].state == RadioState::Sleep);
        CHECK(ivs[0].end == 500);
        CHECK(ivs[1].state == RadioState::Listen);
        CHECK(ivs[1].start == 500);
        CHECK(ivs[1].end == 800);
    }
}

// Brute-force interval-intersection oracle over randomized small schedules.
TEST_CASE("collision symmetry matches the interval-intersection oracle")
{
    RngStream rng(99, 0, RngPurpose::Misc);
    for (int trial = 0; trial < 1000; ++trial)
    {
        ChannelFixture fx(9); // 10 nodes, ids 0..9
        struct Tx
        {
            int src;
            TimeUs start;
            TimeUs end;
        };
        std::vector<Tx> txs;
        int n = 2 + static_cast<int>(rng.UniformInt(5));
        for (int i = 0; i < n; ++i)
        {
            TimeUs start = static_cast<TimeUs>(rng.UniformInt(300));
            TimeUs air = 1 + static_cast<TimeUs>(rng.UniformInt(100));
            int src = i; // distinct sources; node 9 stays silent
            txs.push_back(Tx{src, start, start + air});
            fx.queue.Schedule(start, [&fx, src, start, air] {
                Frame f;
                f.kind = FrameKind::Data;
                f.dst = kBroadcast;
                f.airtime = air;
                Packet p;
                p.id = 1;
                f.payload.push_back(p);
                fx.channel.BeginTransmission(src, std::move(f), start);
            });
        }
        fx.Drain();

        // oracle: corrupted iff any other interval intersects
        REQUIRE(fx.trace.Entries().size() == static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
        {
            bool expectCorrupt = false;
            for (int j = 0; j < n; ++j)
            {
                if (i != j && txs[i].start < txs[j].end && txs[j].start < txs[i].end)
                {
                    expectCorrupt = true;
                }
            }
            // trace entries are ordered by frame end; find ours by src
            bool found = false;
            for (const auto& e : fx.trace.Entries())
            {
                if (e.src == txs[i].src)
                {
                    CHECK((e.outcome == "corrupted") == expectCorrupt);
                    found = true;
                }
            }
            CHECK(found);
        }
    }
}

TEST_CASE("per-node state intervals tile the whole run")
{
    ChannelFixture fx;
    fx.queue.Schedule(100, [&] { fx.channel.SetRadioState(3, RadioState::Listen, 100); });
    fx.queue.Schedule(400, [&] { fx.channel.SetRadioState(3, RadioState::Transmit, 400); });
    fx.queue.Schedule(900, [&] { fx.channel.SetRadioState(3, RadioState::Sleep, 900); });
    fx.Drain();
    fx.channel.FinalizeTimelines(2000);
    for (int node = 0; node < fx.topo.TotalNodes(); ++node)
    {
        CHECK(fx.metrics.Ledger().NodeAccountedUs(node) == 2000);
    }
}
