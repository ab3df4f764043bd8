#include "wbansim/traffic.h"

#include <doctest.h>

#include <cmath>

using namespace wbansim;

TEST_CASE("CBR arrivals land on exact multiples of the mean")
{
    Generator g(ArrivalPattern::Cbr, 2 * kUsPerSec, Priority::Normal, 1);
    RngStream rng(1, 1, RngPurpose::ArrivalNormal);
    CHECK(*g.NextArrival(rng) == 2 * kUsPerSec);
    CHECK(*g.NextArrival(rng) == 4 * kUsPerSec);
    CHECK(*g.NextArrival(rng) == 6 * kUsPerSec);
}

TEST_CASE("Poisson arrivals: empirical mean interval within 3 sigma")
{
    Generator g(ArrivalPattern::Poisson, 2 * kUsPerSec, Priority::Urgent, 1);
    RngStream rng(7, 1, RngPurpose::ArrivalUrgent);
    const int n = 10000;
    TimeUs prev = 0;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
    {
        TimeUs t = *g.NextArrival(rng);
        CHECK(t > prev); // strictly positive inter-arrivals
        sum += static_cast<double>(t - prev);
        prev = t;
    }
    double meanSec = sum / n / 1e6;
    CHECK(meanSec > 1.94);
    CHECK(meanSec < 2.06);
}

TEST_CASE("scripted generators replay their times and then stop")
{
    Generator g({1000, 2000, 3000}, Priority::Urgent, 2);
    RngStream rng(1, 2, RngPurpose::ArrivalUrgent);
    CHECK(*g.NextArrival(rng) == 1000);
    CHECK(*g.NextArrival(rng) == 2000);
    CHECK(*g.NextArrival(rng) == 3000);
    CHECK_FALSE(g.NextArrival(rng).has_value());
}

TEST_CASE("coefficient of variation")
{
    SUBCASE("constant stream: exactly 0")
    {
        ArrivalHistory h(10);
        for (int i = 0; i < 4; ++i)
        {
            h.AddSample(10000);
        }
        CHECK(*h.Cv() == 0.0);
    }
    SUBCASE("[5, 15] ms: mean 10, population sigma 5, cv 0.5")
    {
        ArrivalHistory h(10);
        h.AddSample(5000);
        h.AddSample(15000);
        CHECK(*h.Cv() == doctest::Approx(0.5));
    }
    SUBCASE("fewer than 2 samples reports insufficient history")
    {
        ArrivalHistory h(10);
        CHECK_FALSE(h.Cv().has_value());
        h.AddSample(1000);
        CHECK_FALSE(h.Cv().has_value());
    }
    SUBCASE("scale invariance: cv(c*samples) == cv(samples)")
    {
        ArrivalHistory a(10);
        ArrivalHistory b(10);
        TimeUs vals[] = {3000, 7000, 5000, 9000, 4000};
        for (TimeUs v : vals)
        {
            a.AddSample(v);
            b.AddSample(v * 3);
        }
        CHECK(*a.Cv() == doctest::Approx(*b.Cv()).epsilon(1e-12));
    }
    SUBCASE("1000 exponential samples: cv in [0.9, 1.1]")
    {
        RngStream rng(11, 1, RngPurpose::Misc);
        ArrivalHistory h(1000);
        for (int i = 0; i < 1000; ++i)
        {
            h.AddSample(rng.ExponentialUs(50000));
        }
        CHECK(*h.Cv() > 0.9);
        CHECK(*h.Cv() < 1.1);
    }
}

TEST_CASE("window keeps only the last W samples")
{
    ArrivalHistory h(3);
    h.AddSample(1);
    h.AddSample(1);
    h.AddSample(1);
    h.AddSample(100);
    CHECK(h.Count() == 3);
    CHECK(*h.MeanUs() == doctest::Approx((1.0 + 1.0 + 100.0) / 3.0));
}

TEST_CASE("classification")
{
    CHECK(Classify(0.0) == PatternClass::Cbr);
    CHECK(Classify(1.0) == PatternClass::Poisson);
    // boundary belongs to the stochastic class
    CHECK(Classify(0.5) == PatternClass::Poisson);
}

TEST_CASE("classifier accuracy: >= 95/100 seeded trials, W=10, 20 arrivals")
{
    int cbrOk = 0;
    int poissonOk = 0;
    for (std::uint32_t trial = 0; trial < 100; ++trial)
    {
        ArrivalHistory cbr(10);
        TimeUs t = 0;
        for (int i = 0; i < 20; ++i)
        {
            t += 500000;
            cbr.AddArrival(t);
        }
        if (Classify(*cbr.Cv()) == PatternClass::Cbr)
        {
            ++cbrOk;
        }

        ArrivalHistory poisson(10);
        RngStream rng(1000 + trial, trial, RngPurpose::ArrivalUrgent);
        t = 0;
        for (int i = 0; i < 20; ++i)
        {
            t += rng.ExponentialUs(500000);
            poisson.AddArrival(t);
        }
        if (Classify(*poisson.Cv()) == PatternClass::Poisson)
        {
            ++poissonOk;
        }
    }
    CHECK(cbrOk >= 95);
    CHECK(poissonOk >= 95);
}

TEST_CASE("next-urgent prediction")
{
    SUBCASE("deterministic history: expected at last + mean, guard floor 50 ms")
    {
        ArrivalHistory h(10);
        h.AddArrival(0);
        h.AddArrival(10 * kUsPerSec);
        h.AddArrival(20 * kUsPerSec);
        auto p = PredictNextUrgent(h, 20 * kUsPerSec, 1.0, 50000, 2000000);
        CHECK(p.valid);
        CHECK(p.expectedAt == 30 * kUsPerSec);
        CHECK(p.guardBefore == 50000);
        CHECK(p.guardAfter == 50000);
    }
    SUBCASE("a single observed arrival is insufficient")
    {
        ArrivalHistory h(10);
        h.AddArrival(0);
        h.AddArrival(5000); // one inter-arrival sample
        auto p = PredictNextUrgent(h, 5000, 1.0, 50000, 2000000);
        CHECK_FALSE(p.valid);
    }
    SUBCASE("guards scale with the observed sigma")
    {
        ArrivalHistory h(10);
        // mean 10 s, population sigma 2 s
        h.AddSample(8 * kUsPerSec);
        h.AddSample(12 * kUsPerSec);
        auto p = PredictNextUrgent(h, 100 * kUsPerSec, 1.0, 50000, 2000000);
        CHECK(p.valid);
        CHECK(p.guardBefore == 2 * kUsPerSec);
        CHECK(p.guardAfter == 2 * kUsPerSec);
    }
    SUBCASE("guards are capped to avoid starving normal traffic")
    {
        ArrivalHistory h(10);
        h.AddSample(1 * kUsPerSec);
        h.AddSample(20 * kUsPerSec);
        auto p = PredictNextUrgent(h, 0, 1.0, 50000, 2000000);
        CHECK(p.valid);
        CHECK(p.guardBefore == 2000000);
    }
}
