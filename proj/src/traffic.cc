#include "wbansim/traffic.h"

#include <cmath>
#include <stdexcept>

namespace wbansim {

const char* ToString(Priority p)
{
    switch (p)
    {
    case Priority::None:
        return "none";
    case Priority::Urgent:
        return "urgent";
    case Priority::Normal:
        return "normal";
    }
    return "?";
}

Generator::Generator(ArrivalPattern pattern, TimeUs meanIntervalUs, Priority priority, int node)
    : m_pattern(pattern),
      m_meanUs(meanIntervalUs),
      m_priority(priority),
      m_node(node)
{
    if (pattern == ArrivalPattern::Scripted || pattern == ArrivalPattern::Disabled)
    {
        throw std::invalid_argument("Generator: pattern needs explicit times or is disabled");
    }
    if (meanIntervalUs <= 0)
    {
        throw std::invalid_argument("Generator: mean interval must be positive");
    }
}

Generator::Generator(std::vector<TimeUs> scriptedTimes, Priority priority, int node)
    : m_pattern(ArrivalPattern::Scripted),
      m_priority(priority),
      m_node(node),
      m_script(std::move(scriptedTimes))
{
}

std::optional<TimeUs> Generator::NextArrival(RngStream& rng)
{
    switch (m_pattern)
    {
    case ArrivalPattern::Cbr:
        m_last += m_meanUs;
        return m_last;
    case ArrivalPattern::Poisson:
        m_last += rng.ExponentialUs(m_meanUs); // >= 1 us by construction
        return m_last;
    case ArrivalPattern::Disabled:
        return std::nullopt;
    case ArrivalPattern::Scripted:
        if (m_scriptPos >= m_script.size())
        {
            return std::nullopt;
        }
        {
            TimeUs t = m_script[m_scriptPos++];
            if (t <= m_last && m_scriptPos > 1)
            {
                t = m_last + 1; // keep the 1 us spacing guarantee
            }
            m_last = t;
            return t;
        }
    }
    return std::nullopt;
}

void ArrivalHistory::AddArrival(TimeUs t)
{
    if (m_hasLast)
    {
        AddSample(t - m_last);
    }
    m_last = t;
    m_hasLast = true;
}

void ArrivalHistory::AddSample(TimeUs delta)
{
    if (delta <= 0)
    {
        delta = 1;
    }
    m_samples.push_back(delta);
    while (m_samples.size() > m_window)
    {
        m_samples.pop_front();
    }
}

std::optional<double> ArrivalHistory::MeanUs() const
{
    if (m_samples.empty())
    {
        return std::nullopt;
    }
    double sum = 0.0;
    for (TimeUs s : m_samples)
    {
        sum += static_cast<double>(s);
    }
    return sum / static_cast<double>(m_samples.size());
}

std::optional<double> ArrivalHistory::SigmaUs() const
{
    if (m_samples.size() < 2)
    {
        return std::nullopt;
    }
    double mean = *MeanUs();
    double acc = 0.0;
    for (TimeUs s : m_samples)
    {
        double d = static_cast<double>(s) - mean;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(m_samples.size()));
}

std::optional<double> ArrivalHistory::Cv() const
{
    if (m_samples.size() < 2)
    {
        return std::nullopt;
    }
    double mean = *MeanUs();
    if (mean <= 0.0)
    {
        return std::nullopt;
    }
    return *SigmaUs() / mean;
}

PatternClass Classify(double cv, double threshold)
{
    return cv < threshold ? PatternClass::Cbr : PatternClass::Poisson;
}

UrgentPrediction PredictNextUrgent(const ArrivalHistory& history,
                                   TimeUs lastUrgent,
                                   double guardK,
                                   TimeUs guardMinUs,
                                   TimeUs guardCapUs)
{
    UrgentPrediction pred;
    if (history.Count() < 2)
    {
        return pred; // insufficient history
    }
    double mean = *history.MeanUs();
    double sigma = *history.SigmaUs();
    TimeUs guard = static_cast<TimeUs>(std::llround(guardK * sigma));
    if (guard < guardMinUs)
    {
        guard = guardMinUs;
    }
    if (guard > guardCapUs)
    {
        guard = guardCapUs; // cap prevents starving normal traffic
    }
    pred.expectedAt = lastUrgent + static_cast<TimeUs>(std::llround(mean));
    pred.guardBefore = guard;
    pred.guardAfter = guard;
    pred.valid = true;
    return pred;
}

} // namespace wbansim
