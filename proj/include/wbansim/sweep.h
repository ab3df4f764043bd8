#ifndef WBANSIM_SWEEP_H
#define WBANSIM_SWEEP_H

#include "wbansim/config.h"
#include "wbansim/simulation.h"

#include <ostream>
#include <string>
#include <vector>

namespace wbansim {

// Experiment grid: one run per (protocol x interval x seed). The interval is
// applied to both the urgent and the normal generation mean.
struct SweepSpec
{
    std::vector<Protocol> protocols;
    std::vector<TimeUs> intervalsUs;
    int seedsPerPoint = 10;
    std::uint64_t baseSeed = 1;

    static SweepSpec FromConfig(const SimConfig& cfg)
    {
        SweepSpec s;
        s.protocols = cfg.sweepProtocols;
        s.intervalsUs = cfg.sweepIntervalsUs;
        s.seedsPerPoint = cfg.sweepSeeds;
        s.baseSeed = cfg.seed;
        return s;
    }
};

// Key identifying a sweep row (for --resume).
struct RunKey
{
    Protocol protocol;
    TimeUs intervalUs;
    std::uint64_t seed;

    bool operator<(const RunKey& o) const
    {
        if (protocol != o.protocol)
        {
            return protocol < o.protocol;
        }
        if (intervalUs != o.intervalUs)
        {
            return intervalUs < o.intervalUs;
        }
        return seed < o.seed;
    }
    bool operator==(const RunKey& o) const
    {
        return protocol == o.protocol && intervalUs == o.intervalUs && seed == o.seed;
    }
};

SimConfig ConfigForRun(const SimConfig& base, const RunKey& key);

// Runs the grid (optionally on several worker threads; the output is
// deterministic regardless of the parallelism degree) and returns rows sorted
// by (protocol, interval, seed). Rows whose keys appear in `skip` are not
// re-run. A failing run contributes a status=failed row; the sweep continues.
std::vector<RunSummary> RunSweep(const SimConfig& base,
                                 const SweepSpec& spec,
                                 int parallel = 1,
                                 const std::vector<RunKey>& skip = {});

std::string ResultsCsvHeader();
std::string ToCsvRow(const RunSummary& row);
void WriteResultsCsv(const std::vector<RunSummary>& rows, std::ostream& os);

// Minimal reader for the simulator's own results.csv (resume + plot data).
std::vector<RunSummary> ParseResultsCsv(const std::string& text);

// Per-figure series: for every protocol x priority, a TSV with columns
// interval_s, mean, min, max over seeds, for delay and for energy.
void EmitPlotData(const std::vector<RunSummary>& rows, const std::string& outDir);

} // namespace wbansim

#endif // WBANSIM_SWEEP_H
