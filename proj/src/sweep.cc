#include "wbansim/sweep.h"

#include "wbansim/stats.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace wbansim {

namespace {

std::string Fmt(double d)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", d);
    return buf;
}

std::string FmtOpt(const std::optional<double>& d)
{
    return d ? Fmt(*d) : "";
}

std::vector<std::string> SplitCsvLine(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        char c = line[i];
        if (quoted)
        {
            if (c == '"')
            {
                if (i + 1 < line.size() && line[i + 1] == '"')
                {
                    cur += '"';
                    ++i;
                }
                else
                {
                    quoted = false;
                }
            }
            else
            {
                cur += c;
            }
        }
        else if (c == '"')
        {
            quoted = true;
        }
        else if (c == ',')
        {
            fields.push_back(cur);
            cur.clear();
        }
        else
        {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

SimConfig ConfigForRun(const SimConfig& base, const RunKey& key)
{
    SimConfig cfg = base;
    cfg.protocol = key.protocol;
    cfg.urgentMeanUs = key.intervalUs;
    cfg.normalMeanUs = key.intervalUs;
    cfg.seed = key.seed;
    return cfg;
}

std::vector<RunSummary> RunSweep(const SimConfig& base,
                                 const SweepSpec& spec,
                                 int parallel,
                                 const std::vector<RunKey>& skip)
{
    std::vector<RunKey> keys;
    for (Protocol p : spec.protocols)
    {
        for (TimeUs interval : spec.intervalsUs)
        {
            for (int s = 0; s < spec.seedsPerPoint; ++s)
            {
                RunKey key{p, interval, spec.baseSeed + static_cast<std::uint64_t>(s)};
                if (std::find(skip.begin(), skip.end(), key) == skip.end())
                {
                    keys.push_back(key);
                }
            }
        }
    }

    std::vector<RunSummary> rows(keys.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;)
        {
            std::size_t i = next.fetch_add(1);
            if (i >= keys.size())
            {
                return;
            }
            SimConfig cfg = ConfigForRun(base, keys[i]);
            try
            {
                Simulation sim(cfg);
                rows[i] = sim.Run();
            }
            catch (const std::exception&)
            {
                RunSummary failed;
                failed.protocol = keys[i].protocol;
                failed.intervalUrgentUs = keys[i].intervalUs;
                failed.intervalNormalUs = keys[i].intervalUs;
                failed.seed = keys[i].seed;
                failed.status = "failed";
                rows[i] = failed; // a broken run never aborts the sweep
            }
        }
    };

    int workers = std::max(1, parallel);
    if (workers == 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
        {
            pool.emplace_back(worker);
        }
        for (auto& t : pool)
        {
            t.join();
        }
    }

    std::sort(rows.begin(), rows.end(), [](const RunSummary& a, const RunSummary& b) {
        if (a.protocol != b.protocol)
        {
            return a.protocol < b.protocol;
        }
        if (a.intervalUrgentUs != b.intervalUrgentUs)
        {
            return a.intervalUrgentUs < b.intervalUrgentUs;
        }
        return a.seed < b.seed;
    });
    return rows;
}

std::string ResultsCsvHeader()
{
    return "protocol,mean_interval_urgent_s,mean_interval_normal_s,seed,"
           "generated,delivered,delivered_urgent,delivered_normal,"
           "dropped_overflow,dropped_retry,pdr,"
           "avg_delay_urgent_ms,avg_delay_normal_ms,"
           "energy_total_J,energy_per_node_J,energy_per_delivered_mJ,"
           "energy_per_delivered_urgent_mJ,energy_per_delivered_normal_mJ,"
           "status,end_time_us";
}

std::string ToCsvRow(const RunSummary& r)
{
    std::ostringstream os;
    os << ToString(r.protocol) << ',';
    os << Fmt(UsToSec(r.intervalUrgentUs)) << ',';
    os << Fmt(UsToSec(r.intervalNormalUs)) << ',';
    os << r.seed << ',';
    os << r.generated << ',' << r.delivered << ',' << r.deliveredUrgent << ','
       << r.deliveredNormal << ',';
    os << r.droppedOverflow << ',' << r.droppedRetry << ',';
    os << Fmt(r.pdr) << ',';
    os << FmtOpt(r.avgDelayUrgentMs) << ',' << FmtOpt(r.avgDelayNormalMs) << ',';
    os << Fmt(r.energyTotalJ) << ',';
    os << '"';
    for (std::size_t i = 0; i < r.energyPerNodeJ.size(); ++i)
    {
        os << (i ? ";" : "") << Fmt(r.energyPerNodeJ[i]);
    }
    os << '"' << ',';
    os << Fmt(r.energyPerDeliveredMj) << ',';
    os << Fmt(r.energyPerDeliveredUrgentMj) << ',';
    os << Fmt(r.energyPerDeliveredNormalMj) << ',';
    os << r.status << ',';
    os << r.endTimeUs;
    return os.str();
}

void WriteResultsCsv(const std::vector<RunSummary>& rows, std::ostream& os)
{
    os << ResultsCsvHeader() << "\n";
    for (const auto& r : rows)
    {
        os << ToCsvRow(r) << "\n";
    }
}

std::vector<RunSummary> ParseResultsCsv(const std::string& text)
{
    std::vector<RunSummary> rows;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
        {
            line.pop_back();
        }
        if (line.empty())
        {
            continue;
        }
        if (first)
        {
            first = false;
            if (line.rfind("protocol,", 0) == 0)
            {
                continue; // header
            }
        }
        auto f = SplitCsvLine(line);
        if (f.size() < 20)
        {
            throw std::runtime_error("results.csv: malformed row '" + line + "'");
        }
        RunSummary r;
        r.protocol = ProtocolFromString(f[0]);
        r.intervalUrgentUs = SecToUs(std::stod(f[1]));
        r.intervalNormalUs = SecToUs(std::stod(f[2]));
        r.seed = std::stoull(f[3]);
        r.generated = std::stoull(f[4]);
        r.delivered = std::stoull(f[5]);
        r.deliveredUrgent = std::stoull(f[6]);
        r.deliveredNormal = std::stoull(f[7]);
        r.droppedOverflow = std::stoull(f[8]);
        r.droppedRetry = std::stoull(f[9]);
        r.pdr = std::stod(f[10]);
        if (!f[11].empty())
        {
            r.avgDelayUrgentMs = std::stod(f[11]);
        }
        if (!f[12].empty())
        {
            r.avgDelayNormalMs = std::stod(f[12]);
        }
        r.energyTotalJ = std::stod(f[13]);
        {
            std::stringstream ss(f[14]);
            std::string part;
            while (std::getline(ss, part, ';'))
            {
                if (!part.empty())
                {
                    r.energyPerNodeJ.push_back(std::stod(part));
                }
            }
        }
        r.energyPerDeliveredMj = std::stod(f[15]);
        r.energyPerDeliveredUrgentMj = std::stod(f[16]);
        r.energyPerDeliveredNormalMj = std::stod(f[17]);
        r.status = f[18];
        r.endTimeUs = std::stoll(f[19]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void EmitPlotData(const std::vector<RunSummary>& rows, const std::string& outDir)
{
    if (rows.empty())
    {
        throw std::runtime_error("EmitPlotData: no rows");
    }
    namespace fs = std::filesystem;
    fs::create_directories(outDir);

    // (protocol, interval) -> per-seed values
    struct Cell
    {
        std::vector<double> delayUrgent, delayNormal, energyUrgent, energyNormal;
    };
    std::map<Protocol, std::map<TimeUs, Cell>> grid;
    for (const auto& r : rows)
    {
        if (r.status != "ok")
        {
            continue;
        }
        Cell& c = grid[r.protocol][r.intervalUrgentUs];
        if (r.avgDelayUrgentMs)
        {
            c.delayUrgent.push_back(*r.avgDelayUrgentMs);
        }
        if (r.avgDelayNormalMs)
        {
            c.delayNormal.push_back(*r.avgDelayNormalMs);
        }
        c.energyUrgent.push_back(r.energyPerDeliveredUrgentMj);
        c.energyNormal.push_back(r.energyPerDeliveredNormalMj);
    }

    auto writeSeries = [&](Protocol p, const char* prio, const char* metric,
                           std::vector<double> Cell::* member) {
        std::ostringstream name;
        name << ToString(p) << "_" << prio << "_" << metric << ".tsv";
        std::ofstream os(fs::path(outDir) / name.str());
        os << "interval_s\tmean\tmin\tmax\n";
        for (const auto& [interval, cell] : grid[p])
        {
            const std::vector<double>& v = cell.*member;
            if (v.empty())
            {
                continue;
            }
            os << Fmt(UsToSec(interval)) << '\t' << Fmt(Mean(v)) << '\t' << Fmt(Min(v)) << '\t'
               << Fmt(Max(v)) << "\n";
        }
    };

    for (const auto& [p, _] : grid)
    {
        writeSeries(p, "urgent", "delay", &Cell::delayUrgent);
        writeSeries(p, "normal", "delay", &Cell::delayNormal);
        writeSeries(p, "urgent", "energy", &Cell::energyUrgent);
        writeSeries(p, "normal", "energy", &Cell::energyNormal);
    }
}

} // namespace wbansim
