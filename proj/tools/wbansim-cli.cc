// Command-line front end: experiment sweeps, plot-data extraction and
// frame-level traces for FSM debugging.

#include "wbansim/simulation.h"
#include "wbansim/sweep.h"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace wbansim;

namespace {

std::string ReadFile(const fs::path& p)
{
    std::ifstream in(p);
    if (!in)
    {
        throw std::runtime_error("cannot open " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int RunSimulate(const std::string& configPath,
                const std::string& outDir,
                int seedsOverride,
                int parallel,
                bool resume)
{
    SimConfig base = ParseConfigFile(configPath);
    SweepSpec spec = SweepSpec::FromConfig(base);
    if (seedsOverride > 0)
    {
        spec.seedsPerPoint = seedsOverride;
    }

    fs::create_directories(outDir);
    fs::path csvPath = fs::path(outDir) / "results.csv";

    std::vector<RunSummary> existing;
    std::vector<RunKey> skip;
    if (resume && fs::exists(csvPath))
    {
        existing = ParseResultsCsv(ReadFile(csvPath));
        for (const auto& r : existing)
        {
            skip.push_back(RunKey{r.protocol, r.intervalUrgentUs, r.seed});
        }
        std::cerr << "resuming: " << existing.size() << " rows already present\n";
    }

    std::vector<RunSummary> rows = RunSweep(base, spec, parallel, skip);
    rows.insert(rows.end(), existing.begin(), existing.end());
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

    {
        std::ofstream os(csvPath);
        WriteResultsCsv(rows, os);
    }
    {
        std::ofstream os(fs::path(outDir) / "config.echo");
        WriteConfigEcho(base, os);
    }
    std::cerr << "wrote " << rows.size() << " rows to " << csvPath.string() << "\n";
    return 0;
}

int RunPlotData(const std::string& csvPath, const std::string& outDir)
{
    auto rows = ParseResultsCsv(ReadFile(csvPath));
    if (rows.empty())
    {
        std::cerr << "error: empty results file\n";
        return 1;
    }
    EmitPlotData(rows, outDir);
    std::cerr << "series written to " << outDir << "\n";
    return 0;
}

int RunTrace(const std::string& configPath, bool frames, bool arrivals)
{
    SimConfig cfg = ParseConfigFile(configPath);
    Simulation sim(cfg, /*enableTrace=*/frames || arrivals);
    RunSummary row = sim.Run();
    if (frames)
    {
        sim.Trace().WriteTsv(std::cout);
    }
    if (arrivals)
    {
        sim.WriteArrivalsCsv(std::cout);
    }
    std::cerr << ResultsCsvHeader() << "\n" << ToCsvRow(row) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete-event simulator for prioritized duty-cycled WBAN MAC protocols "
                 "(ADP-MAC, ADP2-MAC, MVDR)"};
    app.require_subcommand(1);

    std::string configPath;
    std::string outDir = "out";
    std::string csvPath;
    int seeds = 0;
    int parallel = 1;
    bool resume = false;
    bool frames = false;
    bool arrivals = false;

    auto* simulate = app.add_subcommand("simulate", "run the configured experiment sweep");
    simulate->add_option("--config", configPath, "config file")->required();
    simulate->add_option("--out", outDir, "output directory");
    simulate->add_option("--seeds", seeds, "seeds per sweep point (overrides config)");
    simulate->add_option("--parallel", parallel, "worker threads");
    simulate->add_flag("--resume", resume, "skip rows already present in results.csv");

    auto* plotdata = app.add_subcommand("plotdata", "emit per-figure series from results.csv");
    plotdata->add_option("--csv", csvPath, "results.csv path")->required();
    plotdata->add_option("--out", outDir, "series output directory")->required();

    auto* trace = app.add_subcommand("trace", "single run with frame-level trace on stdout");
    trace->add_option("--config", configPath, "config file")->required();
    trace->add_flag("--frames", frames, "print the frame trace");
    trace->add_flag("--arrivals", arrivals, "print the arrivals CSV");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (simulate->parsed())
        {
            return RunSimulate(configPath, outDir, seeds, parallel, resume);
        }
        if (plotdata->parsed())
        {
            return RunPlotData(csvPath, outDir);
        }
        if (trace->parsed())
        {
            return RunTrace(configPath, frames, arrivals);
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
