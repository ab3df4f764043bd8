#include "wbansim/config.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace wbansim {

const char* ToString(Protocol p)
{
    switch (p)
    {
    case Protocol::Adp:
        return "ADP";
    case Protocol::Adp2:
        return "ADP2";
    case Protocol::Mvdr:
        return "MVDR";
    }
    return "?";
}

Protocol ProtocolFromString(const std::string& s)
{
    if (s == "ADP")
    {
        return Protocol::Adp;
    }
    if (s == "ADP2")
    {
        return Protocol::Adp2;
    }
    if (s == "MVDR")
    {
        return Protocol::Mvdr;
    }
    throw ConfigError("unknown protocol '" + s + "' (expected ADP, ADP2 or MVDR)");
}

namespace {

std::string Trim(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
    {
        return "";
    }
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double ParseDouble(const std::string& v)
{
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size())
    {
        throw ConfigError("trailing characters after number '" + v + "'");
    }
    return d;
}

std::int64_t ParseInt(const std::string& v)
{
    std::size_t pos = 0;
    long long i = std::stoll(v, &pos);
    if (pos != v.size())
    {
        throw ConfigError("expected integer, got '" + v + "'");
    }
    return i;
}

bool ParseBool(const std::string& v)
{
    if (v == "true" || v == "1" || v == "yes")
    {
        return true;
    }
    if (v == "false" || v == "0" || v == "no")
    {
        return false;
    }
    throw ConfigError("expected boolean, got '" + v + "'");
}

ArrivalPattern ParsePattern(const std::string& v)
{
    if (v == "cbr")
    {
        return ArrivalPattern::Cbr;
    }
    if (v == "poisson")
    {
        return ArrivalPattern::Poisson;
    }
    if (v == "none")
    {
        return ArrivalPattern::Disabled;
    }
    throw ConfigError("unknown arrival pattern '" + v + "' (expected cbr, poisson or none)");
}

std::vector<std::string> SplitList(const std::string& v)
{
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(v);
    while (std::getline(ss, item, ','))
    {
        item = Trim(item);
        if (!item.empty())
        {
            out.push_back(item);
        }
    }
    return out;
}

TimeUs RequirePositiveMs(const std::string& key, const std::string& v)
{
    double ms = ParseDouble(v);
    if (ms <= 0.0)
    {
        throw ConfigError(key + " must be positive, got " + v);
    }
    return MsToUs(ms);
}

TimeUs RequirePositiveSec(const std::string& key, const std::string& v)
{
    double s = ParseDouble(v);
    if (s <= 0.0)
    {
        throw ConfigError(key + " must be positive, got " + v);
    }
    return SecToUs(s);
}

std::vector<TimeUs> ParseTimeListMs(const std::string& v)
{
    std::vector<TimeUs> out;
    for (const auto& item : SplitList(v))
    {
        out.push_back(MsToUs(ParseDouble(item)));
    }
    return out;
}

using Setter = std::function<void(SimConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& KeyTable()
{
    static const std::map<std::string, Setter> table = {
        {"protocol", [](SimConfig& c, const std::string&, const std::string& v) {
             c.protocol = ProtocolFromString(v);
         }},
        {"seed", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t s = ParseInt(v);
             if (s < 0)
             {
                 throw ConfigError(k + " must be non-negative");
             }
             c.seed = static_cast<std::uint64_t>(s);
         }},
        {"stop_delivered", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 0)
             {
                 throw ConfigError(k + " must be non-negative");
             }
             c.stopDelivered = static_cast<std::uint64_t>(n);
         }},
        {"max_sim_time_s", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.maxSimTimeUs = RequirePositiveSec(k, v);
         }},
        {"nodes", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 1 || n > 1000)
             {
                 throw ConfigError(k + " out of range [1, 1000]");
             }
             c.nodes = static_cast<int>(n);
         }},
        {"queue_capacity", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 1)
             {
                 throw ConfigError(k + " must be at least 1");
             }
             c.queueCapacity = static_cast<int>(n);
         }},
        {"data_bytes", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 1)
             {
                 throw ConfigError(k + " must be positive");
             }
             c.dataBytes = static_cast<std::uint32_t>(n);
         }},
        {"bit_rate_bps", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 1)
             {
                 throw ConfigError(k + " must be positive");
             }
             c.bitRateBps = static_cast<std::uint32_t>(n);
         }},
        {"t_pre_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tPreUs = RequirePositiveMs(k, v);
         }},
        {"t_pre_pause_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tPrePauseUs = RequirePositiveMs(k, v);
         }},
        {"t_ea_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tEaUs = RequirePositiveMs(k, v);
         }},
        {"t_data_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tDataUs = RequirePositiveMs(k, v);
         }},
        {"t_ack_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tAckUs = RequirePositiveMs(k, v);
         }},
        {"t_detect_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tDetectUs = RequirePositiveMs(k, v);
         }},
        {"t_poll_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tPollUs = RequirePositiveMs(k, v);
         }},
        {"t_pi_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tPiUs = RequirePositiveMs(k, v);
         }},
        {"t_add_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tAddUs = RequirePositiveMs(k, v);
         }},
        {"t_cycle_s", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tCycleUs = RequirePositiveSec(k, v);
         }},
        {"t_w_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tWUs = RequirePositiveMs(k, v);
         }},
        {"t_s_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.tSUs = RequirePositiveMs(k, v);
         }},
        {"backoff_slot_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.backoffSlotUs = RequirePositiveMs(k, v);
         }},
        {"cw_max", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 1 || n > 32)
             {
                 throw ConfigError(k + " out of range [1, 32]");
             }
             c.cwMax = static_cast<int>(n);
         }},
        {"cw_urgent", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 1 || n > 32)
             {
                 throw ConfigError(k + " out of range [1, 32]");
             }
             c.cwUrgent = static_cast<int>(n);
         }},
        {"cw_adaptive", [](SimConfig& c, const std::string&, const std::string& v) {
             c.cwAdaptive = ParseBool(v);
         }},
        {"retry_limit", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 0)
             {
                 throw ConfigError(k + " must be non-negative");
             }
             c.retryLimit = static_cast<int>(n);
         }},
        {"max_burst", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 1)
             {
                 throw ConfigError(k + " must be at least 1");
             }
             c.maxBurst = static_cast<int>(n);
         }},
        {"burst_gap_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.burstGapUs = RequirePositiveMs(k, v);
         }},
        {"max_strobe_time_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             double ms = ParseDouble(v);
             if (ms < 0.0)
             {
                 throw ConfigError(k + " must be non-negative (0 = auto)");
             }
             c.maxStrobeTimeUs = MsToUs(ms);
         }},
        {"urgent_pattern", [](SimConfig& c, const std::string&, const std::string& v) {
             c.urgentPattern = ParsePattern(v);
         }},
        {"normal_pattern", [](SimConfig& c, const std::string&, const std::string& v) {
             c.normalPattern = ParsePattern(v);
         }},
        {"urgent_mean_s", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.urgentMeanUs = RequirePositiveSec(k, v);
         }},
        {"normal_mean_s", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.normalMeanUs = RequirePositiveSec(k, v);
         }},
        {"cv_threshold", [](SimConfig& c, const std::string& k, const std::string& v) {
             double d = ParseDouble(v);
             if (d < 0.0)
             {
                 throw ConfigError(k + " must be non-negative");
             }
             c.cvThreshold = d;
         }},
        {"cv_window", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 2)
             {
                 throw ConfigError(k + " must be at least 2");
             }
             c.cvWindow = static_cast<int>(n);
         }},
        {"adapt_distribution", [](SimConfig& c, const std::string&, const std::string& v) {
             c.adaptDistribution = ParseBool(v);
         }},
        {"adapt_polling_mean", [](SimConfig& c, const std::string&, const std::string& v) {
             c.adaptPollingMean = ParseBool(v);
         }},
        {"polling_mean_cap_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.pollingMeanCapUs = RequirePositiveMs(k, v);
         }},
        {"guard_k", [](SimConfig& c, const std::string& k, const std::string& v) {
             double d = ParseDouble(v);
             if (d < 0.0)
             {
                 throw ConfigError(k + " must be non-negative");
             }
             c.guardK = d;
         }},
        {"guard_min_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.guardMinUs = RequirePositiveMs(k, v);
         }},
        {"guard_cap_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.guardCapUs = RequirePositiveMs(k, v);
         }},
        {"interrupt_on_prediction", [](SimConfig& c, const std::string&, const std::string& v) {
             c.interruptOnPrediction = ParseBool(v);
         }},
        {"urgent_strobe_priority", [](SimConfig& c, const std::string&, const std::string& v) {
             c.urgentStrobePriority = ParseBool(v);
         }},
        {"p_tx_mw", [](SimConfig& c, const std::string& k, const std::string& v) {
             double d = ParseDouble(v);
             if (d < 0.0)
             {
                 throw ConfigError(k + " must be non-negative");
             }
             c.pTxMw = d;
         }},
        {"p_listen_mw", [](SimConfig& c, const std::string& k, const std::string& v) {
             double d = ParseDouble(v);
             if (d < 0.0)
             {
                 throw ConfigError(k + " must be non-negative");
             }
             c.pListenMw = d;
         }},
        {"p_rx_mw", [](SimConfig& c, const std::string& k, const std::string& v) {
             double d = ParseDouble(v);
             if (d < 0.0)
             {
                 throw ConfigError(k + " must be non-negative");
             }
             c.pRxMw = d;
         }},
        {"p_idle_mw", [](SimConfig& c, const std::string& k, const std::string& v) {
             double d = ParseDouble(v);
             if (d < 0.0)
             {
                 throw ConfigError(k + " must be non-negative");
             }
             c.pIdleMw = d;
         }},
        {"p_sleep_mw", [](SimConfig& c, const std::string& k, const std::string& v) {
             double d = ParseDouble(v);
             if (d < 0.0)
             {
                 throw ConfigError(k + " must be non-negative");
             }
             c.pSleepMw = d;
         }},
        {"mvdr_period_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.mvdrPeriodUs = RequirePositiveMs(k, v);
         }},
        {"mvdr_beacon_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.mvdrBeaconUs = RequirePositiveMs(k, v);
         }},
        {"mvdr_cap_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.mvdrCapUs = RequirePositiveMs(k, v);
         }},
        {"mvdr_gts_slots", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 1)
             {
                 throw ConfigError(k + " must be at least 1");
             }
             c.mvdrGtsSlots = static_cast<int>(n);
         }},
        {"mvdr_gts_slot_ms", [](SimConfig& c, const std::string& k, const std::string& v) {
             c.mvdrGtsSlotUs = RequirePositiveMs(k, v);
         }},
        {"rate_urgent_bps", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 1)
             {
                 throw ConfigError(k + " must be positive");
             }
             c.rateUrgentBps = static_cast<std::uint32_t>(n);
         }},
        {"sweep_intervals_s", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::vector<TimeUs> list;
             for (const auto& item : SplitList(v))
             {
                 double s = ParseDouble(item);
                 if (s <= 0.0)
                 {
                     throw ConfigError(k + " entries must be positive");
                 }
                 list.push_back(SecToUs(s));
             }
             if (list.empty())
             {
                 throw ConfigError(k + " must not be empty");
             }
             c.sweepIntervalsUs = std::move(list);
         }},
        {"sweep_protocols", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::vector<Protocol> list;
             for (const auto& item : SplitList(v))
             {
                 list.push_back(ProtocolFromString(item));
             }
             if (list.empty())
             {
                 throw ConfigError(k + " must not be empty");
             }
             c.sweepProtocols = std::move(list);
         }},
        {"sweep_seeds", [](SimConfig& c, const std::string& k, const std::string& v) {
             std::int64_t n = ParseInt(v);
             if (n < 1)
             {
                 throw ConfigError(k + " must be at least 1");
             }
             c.sweepSeeds = static_cast<int>(n);
         }},
    };
    return table;
}

// urgent_script_node_<i> / normal_script_node_<i>
bool TryScriptKey(SimConfig& cfg, const std::string& key, const std::string& value)
{
    const std::string uPrefix = "urgent_script_node_";
    const std::string nPrefix = "normal_script_node_";
    const std::string* prefix = nullptr;
    bool urgent = false;
    if (key.rfind(uPrefix, 0) == 0)
    {
        prefix = &uPrefix;
        urgent = true;
    }
    else if (key.rfind(nPrefix, 0) == 0)
    {
        prefix = &nPrefix;
    }
    else
    {
        return false;
    }
    std::string idxStr = key.substr(prefix->size());
    std::int64_t node = ParseInt(idxStr);
    if (node < 1)
    {
        throw ConfigError(key + ": node index must be >= 1");
    }
    auto times = ParseTimeListMs(value);
    std::sort(times.begin(), times.end());
    if (urgent)
    {
        cfg.urgentScript[static_cast<int>(node)] = std::move(times);
    }
    else
    {
        cfg.normalScript[static_cast<int>(node)] = std::move(times);
    }
    return true;
}

std::string FormatDouble(double d)
{
    std::ostringstream os;
    os.precision(15); // enough significant digits for exact us round-trips
    os << d;
    return os.str();
}

std::string FormatMs(TimeUs us)
{
    return FormatDouble(static_cast<double>(us) / 1000.0);
}

std::string FormatSec(TimeUs us)
{
    return FormatDouble(static_cast<double>(us) / 1000000.0);
}

} // namespace

void SimConfig::Validate() const
{
    if (cwUrgent > cwMax)
    {
        throw ConfigError("cw_urgent must not exceed cw_max");
    }
    if (static_cast<std::uint64_t>(nodes) < 1)
    {
        throw ConfigError("nodes must be at least 1");
    }
    if (rateUrgentBps < bitRateBps)
    {
        throw ConfigError("rate_urgent_bps must be at least bit_rate_bps");
    }
    if (protocol == Protocol::Mvdr)
    {
        TimeUs active = mvdrBeaconUs + mvdrCapUs +
                        static_cast<TimeUs>(mvdrGtsSlots) * mvdrGtsSlotUs;
        if (active >= mvdrPeriodUs)
        {
            throw ConfigError("MVDR active layout (beacon + CAP + GTS) exceeds the period");
        }
        // Urgent data plus its ack must fit one GTS slot.
        std::uint64_t scaled = static_cast<std::uint64_t>(tDataUs) * bitRateBps;
        TimeUs urgentData = static_cast<TimeUs>((scaled + rateUrgentBps / 2) / rateUrgentBps);
        if (urgentData + tAckUs > mvdrGtsSlotUs)
        {
            throw ConfigError("urgent data frame plus ACK does not fit mvdr_gts_slot_ms");
        }
    }
    for (const auto& [node, _] : urgentScript)
    {
        if (node > nodes)
        {
            throw ConfigError("urgent_script_node_" + std::to_string(node) +
                              " exceeds node count");
        }
    }
    for (const auto& [node, _] : normalScript)
    {
        if (node > nodes)
        {
            throw ConfigError("normal_script_node_" + std::to_string(node) +
                              " exceeds node count");
        }
    }
}

SimConfig ParseConfigText(const std::string& text, const std::string& sourceName)
{
    SimConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line))
    {
        ++lineNo;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos)
        {
            line = line.substr(0, hash);
        }
        line = Trim(line);
        if (line.empty())
        {
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
        {
            throw ConfigError(sourceName + ":" + std::to_string(lineNo) +
                              ": expected 'key = value', got '" + line + "'");
        }
        std::string key = Trim(line.substr(0, eq));
        std::string value = Trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
        {
            throw ConfigError(sourceName + ":" + std::to_string(lineNo) +
                              ": empty key or value");
        }
        try
        {
            auto it = KeyTable().find(key);
            if (it != KeyTable().end())
            {
                it->second(cfg, key, value);
            }
            else if (!TryScriptKey(cfg, key, value))
            {
                throw ConfigError("unknown key '" + key + "'");
            }
        }
        catch (const ConfigError& e)
        {
            throw ConfigError(sourceName + ":" + std::to_string(lineNo) + ": " + e.what());
        }
        catch (const std::exception& e)
        {
            throw ConfigError(sourceName + ":" + std::to_string(lineNo) + ": bad value for '" +
                              key + "': " + e.what());
        }
    }
    try
    {
        cfg.Validate();
    }
    catch (const ConfigError& e)
    {
        throw ConfigError(sourceName + ": " + e.what());
    }
    return cfg;
}

SimConfig ParseConfigFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ParseConfigText(ss.str(), path);
}

void WriteConfigEcho(const SimConfig& cfg, std::ostream& os)
{
    os << "# resolved configuration\n";
    os << "protocol = " << ToString(cfg.protocol) << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "stop_delivered = " << cfg.stopDelivered << "\n";
    os << "max_sim_time_s = " << FormatSec(cfg.maxSimTimeUs) << "\n";
    os << "nodes = " << cfg.nodes << "\n";
    os << "queue_capacity = " << cfg.queueCapacity << "\n";
    os << "data_bytes = " << cfg.dataBytes << "\n";
    os << "bit_rate_bps = " << cfg.bitRateBps << "\n";
    os << "t_pre_ms = " << FormatMs(cfg.tPreUs) << "\n";
    os << "t_pre_pause_ms = " << FormatMs(cfg.tPrePauseUs) << "\n";
    os << "t_ea_ms = " << FormatMs(cfg.tEaUs) << "\n";
    os << "t_data_ms = " << FormatMs(cfg.tDataUs) << "\n";
    os << "t_ack_ms = " << FormatMs(cfg.tAckUs) << "\n";
    os << "t_detect_ms = " << FormatMs(cfg.tDetectUs) << "\n";
    os << "t_poll_ms = " << FormatMs(cfg.tPollUs) << "\n";
    os << "t_pi_ms = " << FormatMs(cfg.tPiUs) << "\n";
    os << "t_add_ms = " << FormatMs(cfg.tAddUs) << "\n";
    os << "t_cycle_s = " << FormatSec(cfg.tCycleUs) << "\n";
    os << "t_w_ms = " << FormatMs(cfg.tWUs) << "\n";
    os << "t_s_ms = " << FormatMs(cfg.tSUs) << "\n";
    os << "backoff_slot_ms = " << FormatMs(cfg.backoffSlotUs) << "\n";
    os << "cw_max = " << cfg.cwMax << "\n";
    os << "cw_urgent = " << cfg.cwUrgent << "\n";
    os << "cw_adaptive = " << (cfg.cwAdaptive ? "true" : "false") << "\n";
    os << "retry_limit = " << cfg.retryLimit << "\n";
    os << "max_burst = " << cfg.maxBurst << "\n";
    os << "burst_gap_ms = " << FormatMs(cfg.burstGapUs) << "\n";
    os << "max_strobe_time_ms = " << FormatMs(cfg.maxStrobeTimeUs) << "\n";
    auto patternName = [](ArrivalPattern p) {
        switch (p)
        {
        case ArrivalPattern::Cbr:
            return "cbr";
        case ArrivalPattern::Poisson:
            return "poisson";
        default:
            return "none";
        }
    };
    os << "urgent_pattern = " << patternName(cfg.urgentPattern) << "\n";
    os << "normal_pattern = " << patternName(cfg.normalPattern) << "\n";
    os << "urgent_mean_s = " << FormatSec(cfg.urgentMeanUs) << "\n";
    os << "normal_mean_s = " << FormatSec(cfg.normalMeanUs) << "\n";
    os << "cv_threshold = " << FormatDouble(cfg.cvThreshold) << "\n";
    os << "cv_window = " << cfg.cvWindow << "\n";
    os << "adapt_distribution = " << (cfg.adaptDistribution ? "true" : "false") << "\n";
    os << "adapt_polling_mean = " << (cfg.adaptPollingMean ? "true" : "false") << "\n";
    os << "polling_mean_cap_ms = " << FormatMs(cfg.pollingMeanCapUs) << "\n";
    os << "guard_k = " << FormatDouble(cfg.guardK) << "\n";
    os << "guard_min_ms = " << FormatMs(cfg.guardMinUs) << "\n";
    os << "guard_cap_ms = " << FormatMs(cfg.guardCapUs) << "\n";
    os << "interrupt_on_prediction = " << (cfg.interruptOnPrediction ? "true" : "false") << "\n";
    os << "urgent_strobe_priority = " << (cfg.urgentStrobePriority ? "true" : "false") << "\n";
    os << "p_tx_mw = " << FormatDouble(cfg.pTxMw) << "\n";
    os << "p_listen_mw = " << FormatDouble(cfg.pListenMw) << "\n";
    os << "p_rx_mw = " << FormatDouble(cfg.pRxMw) << "\n";
    os << "p_idle_mw = " << FormatDouble(cfg.pIdleMw) << "\n";
    os << "p_sleep_mw = " << FormatDouble(cfg.pSleepMw) << "\n";
    os << "mvdr_period_ms = " << FormatMs(cfg.mvdrPeriodUs) << "\n";
    os << "mvdr_beacon_ms = " << FormatMs(cfg.mvdrBeaconUs) << "\n";
    os << "mvdr_cap_ms = " << FormatMs(cfg.mvdrCapUs) << "\n";
    os << "mvdr_gts_slots = " << cfg.mvdrGtsSlots << "\n";
    os << "mvdr_gts_slot_ms = " << FormatMs(cfg.mvdrGtsSlotUs) << "\n";
    os << "rate_urgent_bps = " << cfg.rateUrgentBps << "\n";
    os << "sweep_intervals_s = ";
    for (std::size_t i = 0; i < cfg.sweepIntervalsUs.size(); ++i)
    {
        os << (i ? "," : "") << FormatSec(cfg.sweepIntervalsUs[i]);
    }
    os << "\n";
    os << "sweep_protocols = ";
    for (std::size_t i = 0; i < cfg.sweepProtocols.size(); ++i)
    {
        os << (i ? "," : "") << ToString(cfg.sweepProtocols[i]);
    }
    os << "\n";
    os << "sweep_seeds = " << cfg.sweepSeeds << "\n";
    for (const auto& [node, times] : cfg.urgentScript)
    {
        os << "urgent_script_node_" << node << " = ";
        for (std::size_t i = 0; i < times.size(); ++i)
        {
            os << (i ? "," : "") << FormatMs(times[i]);
        }
        os << "\n";
    }
    for (const auto& [node, times] : cfg.normalScript)
    {
        os << "normal_script_node_" << node << " = ";
        for (std::size_t i = 0; i < times.size(); ++i)
        {
            os << (i ? "," : "") << FormatMs(times[i]);
        }
        os << "\n";
    }
}

} // namespace wbansim
