#ifndef WBANSIM_FRAME_H
#define WBANSIM_FRAME_H

#include "wbansim/sim-time.h"
#include "wbansim/traffic.h"

#include <cstdint>
#include <vector>

namespace wbansim {

enum class FrameKind : std::uint8_t
{
    PreambleStrobe,
    EarlyAck,
    Data,
    Ack,
    BlockAck,
    Beacon,
};

const char* ToString(FrameKind k);

enum class RadioState : std::uint8_t
{
    Sleep,
    Idle,
    Listen,
    Receive,
    Transmit,
};

const char* ToString(RadioState s);

constexpr int kBroadcast = -1;

struct Frame
{
    FrameKind kind = FrameKind::Data;
    int src = 0;
    int dst = kBroadcast;
    Priority priority = Priority::None; // strobes carry the burst's priority flag
    TimeUs airtime = 0;
    std::vector<Packet> payload;          // Data: the carried packets
    std::vector<std::uint64_t> ackedIds;  // Ack/BlockAck
    bool morePending = false;             // Data: burst continues after this frame
};

} // namespace wbansim

#endif // WBANSIM_FRAME_H
