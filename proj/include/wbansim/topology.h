#ifndef WBANSIM_TOPOLOGY_H
#define WBANSIM_TOPOLOGY_H

#include <stdexcept>
#include <string>

namespace wbansim {

// The experimental network: sensor nodes 1..n in a linear chain with the sink
// at id 0 at its head. Static upstream forwarding: node i relays to i-1.
class Topology
{
  public:
    static constexpr int kSinkId = 0;

    explicit Topology(int sensorNodes)
        : m_sensorNodes(sensorNodes)
    {
        if (sensorNodes < 1)
        {
            throw std::invalid_argument("Topology: need at least one sensor node");
        }
    }

    int SensorNodes() const { return m_sensorNodes; }

    // Sensor nodes plus the sink.
    int TotalNodes() const { return m_sensorNodes + 1; }

    int NextHop(int node) const
    {
        if (node == kSinkId)
        {
            throw std::logic_error("Topology::NextHop called on the sink");
        }
        if (node < 0 || node > m_sensorNodes)
        {
            throw std::out_of_range("Topology::NextHop: unknown node " + std::to_string(node));
        }
        return node - 1;
    }

    // Hops from node to the sink along the chain.
    int HopCount(int node) const { return node; }

    // Radio range is adjacent chain neighbours only; carrier sensing stays
    // global on the single shared channel.
    bool Hears(int a, int b) const
    {
        int d = a - b;
        return d == 1 || d == -1;
    }

  private:
    int m_sensorNodes;
};

} // namespace wbansim

#endif // WBANSIM_TOPOLOGY_H
