#include "wbansim/stats.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wbansim {

namespace {

std::vector<double> AverageRanks(const std::vector<double>& v)
{
    std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n)
    {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]])
        {
            ++j;
        }
        double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k)
        {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

} // namespace

double SpearmanRho(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2)
    {
        throw std::invalid_argument("SpearmanRho: need two equal-length series");
    }
    std::vector<double> rx = AverageRanks(x);
    std::vector<double> ry = AverageRanks(y);
    double mx = Mean(rx);
    double my = Mean(ry);
    double num = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i)
    {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    if (dx == 0.0 || dy == 0.0)
    {
        return 0.0;
    }
    return num / std::sqrt(dx * dy);
}

double Mean(const std::vector<double>& v)
{
    if (v.empty())
    {
        throw std::invalid_argument("Mean of empty vector");
    }
    double s = 0.0;
    for (double d : v)
    {
        s += d;
    }
    return s / static_cast<double>(v.size());
}

double Min(const std::vector<double>& v)
{
    return *std::min_element(v.begin(), v.end());
}

double Max(const std::vector<double>& v)
{
    return *std::max_element(v.begin(), v.end());
}

} // namespace wbansim
