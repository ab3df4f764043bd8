#ifndef WBANSIM_STATS_H
#define WBANSIM_STATS_H

#include <vector>

namespace wbansim {

// Spearman rank correlation with average ranks for ties. Returns 0 when
// either side is constant (undefined correlation).
double SpearmanRho(const std::vector<double>& x, const std::vector<double>& y);

double Mean(const std::vector<double>& v);
double Min(const std::vector<double>& v);
double Max(const std::vector<double>& v);

} // namespace wbansim

#endif // WBANSIM_STATS_H
