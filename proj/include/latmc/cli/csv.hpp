#pragma once

#include <map>
#include <string>
#include <string_view>

#include "latmc/clusters.hpp"
#include "latmc/observables.hpp"

namespace latmc::cli {

// Columns step,W,U,m.
std::string series_csv(const TimeSeries& series);
TimeSeries parse_series_csv(std::string_view text);

// Columns cluster_id,size.
std::string clusters_csv(const ClusterReport& report);
ClusterReport parse_clusters_csv(std::string_view text);

// One row: n_clusters,U,largest,mean_size,weighted_mean_size.
std::string cluster_summary_csv(const ClusterReport& report);

// Columns value,probability.
std::string marginal_csv(const std::map<double, double>& table);

} // namespace latmc::cli
