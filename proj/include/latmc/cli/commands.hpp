#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latmc/cli/run_config.hpp"
#include "latmc/oracle.hpp"

namespace latmc::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitContract = 3;

/**
 * `run`: writes into the output directory
 *   run_config.txt                 canonical configuration
 *   series.csv                     step,W,U,m
 *   snapshots/step_<n>.{pgm,txt,lat}  every snapshot_every steps
 *   final.{pgm,txt,lat}            final state (plane image, grid, full dump)
 *   clusters.csv                   cluster_id,size of the final state
 *   cluster_summary.csv
 *   checkpoints/step_<n>.ckpt      every checkpoint_every steps and at stop_at
 * Returns true when the run reached its step budget, false when it stopped
 * at stop_at.
 */
bool cmd_run(const RunConfig& config, std::ostream& log);

// Continues from a checkpoint. `config` must hash equal to the writer's.
bool cmd_resume(const std::string& checkpoint_path, const RunConfig& config, std::ostream& log);

// Recovers the RunConfig stored in a checkpoint (checkpoint settings
// included, stop_at cleared). The output directory is the one containing the
// checkpoints/ folder the file sits in.
RunConfig config_from_checkpoint(const std::string& checkpoint_path);

struct SweepRow {
    double temperature = 0.0;
    std::uint64_t seed = 0;
    double mean_abs_m = 0.0;
    double mean_u = 0.0;
    double mean_n_clusters = 0.0;
    std::size_t samples = 0;
};

// One chain per (T, seed) with seeds seed, seed+1, ...; averages over
// measurements at step >= steps/2. Writes summary.csv plus per-chain
// series under T<T>_seed<seed>/.
std::vector<SweepRow> cmd_sweep(const RunConfig& config, std::ostream& log);
std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string cmd_enumerate(const RunConfig& config, Observable observable);

// Cluster report CSV for a snapshot file; the summary goes to `log`.
std::string cmd_clusters(const std::string& snapshot_path, std::ostream& log);

// Full command-line entry point. Returns the process exit code.
int run_main(int argc, char** argv, std::ostream& out, std::ostream& err);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

} // namespace latmc::cli
