#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "latmc/errors.hpp"
#include "latmc/lattice.hpp"
#include "latmc/model.hpp"
#include "latmc/sampler.hpp"

namespace latmc::cli {

// Malformed or inconsistent run configuration. The message carries
// "<source>:<line>: " when the offending key came from a file.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct CouplingSpec {
    enum class Kind { uniform, plus_minus, interval };
    Kind kind = Kind::uniform;
    double j = 1.0;
    double lo = -1.0;
    double hi = 1.0;
    std::uint64_t disorder_seed = 0;
};

inline constexpr std::string_view kOutputDirEnv = "LATMC_OUTPUT_DIR";
inline constexpr std::string_view kDefaultOutputDir = "latmc_out";

/**
 * Everything a run needs. Read from flat `key = value` files ('#' starts a
 * comment); command-line flags use the same key names and win over the file.
 *
 * Keys (defaults in parentheses):
 *   lengths               axis lengths, e.g. 60,60,60 or 60x60x60 (required)
 *   T                     temperature (required)
 *   steps                 elementary trial moves (required for run/sweep)
 *   seed                  chain seed (1)
 *   coupling              uniform | pm | interval (uniform)
 *   J                     uniform coupling, or magnitude for pm (1)
 *   J_lo, J_hi            interval bounds (-1, 1)
 *   disorder_seed         seed for pm/interval bond sampling (0)
 *   schedule              random_site | sequential_sweep (random_site)
 *   init                  random | all_corrupt | all_honest (random)
 *   p_corrupt             corrupt probability for random init (0.5)
 *   measure_every         steps between measurements (10000)
 *   snapshot_every        steps between snapshots, 0 = final only (0)
 *   snapshot_axis         axis held fixed for 3D plane images (0)
 *   snapshot_index        plane index along that axis (middle)
 *   objective_convention  bond_once | literal (bond_once)
 *   output                output directory ($LATMC_OUTPUT_DIR or latmc_out)
 *   checkpoint_every      steps between checkpoints, 0 = off (0)
 *   stop_at               stop and checkpoint at this step, 0 = off (0)
 *   temperatures          sweep temperature list, e.g. 0.5,4,5
 *   seeds_per_T           sweep chains per temperature (1)
 *   workers               concurrent sweep chains (1)
 */
struct RunConfig {
    std::vector<std::size_t> lengths;
    CouplingSpec coupling;
    std::optional<double> temperature;
    std::optional<std::uint64_t> steps;
    std::uint64_t seed = 1;
    Schedule schedule = Schedule::random_site;
    InitSpec init = InitSpec::random(0.5);
    std::uint64_t measure_every = 10000;
    std::uint64_t snapshot_every = 0;
    std::size_t snapshot_axis = 0;
    std::optional<std::size_t> snapshot_index;
    ObjectiveConvention convention = ObjectiveConvention::bond_once;
    std::string output;
    std::uint64_t checkpoint_every = 0;
    std::uint64_t stop_at = 0;
    std::vector<double> temperatures;
    std::uint64_t seeds_per_t = 1;
    unsigned workers = 1;

    // Where each key was last set, for diagnostics ("file:line").
    std::map<std::string, std::string> origin;
};

// Every recognized key, in canonical order.
const std::vector<std::string>& config_keys();

// Applies one key; throws ConfigError prefixed with `where`.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value,
                   const std::string& where);

// Parses `key = value` text on top of `config`.
void parse_config_text(RunConfig& config, std::string_view text, const std::string& source);
RunConfig load_config_file(const std::string& path);

enum class Command { run, sweep, enumerate };

// Cross-key checks and required keys; throws ConfigError.
void validate(const RunConfig& config, Command command);

// Output directory after applying the environment default.
std::string output_dir(const RunConfig& config);

// Canonical `key = value` text (output and stop_at omitted). The hashed
// form covers only keys that change the trajectory or its recorded artifacts.
std::string canonical_text(const RunConfig& config);
std::string hashed_text(const RunConfig& config);
std::uint64_t config_hash(const RunConfig& config);

std::uint64_t fnv1a64(std::string_view bytes);

LatticeGeometry make_geometry(const RunConfig& config);
CouplingModel make_couplings(const LatticeGeometry& geometry, const RunConfig& config);
ChainParams make_params(const RunConfig& config);

// Shortest text that parses back to the same double.
std::string format_double(double value);

} // namespace latmc::cli
