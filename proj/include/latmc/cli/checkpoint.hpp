#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "latmc/cli/run_config.hpp"
#include "latmc/observables.hpp"
#include "latmc/sampler.hpp"

namespace latmc::cli {

/**
 * Resumable chain state. Text format, one field per line, closed by an
 * FNV-1a checksum over every preceding byte:
 *
 *   latmc-checkpoint 1
 *   config_hash <16 hex>
 *   config <n>            followed by n canonical `key = value` lines
 *   step <n>
 *   objective <hexfloat>
 *   cursor <n>
 *   rng <engine state>
 *   series <n>            followed by n lines "<step> <W hexfloat> <U>"
 *   states                followed by one '+'/'-' line of M characters
 *   checksum <16 hex>
 */
struct Checkpoint {
    std::uint64_t config_hash = 0;
    std::string config_text;
    std::uint64_t step = 0;
    double objective = 0.0;
    SiteId cursor = 0;
    std::string rng_state;
    TimeSeries series;
    Configuration config;
};

Checkpoint make_checkpoint(const RunConfig& config, const Chain& chain, const TimeSeries& series);

std::string serialize_checkpoint(const Checkpoint& checkpoint);
// Throws ParseError on any damage, including a checksum mismatch.
Checkpoint parse_checkpoint(std::string_view text);

void write_checkpoint(const std::string& path, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(const std::string& path);

// Rebuilds the chain; throws ConfigError if `config` hashes differently from
// the run that wrote the checkpoint.
Chain restore_chain(const Checkpoint& checkpoint, const RunConfig& config);

} // namespace latmc::cli
