#include "latmc/cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace latmc::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& where, const std::string& message) {
    throw ConfigError(where.empty() ? message : where + ": " + message);
}

std::uint64_t parse_uint(std::string_view text, const std::string& where, std::string_view key) {
    text = trim(text);
    std::uint64_t value = 0;
    // Accept 1e9-style integers as well.
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc() && ptr == text.data() + text.size())
        return value;
    double d = 0.0;
    auto [dptr, dec] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (dec == std::errc() && dptr == text.data() + text.size() && d >= 0.0 && d < 1.8e19 &&
        d == static_cast<double>(static_cast<std::uint64_t>(d)))
        return static_cast<std::uint64_t>(d);
    fail(where, "key '" + std::string(key) + "' expects a non-negative integer, got '" +
                    std::string(text) + "'");
}

double parse_real(std::string_view text, const std::string& where, std::string_view key) {
    text = trim(text);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
        fail(where, "key '" + std::string(key) + "' expects a finite number, got '" +
                        std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> items;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',' || text[i] == 'x' || text[i] == ' ' || text[i] == '\t') {
            const auto item = trim(text.substr(start, i - start));
            if (!item.empty())
                items.push_back(item);
            start = i + 1;
        }
    }
    return items;
}

std::string join_uints(const std::vector<std::size_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

std::string join_reals(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? "," : "") + format_double(values[i]);
    return out;
}

std::string where_of(const RunConfig& config, const std::string& key) {
    auto it = config.origin.find(key);
    return it == config.origin.end() ? std::string{} : it->second;
}

const char* coupling_name(CouplingSpec::Kind kind) {
    switch (kind) {
    case CouplingSpec::Kind::uniform: return "uniform";
    case CouplingSpec::Kind::plus_minus: return "pm";
    case CouplingSpec::Kind::interval: return "interval";
    }
    return "uniform";
}

const char* init_name(InitSpec::Kind kind) {
    switch (kind) {
    case InitSpec::Kind::random: return "random";
    case InitSpec::Kind::all_corrupt: return "all_corrupt";
    case InitSpec::Kind::all_honest: return "all_honest";
    }
    return "random";
}

} // namespace

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "lengths", "T", "steps", "seed", "coupling", "J", "J_lo", "J_hi", "disorder_seed",
        "schedule", "init", "p_corrupt", "measure_every", "snapshot_every", "snapshot_axis",
        "snapshot_index", "objective_convention", "output", "checkpoint_every", "stop_at",
        "temperatures", "seeds_per_T", "workers"};
    return keys;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view raw,
                   const std::string& where) {
    const std::string_view value = trim(raw);
    const std::string k(key);
    if (value.empty() && key != "output")
        fail(where, "key '" + k + "' has an empty value");

    if (key == "lengths") {
        std::vector<std::size_t> lengths;
        for (auto item : split_list(value)) {
            const auto len = parse_uint(item, where, key);
            if (len < 2)
                fail(where, "every lattice length must be at least 2");
            lengths.push_back(static_cast<std::size_t>(len));
        }
        if (lengths.empty() || lengths.size() > LatticeGeometry::kMaxDim)
            fail(where, "lengths needs 1 to 3 entries");
        c.lengths = std::move(lengths);
    } else if (key == "T") {
        const double t = parse_real(value, where, key);
        if (!(t > 0.0))
            fail(where, "T must be positive");
        c.temperature = t;
    } else if (key == "steps") {
        const auto steps = parse_uint(value, where, key);
        if (steps == 0)
            fail(where, "steps must be at least 1");
        c.steps = steps;
    } else if (key == "seed") {
        c.seed = parse_uint(value, where, key);
    } else if (key == "coupling") {
        if (value == "uniform")
            c.coupling.kind = CouplingSpec::Kind::uniform;
        else if (value == "pm")
            c.coupling.kind = CouplingSpec::Kind::plus_minus;
        else if (value == "interval")
            c.coupling.kind = CouplingSpec::Kind::interval;
        else
            fail(where, "coupling must be uniform, pm or interval");
    } else if (key == "J") {
        c.coupling.j = parse_real(value, where, key);
    } else if (key == "J_lo") {
        c.coupling.lo = parse_real(value, where, key);
    } else if (key == "J_hi") {
        c.coupling.hi = parse_real(value, where, key);
    } else if (key == "disorder_seed") {
        c.coupling.disorder_seed = parse_uint(value, where, key);
    } else if (key == "schedule") {
        if (value == "random_site")
            c.schedule = Schedule::random_site;
        else if (value == "sequential_sweep")
            c.schedule = Schedule::sequential_sweep;
        else
            fail(where, "schedule must be random_site or sequential_sweep");
    } else if (key == "init") {
        if (value == "random")
            c.init.kind = InitSpec::Kind::random;
        else if (value == "all_corrupt")
            c.init.kind = InitSpec::Kind::all_corrupt;
        else if (value == "all_honest")
            c.init.kind = InitSpec::Kind::all_honest;
        else
            fail(where, "init must be random, all_corrupt or all_honest");
    } else if (key == "p_corrupt") {
        const double p = parse_real(value, where, key);
        if (!(p >= 0.0 && p <= 1.0))
            fail(where, "p_corrupt must lie in [0, 1]");
        c.init.p_corrupt = p;
    } else if (key == "measure_every") {
        c.measure_every = parse_uint(value, where, key);
        if (c.measure_every == 0)
            fail(where, "measure_every must be at least 1");
    } else if (key == "snapshot_every") {
        c.snapshot_every = parse_uint(value, where, key);
    } else if (key == "snapshot_axis") {
        c.snapshot_axis = static_cast<std::size_t>(parse_uint(value, where, key));
    } else if (key == "snapshot_index") {
        c.snapshot_index = static_cast<std::size_t>(parse_uint(value, where, key));
    } else if (key == "objective_convention") {
        if (value == "bond_once")
            c.convention = ObjectiveConvention::bond_once;
        else if (value == "literal")
            c.convention = ObjectiveConvention::literal;
        else
            fail(where, "objective_convention must be bond_once or literal");
    } else if (key == "output") {
        c.output = std::string(value);
    } else if (key == "checkpoint_every") {
        c.checkpoint_every = parse_uint(value, where, key);
    } else if (key == "stop_at") {
        c.stop_at = parse_uint(value, where, key);
    } else if (key == "temperatures") {
        std::vector<double> ts;
        for (std::size_t start = 0; start <= value.size();) {
            auto end = value.find(',', start);
            if (end == std::string_view::npos)
                end = value.size();
            const auto item = trim(value.substr(start, end - start));
            if (!item.empty()) {
                const double t = parse_real(item, where, key);
                if (!(t > 0.0))
                    fail(where, "temperatures must be positive");
                ts.push_back(t);
            }
            start = end + 1;
        }
        if (ts.empty())
            fail(where, "temperatures list is empty");
        c.temperatures = std::move(ts);
    } else if (key == "seeds_per_T") {
        c.seeds_per_t = parse_uint(value, where, key);
        if (c.seeds_per_t == 0)
            fail(where, "seeds_per_T must be at least 1");
    } else if (key == "workers") {
        const auto w = parse_uint(value, where, key);
        if (w == 0 || w > 1024)
            fail(where, "workers must be between 1 and 1024");
        c.workers = static_cast<unsigned>(w);
    } else {
        fail(where, "unknown key '" + k + "'");
    }
    c.origin[k] = where;
}

void parse_config_text(RunConfig& config, std::string_view text, const std::string& source) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = source + ":" + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(where, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        if (key.empty())
            fail(where, "missing key before '='");
        apply_setting(config, key, line.substr(eq + 1), where);
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    RunConfig config;
    parse_config_text(config, buf.str(), path);
    return config;
}

void validate(const RunConfig& c, Command command) {
    if (c.lengths.empty())
        fail("", "missing required key 'lengths'");
    if (command != Command::sweep && !c.temperature)
        fail("", "missing required key 'T'");
    if (command == Command::sweep && c.temperatures.empty() && !c.temperature)
        fail("", "sweep needs 'temperatures' (or 'T')");
    if (command != Command::enumerate && !c.steps)
        fail("", "missing required key 'steps'");
    if (c.coupling.kind == CouplingSpec::Kind::interval && !(c.coupling.lo <= c.coupling.hi))
        fail(where_of(c, "J_hi"), "J_lo must not exceed J_hi");
    if (c.snapshot_axis >= c.lengths.size())
        fail(where_of(c, "snapshot_axis"), "snapshot_axis exceeds lattice dimension");
    if (c.snapshot_index && *c.snapshot_index >= c.lengths[c.snapshot_axis])
        fail(where_of(c, "snapshot_index"), "snapshot_index outside the lattice");
    if (c.steps && c.stop_at > *c.steps)
        fail(where_of(c, "stop_at"), "stop_at exceeds steps");
}

std::string output_dir(const RunConfig& config) {
    if (!config.output.empty())
        return config.output;
    if (const char* env = std::getenv(std::string(kOutputDirEnv).c_str()); env && *env)
        return env;
    return std::string(kDefaultOutputDir);
}

std::string hashed_text(const RunConfig& c) {
    std::ostringstream out;
    out << "lengths = " << join_uints(c.lengths) << '\n';
    if (c.temperature)
        out << "T = " << format_double(*c.temperature) << '\n';
    if (c.steps)
        out << "steps = " << *c.steps << '\n';
    out << "seed = " << c.seed << '\n';
    out << "coupling = " << coupling_name(c.coupling.kind) << '\n';
    out << "J = " << format_double(c.coupling.j) << '\n';
    out << "J_lo = " << format_double(c.coupling.lo) << '\n';
    out << "J_hi = " << format_double(c.coupling.hi) << '\n';
    out << "disorder_seed = " << c.coupling.disorder_seed << '\n';
    out << "schedule = " << (c.schedule == Schedule::random_site ? "random_site" : "sequential_sweep")
        << '\n';
    out << "init = " << init_name(c.init.kind) << '\n';
    out << "p_corrupt = " << format_double(c.init.p_corrupt) << '\n';
    out << "measure_every = " << c.measure_every << '\n';
    out << "snapshot_every = " << c.snapshot_every << '\n';
    out << "snapshot_axis = " << c.snapshot_axis << '\n';
    if (c.snapshot_index)
        out << "snapshot_index = " << *c.snapshot_index << '\n';
    out << "objective_convention = "
        << (c.convention == ObjectiveConvention::bond_once ? "bond_once" : "literal") << '\n';
    return out.str();
}

std::string canonical_text(const RunConfig& c) {
    std::string out = hashed_text(c);
    out += "checkpoint_every = " + std::to_string(c.checkpoint_every) + '\n';
    if (!c.temperatures.empty())
        out += "temperatures = " + join_reals(c.temperatures) + '\n';
    out += "seeds_per_T = " + std::to_string(c.seeds_per_t) + '\n';
    out += "workers = " + std::to_string(c.workers) + '\n';
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t config_hash(const RunConfig& config) { return fnv1a64(hashed_text(config)); }

LatticeGeometry make_geometry(const RunConfig& config) {
    try {
        return LatticeGeometry(config.lengths);
    } catch (const InvalidGeometry& e) {
        fail(where_of(config, "lengths"), e.what());
    }
}

CouplingModel make_couplings(const LatticeGeometry& geometry, const RunConfig& config) {
    const CouplingSpec& spec = config.coupling;
    switch (spec.kind) {
    case CouplingSpec::Kind::uniform:
        return CouplingModel::uniform(spec.j, config.convention);
    case CouplingSpec::Kind::plus_minus:
        return sample_couplings(geometry, {Disorder::Kind::plus_minus, spec.j, 0, 0, spec.disorder_seed},
                                config.convention);
    case CouplingSpec::Kind::interval:
        return sample_couplings(geometry,
                                {Disorder::Kind::interval, 0, spec.lo, spec.hi, spec.disorder_seed},
                                config.convention);
    }
    throw ConfigError("unknown coupling kind");
}

ChainParams make_params(const RunConfig& config) {
    ChainParams params;
    params.temperature = config.temperature.value_or(1.0);
    params.steps = config.steps.value_or(1);
    params.schedule = config.schedule;
    params.seed = config.seed;
    params.init = config.init;
    return params;
}

} // namespace latmc::cli
