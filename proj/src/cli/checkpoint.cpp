#include "latmc/cli/checkpoint.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "latmc/errors.hpp"

namespace latmc::cli {

namespace {

constexpr std::string_view kMagic = "latmc-checkpoint 1";

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string hexfloat(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::hex);
    return std::string(buf, ptr);
}

[[noreturn]] void damaged(const std::string& what) {
    throw ParseError("checkpoint: " + what);
}

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    std::string_view line() {
        if (pos_ >= text_.size())
            damaged("unexpected end of file");
        auto end = text_.find('\n', pos_);
        if (end == std::string_view::npos)
            damaged("unterminated line");
        auto out = text_.substr(pos_, end - pos_);
        pos_ = end + 1;
        return out;
    }

    // "<key> <value>" -> value.
    std::string_view field(std::string_view key) {
        const auto l = line();
        if (l.size() <= key.size() || l.substr(0, key.size()) != key || l[key.size()] != ' ')
            damaged("expected field '" + std::string(key) + "'");
        return l.substr(key.size() + 1);
    }

    bool done() const { return pos_ == text_.size(); }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

template <class T>
T number(std::string_view s, int base = 10) {
    T v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        damaged("malformed number '" + std::string(s) + "'");
    return v;
}

double real_hex(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::hex);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        damaged("malformed real '" + std::string(s) + "'");
    return v;
}

} // namespace

Checkpoint make_checkpoint(const RunConfig& config, const Chain& chain, const TimeSeries& series) {
    RunConfig stored = config;
    stored.stop_at = 0;
    Checkpoint c;
    c.config_hash = config_hash(stored);
    c.config_text = canonical_text(stored);
    c.step = chain.step_count();
    c.objective = chain.objective();
    c.cursor = chain.cursor();
    c.rng_state = chain.rng().serialize();
    c.series = series;
    c.config = chain.config();
    return c;
}

std::string serialize_checkpoint(const Checkpoint& c) {
    std::string config_text = c.config_text;
    if (!config_text.empty() && config_text.back() != '\n')
        config_text += '\n';
    std::size_t config_lines = 0;
    for (char ch : config_text)
        config_lines += ch == '\n';

    std::string out;
    out += kMagic;
    out += "\nconfig_hash " + hex64(c.config_hash) + '\n';
    out += "config " + std::to_string(config_lines) + '\n' + config_text;
    out += "step " + std::to_string(c.step) + '\n';
    out += "objective " + hexfloat(c.objective) + '\n';
    out += "cursor " + std::to_string(c.cursor) + '\n';
    out += "rng " + c.rng_state + '\n';
    out += "series " + std::to_string(c.series.size()) + '\n';
    for (const auto& m : c.series)
        out += std::to_string(m.step) + ' ' + hexfloat(m.w) + ' ' + std::to_string(m.u) + '\n';
    out += "states\n";
    for (State s : c.config.states())
        out += s > 0 ? '+' : '-';
    out += '\n';
    out += "checksum " + hex64(fnv1a64(out)) + '\n';
    return out;
}

Checkpoint parse_checkpoint(std::string_view text) {
    const auto mark = text.rfind("checksum ");
    if (mark == std::string_view::npos || (mark != 0 && text[mark - 1] != '\n'))
        damaged("missing checksum (truncated file?)");
    {
        LineReader tail(text.substr(mark));
        const auto stored = number<std::uint64_t>(tail.field("checksum"), 16);
        if (!tail.done())
            damaged("data after checksum");
        if (stored != fnv1a64(text.substr(0, mark)))
            damaged("checksum mismatch");
    }

    LineReader in(text.substr(0, mark));
    if (in.line() != kMagic)
        damaged("not a latmc checkpoint");
    Checkpoint c;
    c.config_hash = number<std::uint64_t>(in.field("config_hash"), 16);
    const auto config_lines = number<std::size_t>(in.field("config"));
    for (std::size_t i = 0; i < config_lines; ++i) {
        c.config_text += in.line();
        c.config_text += '\n';
    }
    c.step = number<std::uint64_t>(in.field("step"));
    c.objective = real_hex(in.field("objective"));
    c.cursor = number<SiteId>(in.field("cursor"));
    c.rng_state = std::string(in.field("rng"));
    const auto rows = number<std::size_t>(in.field("series"));
    std::vector<Measurement> measurements;
    for (std::size_t i = 0; i < rows; ++i) {
        std::istringstream row{std::string(in.line())};
        std::string step, w, u;
        row >> step >> w >> u;
        Measurement m;
        m.step = number<std::uint64_t>(step);
        m.w = real_hex(w);
        m.u = number<std::uint64_t>(u);
        measurements.push_back(m);
    }
    if (in.line() != "states")
        damaged("expected states");
    const auto cells = in.line();
    std::vector<State> states;
    states.reserve(cells.size());
    for (char ch : cells) {
        if (ch != '+' && ch != '-')
            damaged("bad state character");
        states.push_back(ch == '+' ? kCorrupt : kHonest);
    }
    if (!in.done())
        damaged("unexpected data before checksum");
    // Recorded m is a function of U and M only.
    for (auto& m : measurements) {
        m.m = mean_state_from_profit(m.u, states.size());
        try {
            c.series.append(m);
        } catch (const ContractViolation& e) {
            damaged(e.what());
        }
    }
    c.config = Configuration(std::move(states));
    return c;
}

void write_checkpoint(const std::string& path, const Checkpoint& checkpoint) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write checkpoint '" + tmp + "'");
        out << serialize_checkpoint(checkpoint);
        if (!out)
            throw IoError("failed writing checkpoint '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError("cannot move checkpoint into place at '" + path + "'");
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read checkpoint '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_checkpoint(buf.str());
}

Chain restore_chain(const Checkpoint& checkpoint, const RunConfig& config) {
    RunConfig probe = config;
    probe.stop_at = 0;
    if (config_hash(probe) != checkpoint.config_hash)
        throw ConfigError("checkpoint was written by a different configuration (hash " +
                          hex64(checkpoint.config_hash) + ", current " + hex64(config_hash(probe)) + ")");
    auto geometry = std::make_shared<const LatticeGeometry>(make_geometry(config));
    if (checkpoint.config.size() != geometry->site_count())
        damaged("state count does not match the lattice");
    auto couplings = std::make_shared<const CouplingModel>(make_couplings(*geometry, config));
    const ChainParams params = make_params(config);
    if (checkpoint.step > params.steps)
        damaged("step count beyond the run's budget");
    return Chain(geometry, couplings, params, checkpoint.config, Rng::deserialize(checkpoint.rng_state),
                 checkpoint.step, checkpoint.objective, checkpoint.cursor);
}

} // namespace latmc::cli
