#include "latmc/cli/snapshot.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "latmc/errors.hpp"

namespace latmc::cli {

namespace {

struct PlaneLayout {
    std::size_t rows = 1;
    std::size_t cols = 1;
    std::size_t row_axis = 0;
    std::size_t col_axis = 0;
    bool single_row = false;
};

PlaneLayout layout(const LatticeGeometry& g, const Plane& plane) {
    PlaneLayout l;
    if (g.dim() == 1) {
        l.single_row = true;
        l.cols = g.length(0);
        l.col_axis = 0;
        return l;
    }
    if (g.dim() == 2) {
        l.row_axis = 0;
        l.col_axis = 1;
    } else {
        if (plane.axis >= 3 || plane.index >= g.length(plane.axis))
            throw InvalidParams("snapshot plane outside the lattice");
        std::vector<std::size_t> free;
        for (std::size_t a = 0; a < 3; ++a)
            if (a != plane.axis)
                free.push_back(a);
        l.row_axis = free[0];
        l.col_axis = free[1];
    }
    l.rows = g.length(l.row_axis);
    l.cols = g.length(l.col_axis);
    return l;
}

State plane_state(const LatticeGeometry& g, const Configuration& config, const Plane& plane,
                  const PlaneLayout& l, std::size_t r, std::size_t c) {
    Coords coords(g.dim(), 0);
    if (l.single_row) {
        coords[0] = c;
    } else {
        coords[l.row_axis] = r;
        coords[l.col_axis] = c;
        if (g.dim() == 3)
            coords[plane.axis] = plane.index;
    }
    return config[g.encode(coords)];
}

void check(const LatticeGeometry& g, const Configuration& config) {
    if (config.size() != g.site_count())
        throw ContractViolation("snapshot configuration does not match geometry");
}

class Tokens {
public:
    explicit Tokens(std::string_view text) : text_(text) {}

    // Skips whitespace and '#' comments.
    std::string_view next() {
        for (;;) {
            while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (pos_ < text_.size() && text_[pos_] == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    ++pos_;
                continue;
            }
            break;
        }
        const std::size_t start = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    std::uint64_t number() {
        const auto tok = next();
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError("snapshot: expected a number, got '" + std::string(tok) + "'");
        return v;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

State parse_cell(char ch) {
    if (ch == '+')
        return kCorrupt;
    if (ch == '-')
        return kHonest;
    throw ParseError(std::string("snapshot: unexpected character '") + ch + "'");
}

LatticeGeometry checked_geometry(std::vector<std::size_t> lengths) {
    try {
        return LatticeGeometry(std::move(lengths));
    } catch (const InvalidGeometry& e) {
        throw ParseError(std::string("snapshot: ") + e.what());
    }
}

LoadedSnapshot parse_pgm(std::string_view text) {
    Tokens t(text);
    t.next();  // P2
    const auto cols = t.number();
    const auto rows = t.number();
    const auto maxval = t.number();
    if (maxval == 0)
        throw ParseError("snapshot: graymap maxval must be positive");
    std::vector<State> states;
    states.reserve(rows * cols);
    for (std::uint64_t i = 0; i < rows * cols; ++i) {
        const auto v = t.number();
        if (v > maxval)
            throw ParseError("snapshot: gray level above maxval");
        states.push_back(v == 0 ? kCorrupt : kHonest);
    }
    if (!t.next().empty())
        throw ParseError("snapshot: trailing data after graymap");
    auto geometry = checked_geometry({static_cast<std::size_t>(rows), static_cast<std::size_t>(cols)});
    return {std::move(geometry), Configuration(std::move(states)), std::nullopt};
}

LoadedSnapshot parse_dump(std::string_view text) {
    Tokens t(text);
    const auto d = t.number();
    if (d < 1 || d > 3)
        throw ParseError("snapshot: dimension must be 1, 2 or 3");
    std::vector<std::size_t> lengths;
    for (std::uint64_t a = 0; a < d; ++a)
        lengths.push_back(static_cast<std::size_t>(t.number()));
    const auto step = t.number();
    auto geometry = checked_geometry(std::move(lengths));
    std::vector<State> states;
    states.reserve(geometry.site_count());
    for (auto tok = t.next(); !tok.empty(); tok = t.next())
        for (char ch : tok) {
            if (states.size() == geometry.site_count())
                throw ParseError("snapshot: more cells than the header declares");
            states.push_back(parse_cell(ch));
        }
    if (states.size() != geometry.site_count())
        throw ParseError("snapshot: expected " + std::to_string(geometry.site_count()) + " cells, got " +
                         std::to_string(states.size()));
    return {std::move(geometry), Configuration(std::move(states)), step};
}

LoadedSnapshot parse_grid(std::string_view text) {
    Tokens t(text);
    std::vector<State> states;
    std::size_t cols = 0;
    std::size_t rows = 0;
    for (auto tok = t.next(); !tok.empty(); tok = t.next()) {
        if (cols == 0)
            cols = tok.size();
        else if (tok.size() != cols)
            throw ParseError("snapshot: grid rows have different lengths");
        for (char ch : tok)
            states.push_back(parse_cell(ch));
        ++rows;
    }
    if (rows == 0)
        throw ParseError("snapshot: empty grid");
    auto geometry = rows == 1 ? checked_geometry({cols}) : checked_geometry({rows, cols});
    return {std::move(geometry), Configuration(std::move(states)), std::nullopt};
}

} // namespace

Plane middle_plane(const LatticeGeometry& geometry, std::size_t axis) {
    if (axis >= geometry.dim())
        throw InvalidParams("snapshot axis exceeds lattice dimension");
    return {axis, geometry.length(axis) / 2};
}

std::string to_pgm(const LatticeGeometry& g, const Configuration& config, const Plane& plane,
                   std::uint64_t step) {
    check(g, config);
    const PlaneLayout l = layout(g, plane);
    std::string out = "P2\n# step " + std::to_string(step) + "\n" + std::to_string(l.cols) + " " +
                      std::to_string(l.rows) + "\n255\n";
    for (std::size_t r = 0; r < l.rows; ++r) {
        for (std::size_t c = 0; c < l.cols; ++c) {
            if (c)
                out += ' ';
            out += plane_state(g, config, plane, l, r, c) > 0 ? "0" : "255";
        }
        out += '\n';
    }
    return out;
}

std::string to_ascii_grid(const LatticeGeometry& g, const Configuration& config, const Plane& plane) {
    check(g, config);
    const PlaneLayout l = layout(g, plane);
    std::string out;
    out.reserve(l.rows * (l.cols + 1));
    for (std::size_t r = 0; r < l.rows; ++r) {
        for (std::size_t c = 0; c < l.cols; ++c)
            out += plane_state(g, config, plane, l, r, c) > 0 ? '+' : '-';
        out += '\n';
    }
    return out;
}

std::string to_lattice_dump(const LatticeGeometry& g, const Configuration& config, std::uint64_t step) {
    check(g, config);
    std::string out = std::to_string(g.dim());
    for (std::size_t len : g.lengths())
        out += " " + std::to_string(len);
    out += " " + std::to_string(step) + "\n";
    const std::size_t row = g.length(g.dim() - 1);
    out.reserve(out.size() + config.size() + config.size() / row);
    for (std::size_t i = 0; i < config.size(); ++i) {
        out += config[static_cast<SiteId>(i)] > 0 ? '+' : '-';
        if ((i + 1) % row == 0)
            out += '\n';
    }
    return out;
}

LoadedSnapshot parse_snapshot(std::string_view text) {
    Tokens t(text);
    const auto first = t.next();
    if (first.empty())
        throw ParseError("snapshot: empty file");
    if (first == "P2")
        return parse_pgm(text);
    if (std::isdigit(static_cast<unsigned char>(first.front())))
        return parse_dump(text);
    return parse_grid(text);
}

} // namespace latmc::cli
