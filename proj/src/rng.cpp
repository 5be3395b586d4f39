#include "latmc/rng.hpp"

#include <sstream>

#include "latmc/errors.hpp"

namespace latmc {

std::string Rng::serialize() const {
    std::ostringstream out;
    out << real_draws_ << ' ' << index_draws_ << ' ' << engine_;
    return out.str();
}

Rng Rng::deserialize(std::string_view text) {
    std::istringstream in{std::string(text)};
    Rng rng;
    in >> rng.real_draws_ >> rng.index_draws_ >> rng.engine_;
    if (in.fail())
        throw ParseError("malformed RNG state");
    in >> std::ws;
    if (!in.eof())
        throw ParseError("trailing data after RNG state");
    return rng;
}

} // namespace latmc
