#pragma once

// Reference implementations used only by tests. They work from coordinates
// and explicit bond lists, never from the neighbor tables or update formulas
// of the library, so a shared bug cannot hide in both.

#include <cstdint>
#include <deque>
#include <vector>

#include "latmc/lattice.hpp"
#include "latmc/model.hpp"
#include "latmc/rng.hpp"

namespace latmc::testing {

// Row-major decode/encode by hand.
inline std::vector<std::size_t> coords_of(const std::vector<std::size_t>& lengths, std::size_t site) {
    std::vector<std::size_t> c(lengths.size());
    for (std::size_t a = lengths.size(); a-- > 0;) {
        c[a] = site % lengths[a];
        site /= lengths[a];
    }
    return c;
}

inline std::size_t site_of(const std::vector<std::size_t>& lengths, const std::vector<std::size_t>& c) {
    std::size_t site = 0;
    for (std::size_t a = 0; a < lengths.size(); ++a)
        site = site * lengths[a] + c[a];
    return site;
}

// Neighbor slots (-x, +x, -y, +y, ...) computed from coordinates.
inline std::vector<std::size_t> neighbor_oracle(const std::vector<std::size_t>& lengths, std::size_t site) {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < lengths.size(); ++a) {
        auto c = coords_of(lengths, site);
        auto down = c;
        down[a] = (c[a] + lengths[a] - 1) % lengths[a];
        auto up = c;
        up[a] = (c[a] + 1) % lengths[a];
        out.push_back(site_of(lengths, down));
        out.push_back(site_of(lengths, up));
    }
    return out;
}

struct Bond {
    std::size_t a;
    std::size_t b;
    double j;
};

// Explicit unordered bond list; bond (site, axis) joins site to its +axis
// neighbor, matching the storage order of per-bond couplings.
inline std::vector<Bond> bond_list(const std::vector<std::size_t>& lengths, const std::vector<double>& per_bond,
                                   double uniform_j) {
    std::size_t m = 1;
    for (auto l : lengths)
        m *= l;
    std::vector<Bond> bonds;
    for (std::size_t s = 0; s < m; ++s)
        for (std::size_t a = 0; a < lengths.size(); ++a) {
            auto c = coords_of(lengths, s);
            c[a] = (c[a] + 1) % lengths[a];
            const double j = per_bond.empty() ? uniform_j : per_bond[s * lengths.size() + a];
            bonds.push_back({s, site_of(lengths, c), j});
        }
    return bonds;
}

inline std::vector<Bond> bond_list(const LatticeGeometry& g, const CouplingModel& couplings) {
    std::vector<std::size_t> lengths(g.lengths().begin(), g.lengths().end());
    return bond_list(lengths, couplings.bonds(), couplings.uniform_j());
}

// W by bond-list summation in quad precision (exact for the test sizes).
inline __float128 objective_oracle_q(const std::vector<Bond>& bonds, const std::vector<State>& states,
                                     double factor = 1.0) {
    __float128 w = 0;
    for (const auto& b : bonds)
        w -= static_cast<__float128>(b.j) * states[b.a] * states[b.b];
    return w * factor;
}

inline double objective_oracle(const std::vector<Bond>& bonds, const std::vector<State>& states,
                               double factor = 1.0) {
    return static_cast<double>(objective_oracle_q(bonds, states, factor));
}

// phi_i by slot-by-slot summation over the bond list.
inline double local_term_oracle(const std::vector<Bond>& bonds, const std::vector<State>& states,
                                std::size_t site) {
    double sum = 0.0;
    for (const auto& b : bonds) {
        if (b.a == site)
            sum -= b.j * states[site] * states[b.b];
        if (b.b == site)
            sum -= b.j * states[site] * states[b.a];
    }
    return sum;
}

// Breadth-first flood fill over corrupt sites. Labels follow the smallest
// member site, -1 for honest sites.
inline std::vector<std::int32_t> bfs_labels(const std::vector<std::size_t>& lengths,
                                            const std::vector<State>& states) {
    std::vector<std::int32_t> labels(states.size(), -1);
    std::int32_t next = 0;
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (states[s] <= 0 || labels[s] >= 0)
            continue;
        std::deque<std::size_t> queue{s};
        labels[s] = next;
        while (!queue.empty()) {
            const auto cur = queue.front();
            queue.pop_front();
            for (auto n : neighbor_oracle(lengths, cur))
                if (states[n] > 0 && labels[n] < 0) {
                    labels[n] = next;
                    queue.push_back(n);
                }
        }
        ++next;
    }
    return labels;
}

inline std::vector<State> random_states(std::size_t m, Rng& rng, double p = 0.5) {
    std::vector<State> s(m);
    for (auto& x : s)
        x = rng.uniform_real() < p ? kCorrupt : kHonest;
    return s;
}

inline std::vector<State> checkerboard(const std::vector<std::size_t>& lengths) {
    std::size_t m = 1;
    for (auto l : lengths)
        m *= l;
    std::vector<State> s(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t parity = 0;
        for (auto c : coords_of(lengths, i))
            parity += c;
        s[i] = parity % 2 == 0 ? kCorrupt : kHonest;
    }
    return s;
}

} // namespace latmc::testing
