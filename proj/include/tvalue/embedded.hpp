#pragma once

#include "tvalue/projections.hpp"
#include "tvalue/tvalue.hpp"

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tvalue {

// Nets S_m obtained by keeping the first m columns of every generator
// matrix, m0 <= m <= k; each leading m x m minor must be non-singular.
struct EmbeddedNetDef {
    NetDef net;
    std::size_t m0 = 1;

    // Throws InvalidEmbeddedNet at the first violation.
    static EmbeddedNetDef make(NetDef net, std::size_t m0);
};

// (coordinate (1-based), m) pairs whose leading m x m minor is singular.
std::vector<std::pair<std::size_t, std::size_t>> check_embedded_regularity(const NetDef& net, std::size_t m0);

struct EmbeddedTable {
    std::size_t s = 0;
    std::size_t k = 0;
    std::size_t m0 = 0;
    std::size_t d_max = 0;
    // rho(S_{u,m}) stored at index m - m0.
    std::unordered_map<ProjectionKey, std::vector<std::size_t>> rho;
    // l_q at index q; 0 where the level was not visited. Only |u| >= 2.
    std::unordered_map<ProjectionKey, std::vector<std::size_t>> l;

    std::size_t rho_at(ProjectionKey key, std::size_t m) const;
    std::size_t t(ProjectionKey key, std::size_t m) const { return m - rho_at(key, m); }
    std::optional<std::size_t> l_at(ProjectionKey key, std::size_t q) const;
    std::vector<ProjectionKey> sorted_keys() const;
};

// One downward sweep per projection at full width k. For each visited
// level q the rightmost pivot column gives l_q, and rho~(S_{u,m}) >= q iff
// m >= l_q; the subset recurrence is then applied separately for every m.
EmbeddedTable embedded_t_all(const EmbeddedNetDef& net, std::size_t d_max, OpCounter* counter = nullptr,
                             unsigned threads = 1);

}  // namespace tvalue
