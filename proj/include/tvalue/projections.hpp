#pragma once

#include "tvalue/bit_matrix.hpp"
#include "tvalue/tvalue.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace tvalue {

// Coordinate subset u of {1..s}: bit j-1 is set when coordinate j is in u.
using ProjectionKey = std::uint64_t;

ProjectionKey make_key(std::span<const std::size_t> coordinates);
ProjectionKey make_key(std::initializer_list<std::size_t> coordinates);
std::vector<std::size_t> coordinates_of(ProjectionKey key);
std::size_t cardinality(ProjectionKey key) noexcept;
std::string format_key(ProjectionKey key);  // "1,3,4"

// Orders keys by their sorted coordinate lists, lexicographically.
bool lexicographic_less(ProjectionKey a, ProjectionKey b) noexcept;

// All keys over {1..s} with 1 <= |u| <= d_max, by increasing cardinality.
std::vector<std::vector<ProjectionKey>> keys_by_cardinality(std::size_t s, std::size_t d_max);

// rho(S_u) for every u with |u| <= d_max.
struct RhoTable {
    std::size_t s = 0;
    std::size_t k = 0;
    std::size_t d_max = 0;
    std::unordered_map<ProjectionKey, std::size_t> rho;

    std::size_t at(ProjectionKey key) const;
    std::size_t t(ProjectionKey key) const { return k - at(key); }
    // Keys in lexicographic subset order.
    std::vector<ProjectionKey> sorted_keys() const;
};

// Runs `task(i)` for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task);

// Dynamic programming over subsets by increasing cardinality:
// rho(S_u) = min(rho~(S_u), min_j rho(S_{u \ j})), where rho~ is searched
// downward from that minimum with the incremental reduction over positive
// compositions. Subsets of one cardinality are independent and may run on
// `threads` workers.
RhoTable rho_all_projections(const NetDef& net, std::size_t d_max, OpCounter* counter = nullptr,
                             unsigned threads = 1);

// Same table from the combination walk: each subset searches increasing
// levels for a vanishing combination touching all of its coordinates, and
// the result is the minimum over its subsets.
RhoTable rho_all_projections_schmid(const NetDef& net, std::size_t d_max, OpCounter* counter = nullptr,
                                    unsigned threads = 1);

// Same table with one standalone Gaussian-elimination search per projection.
RhoTable rho_all_projections_ps(const NetDef& net, std::size_t d_max, OpCounter* counter = nullptr,
                                unsigned threads = 1);

std::map<ProjectionKey, std::size_t> t_all_projections(const NetDef& net, std::size_t d_max,
                                                       OpCounter* counter = nullptr, unsigned threads = 1);

}  // namespace tvalue
