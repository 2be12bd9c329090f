#include "tvalue/projections.hpp"

#include "tvalue/error.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

namespace tvalue {

ProjectionKey make_key(std::span<const std::size_t> coordinates) {
    ProjectionKey key = 0;
    for (std::size_t j : coordinates) {
        if (j == 0 || j > 64) throw ContractViolation("coordinate " + std::to_string(j) + " out of range");
        key |= ProjectionKey{1} << (j - 1);
    }
    return key;
}

ProjectionKey make_key(std::initializer_list<std::size_t> coordinates) {
    return make_key(std::span<const std::size_t>(coordinates.begin(), coordinates.size()));
}

std::vector<std::size_t> coordinates_of(ProjectionKey key) {
    std::vector<std::size_t> out;
    for (; key; key &= key - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(key)) + 1);
    return out;
}

std::size_t cardinality(ProjectionKey key) noexcept { return static_cast<std::size_t>(std::popcount(key)); }

std::string format_key(ProjectionKey key) {
    std::string out;
    for (std::size_t j : coordinates_of(key)) {
        if (!out.empty()) out.push_back(',');
        out += std::to_string(j);
    }
    return out;
}

bool lexicographic_less(ProjectionKey a, ProjectionKey b) noexcept {
    while (a && b) {
        const int ca = std::countr_zero(a);
        const int cb = std::countr_zero(b);
        if (ca != cb) return ca < cb;
        a &= a - 1;
        b &= b - 1;
    }
    return !a && b;
}

std::vector<std::vector<ProjectionKey>> keys_by_cardinality(std::size_t s, std::size_t d_max) {
    if (s == 0 || s > 64) throw ContractViolation("dimension out of range");
    std::vector<std::vector<ProjectionKey>> levels(d_max + 1);
    for (std::size_t d = 1; d <= d_max; ++d) {
        ProjectionKey mask = (ProjectionKey{1} << d) - 1;
        if (d == 64) mask = ~ProjectionKey{0};
        while (true) {
            levels[d].push_back(mask);
            const ProjectionKey low = mask & (~mask + 1);
            const ProjectionKey ripple = mask + low;
            if (ripple == 0) break;
            mask = ripple | (((ripple ^ mask) >> 2) / low);
            if (s < 64 && mask >= (ProjectionKey{1} << s)) break;
        }
    }
    return levels;
}

std::size_t RhoTable::at(ProjectionKey key) const {
    const auto it = rho.find(key);
    if (it == rho.end()) throw ContractViolation("projection {" + format_key(key) + "} not in table");
    return it->second;
}

std::vector<ProjectionKey> RhoTable::sorted_keys() const {
    std::vector<ProjectionKey> keys;
    keys.reserve(rho.size());
    for (const auto& [key, value] : rho) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), lexicographic_less);
    return keys;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) task(i);
        });
}

namespace {

// Fills the table level by level; `solve(key, gens, q_max, counter)` returns
// rho(S_u) given the minimum q_max of rho over the maximal proper subsets.
template <class Solve>
RhoTable fill_table(const NetDef& net, std::size_t d_max, OpCounter* counter, unsigned threads, Solve&& solve) {
    if (d_max < 1 || d_max > net.s()) throw ContractViolation("d_max must lie in [1, s]");
    validate_generators(net.matrices);

    RhoTable table{net.s(), net.k, d_max, {}};
    const auto levels = keys_by_cardinality(net.s(), d_max);
    for (ProjectionKey key : levels[1]) table.rho[key] = net.k;

    for (std::size_t d = 2; d <= d_max; ++d) {
        const auto& keys = levels[d];
        std::vector<std::size_t> result(keys.size());
        std::vector<OpCounter> counters(keys.size());

        parallel_for(keys.size(), threads, [&](std::size_t idx) {
            const ProjectionKey key = keys[idx];
            std::size_t q_max = net.k;
            for (ProjectionKey bits = key; bits; bits &= bits - 1)
                q_max = std::min(q_max, table.rho.at(key & ~(bits & (~bits + 1))));
            const auto gens = net.select(coordinates_of(key));
            result[idx] = solve(gens, q_max, &counters[idx]);
        });

        for (std::size_t idx = 0; idx < keys.size(); ++idx) {
            table.rho[keys[idx]] = result[idx];
            count(counter, counters[idx].vec_adds);
        }
    }
    return table;
}

}  // namespace

RhoTable rho_all_projections(const NetDef& net, std::size_t d_max, OpCounter* counter, unsigned threads) {
    return fill_table(net, d_max, counter, threads, [](Generators gens, std::size_t q_max, OpCounter* c) {
        const std::size_t d = gens.size();
        if (q_max < d) return q_max;
        for (std::size_t q = q_max; q >= d; --q)
            if (scan_level(gens, q, Positivity::positive, c).full_rank) return q;
        return d - 1;
    });
}

RhoTable rho_all_projections_schmid(const NetDef& net, std::size_t d_max, OpCounter* counter, unsigned threads) {
    return fill_table(net, d_max, counter, threads, [](Generators gens, std::size_t q_max, OpCounter* c) {
        for (std::size_t q = gens.size(); q <= q_max; ++q)
            if (schmid_has_zero(gens, q, c)) return q - 1;
        return q_max;
    });
}

RhoTable rho_all_projections_ps(const NetDef& net, std::size_t d_max, OpCounter* counter, unsigned threads) {
    return fill_table(net, d_max, counter, threads,
                      [](Generators gens, std::size_t, OpCounter* c) { return rho_ps(gens, c); });
}

std::map<ProjectionKey, std::size_t> t_all_projections(const NetDef& net, std::size_t d_max, OpCounter* counter,
                                                       unsigned threads) {
    const RhoTable table = rho_all_projections(net, d_max, counter, threads);
    std::map<ProjectionKey, std::size_t> out;
    for (const auto& [key, r] : table.rho) out[key] = net.k - r;
    return out;
}

}  // namespace tvalue
