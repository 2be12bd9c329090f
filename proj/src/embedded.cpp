#include "tvalue/embedded.hpp"

#include "tvalue/error.hpp"

#include <algorithm>
#include <string>

namespace tvalue {

std::vector<std::pair<std::size_t, std::size_t>> check_embedded_regularity(const NetDef& net, std::size_t m0) {
    std::vector<std::pair<std::size_t, std::size_t>> bad;
    for (std::size_t j = 0; j < net.s(); ++j)
        for (std::size_t m = std::max<std::size_t>(m0, 1); m <= net.k; ++m)
            if (!is_nonsingular(net.matrices[j].truncated(m, m))) bad.emplace_back(j + 1, m);
    return bad;
}

EmbeddedNetDef EmbeddedNetDef::make(NetDef net, std::size_t m0) {
    if (m0 < 1 || m0 > net.k) throw ContractViolation("m0 must lie in [1, k]");
    const auto bad = check_embedded_regularity(net, m0);
    if (!bad.empty()) {
        const auto [j, m] = bad.front();
        throw InvalidEmbeddedNet(j, m,
                                 "generator matrix " + std::to_string(j) + " has a singular leading " +
                                     std::to_string(m) + "x" + std::to_string(m) + " minor");
    }
    return EmbeddedNetDef{std::move(net), m0};
}

std::size_t EmbeddedTable::rho_at(ProjectionKey key, std::size_t m) const {
    if (m < m0 || m > k) throw ContractViolation("embedded level out of range");
    const auto it = rho.find(key);
    if (it == rho.end()) throw ContractViolation("projection {" + format_key(key) + "} not in table");
    return it->second[m - m0];
}

std::optional<std::size_t> EmbeddedTable::l_at(ProjectionKey key, std::size_t q) const {
    const auto it = l.find(key);
    if (it == l.end() || q >= it->second.size() || it->second[q] == 0) return std::nullopt;
    return it->second[q];
}

std::vector<ProjectionKey> EmbeddedTable::sorted_keys() const {
    std::vector<ProjectionKey> keys;
    for (const auto& [key, value] : rho) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), lexicographic_less);
    return keys;
}

EmbeddedTable embedded_t_all(const EmbeddedNetDef& embedded, std::size_t d_max, OpCounter* counter,
                             unsigned threads) {
    const NetDef& net = embedded.net;
    if (d_max < 1 || d_max > net.s()) throw ContractViolation("d_max must lie in [1, s]");
    const auto bad = check_embedded_regularity(net, embedded.m0);
    if (!bad.empty())
        throw InvalidEmbeddedNet(bad.front().first, bad.front().second,
                                 "generator matrix " + std::to_string(bad.front().first) +
                                     " has a singular leading minor at m = " + std::to_string(bad.front().second));

    const std::size_t k = net.k;
    const std::size_t m0 = embedded.m0;
    const std::size_t levels_m = k - m0 + 1;

    EmbeddedTable table{net.s(), k, m0, d_max, {}, {}};
    const auto levels = keys_by_cardinality(net.s(), d_max);
    for (ProjectionKey key : levels[1]) {
        auto& row = table.rho[key];
        row.resize(levels_m);
        for (std::size_t m = m0; m <= k; ++m) row[m - m0] = m;
    }

    for (std::size_t d = 2; d <= d_max; ++d) {
        const auto& keys = levels[d];
        std::vector<std::vector<std::size_t>> rho_rows(keys.size());
        std::vector<std::vector<std::size_t>> l_rows(keys.size());
        std::vector<OpCounter> counters(keys.size());

        parallel_for(keys.size(), threads, [&](std::size_t idx) {
            const ProjectionKey key = keys[idx];
            std::vector<std::size_t> q_max(levels_m);
            for (std::size_t m = m0; m <= k; ++m) q_max[m - m0] = m;
            for (ProjectionKey bits = key; bits; bits &= bits - 1) {
                const auto& sub = table.rho.at(key & ~(bits & (~bits + 1)));
                for (std::size_t i = 0; i < levels_m; ++i) q_max[i] = std::min(q_max[i], sub[i]);
            }

            auto& out = rho_rows[idx];
            out.assign(levels_m, d - 1);
            std::vector<char> resolved(levels_m, 0);
            std::size_t top = 0;
            std::size_t open = 0;
            for (std::size_t i = 0; i < levels_m; ++i) {
                if (q_max[i] < d) {
                    out[i] = q_max[i];
                    resolved[i] = 1;
                } else {
                    top = std::max(top, q_max[i]);
                    ++open;
                }
            }

            auto& lq = l_rows[idx];
            lq.assign(k + 1, 0);
            if (open == 0) return;
            const auto gens = net.select(coordinates_of(key));
            for (std::size_t q = top; q >= d && open > 0; --q) {
                const LevelScan scan = scan_level(gens, q, Positivity::positive, &counters[idx]);
                const std::size_t l = scan.full_rank ? scan.rightmost : k + 1;
                lq[q] = l;
                for (std::size_t i = 0; i < levels_m; ++i) {
                    const std::size_t m = m0 + i;
                    if (!resolved[i] && q <= q_max[i] && l <= m) {
                        out[i] = q;
                        resolved[i] = 1;
                        --open;
                    }
                }
            }
        });

        for (std::size_t idx = 0; idx < keys.size(); ++idx) {
            table.rho[keys[idx]] = std::move(rho_rows[idx]);
            table.l[keys[idx]] = std::move(l_rows[idx]);
            count(counter, counters[idx].vec_adds);
        }
    }
    return table;
}

}  // namespace tvalue
