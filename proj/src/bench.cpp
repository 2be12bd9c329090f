#include "tvalue/bench.hpp"

#include "tvalue/error.hpp"
#include "tvalue/netio.hpp"
#include "tvalue/projections.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

namespace tvalue {

namespace {

std::uint64_t pow2(std::size_t e) { return e >= 64 ? kSaturated : std::uint64_t{1} << e; }

std::uint64_t mgl_level(std::size_t q, std::size_t s) {
    const std::uint64_t comps = binomial(q + s - 1, s - 1);
    return sat_add(sat_mul(4, sat_mul(q, q)), sat_mul(comps - 1, sat_mul(6, q)));
}

// sum_{q=d}^{top} C(q-1, d-1) 2^(q-d)
std::uint64_t schmid_inner(std::size_t d, std::size_t top) {
    std::uint64_t sum = 0;
    for (std::size_t q = d; q <= top; ++q) sum = sat_add(sum, sat_mul(binomial(q - 1, d - 1), pow2(q - d)));
    return sum;
}

}  // namespace

std::uint64_t bound_single(Method method, std::size_t s, std::size_t k, std::size_t t) {
    if (t > k) throw ContractViolation("t exceeds k");
    const std::size_t top = k - t;
    std::uint64_t sum = 0;
    switch (method) {
        case Method::schmid:
            for (std::size_t d = 1; d <= s; ++d) sum = sat_add(sum, sat_mul(binomial(s, d), schmid_inner(d, top)));
            return sum;
        case Method::pirsic_schmid:
            for (std::size_t q = 1; q <= top; ++q)
                sum = sat_add(sum, sat_mul(binomial(q + s - 1, s - 1), binomial(q, 2)));
            return sum;
        case Method::mgl_decreasing:
            for (std::size_t q = std::max<std::size_t>(top, 1); q <= k; ++q) sum = sat_add(sum, mgl_level(q, s));
            return sum;
        case Method::mgl_increasing:
            for (std::size_t q = 1; q <= top; ++q) sum = sat_add(sum, mgl_level(q, s));
            return sum;
        case Method::oracle: break;
    }
    throw ContractViolation("no operation bound for the oracle");
}

std::uint64_t bound_projections(Method method, std::size_t s, std::size_t k, std::size_t d_max) {
    std::uint64_t sum = 0;
    switch (method) {
        case Method::schmid:
            for (std::size_t d = 1; d <= d_max; ++d) sum = sat_add(sum, sat_mul(binomial(s, d), schmid_inner(d, k)));
            return sum;
        case Method::pirsic_schmid:
            for (std::size_t d = 1; d <= d_max; ++d) sum = sat_add(sum, sat_mul(binomial(s, d), binomial(k + d, d)));
            return sat_mul(sat_mul(k, k), sum);
        case Method::mgl_decreasing:
        case Method::mgl_increasing:
            for (std::size_t d = 1; d <= d_max; ++d) {
                const std::uint64_t inner =
                    sat_add(sat_mul(4, sat_mul(k, k >= d ? k - d + 1 : 0)), sat_mul(6, binomial(k, d)));
                sum = sat_add(sum, sat_mul(binomial(s, d), inner));
            }
            return sat_mul(k, sum);
        case Method::oracle: break;
    }
    throw ContractViolation("no operation bound for the oracle");
}

std::string_view suite_name(Suite suite) noexcept {
    return suite == Suite::single ? "single" : "projections";
}

std::optional<Suite> parse_suite(std::string_view name) noexcept {
    if (name == "single") return Suite::single;
    if (name == "projections") return Suite::projections;
    return std::nullopt;
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t s, std::size_t k) noexcept {
    // splitmix64 finalizer over the cell coordinates
    std::uint64_t z = seed ^ (std::uint64_t{s} << 32) ^ std::uint64_t{k};
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

std::uint64_t worst_bound(const BenchSpec& spec, Method method, std::size_t s, std::size_t k, std::size_t d_max) {
    if (spec.suite == Suite::projections) return bound_projections(method, s, k, d_max);
    std::uint64_t worst = 0;
    for (std::size_t t = 0; t <= k; ++t) worst = std::max(worst, bound_single(method, s, k, t));
    return worst;
}

struct Cell {
    std::size_t s;
    std::size_t k;
};

std::vector<BenchRecord> run_cell(const BenchSpec& spec, Cell cell, std::vector<Method> methods) {
    const std::size_t d_max = spec.suite == Suite::projections ? (spec.d_max == 0 ? cell.s : spec.d_max) : cell.s;
    std::vector<NetDef> nets;
    NetSampler sampler(cell_seed(spec.seed, cell.s, cell.k));
    for (std::size_t i = 0; i < spec.samples; ++i) nets.push_back(sampler.net(cell.s, cell.k));

    std::vector<BenchRecord> out;
    for (Method method : methods) {
        BenchRecord rec;
        rec.method = method;
        rec.s = cell.s;
        rec.k = cell.k;
        rec.d_max = spec.suite == Suite::projections ? d_max : cell.s;
        rec.samples = nets.size();
        double total_ms = 0.0;
        double total_adds = 0.0;
        for (const NetDef& net : nets) {
            OpCounter counter;
            std::uint64_t bound = 0;
            const auto start = std::chrono::steady_clock::now();
            if (spec.suite == Suite::single) {
                const std::size_t r = rho(net.matrices, method, &counter);
                bound = bound_single(method, cell.s, cell.k, cell.k - r);
            } else {
                switch (method) {
                    case Method::schmid: rho_all_projections_schmid(net, d_max, &counter); break;
                    case Method::pirsic_schmid: rho_all_projections_ps(net, d_max, &counter); break;
                    default: rho_all_projections(net, d_max, &counter); break;
                }
                bound = bound_projections(method, cell.s, cell.k, d_max);
            }
            const auto stop = std::chrono::steady_clock::now();
            total_ms += std::chrono::duration<double, std::milli>(stop - start).count();
            total_adds += static_cast<double>(counter.vec_adds);
            rec.bound = std::max(rec.bound, bound);
            if (counter.vec_adds > bound) rec.ok = false;
        }
        if (!nets.empty()) {
            rec.mean_ms = total_ms / static_cast<double>(nets.size());
            rec.mean_vecadds = total_adds / static_cast<double>(nets.size());
        }
        out.push_back(rec);
    }
    return out;
}

}  // namespace

BenchResult run_suite(const BenchSpec& spec) {
    if (spec.samples == 0) throw ContractViolation("samples must be positive");
    for (Method m : spec.methods)
        if (m == Method::oracle) throw ContractViolation("the oracle is not benchmarked");
    if (spec.suite == Suite::projections)
        for (Method m : spec.methods)
            if (m == Method::mgl_increasing)
                throw ContractViolation("the projections suite runs MGL as mgl-dec");

    BenchResult result;
    std::vector<Cell> cells;
    std::vector<std::vector<Method>> cell_methods;
    for (std::size_t s : spec.s_values) {
        for (std::size_t k : spec.k_values) {
            if (s == 0 || k == 0 || k > kMaxCols) throw ContractViolation("s and k must be positive, k <= 64");
            if (spec.suite == Suite::projections && spec.d_max > s)
                throw ContractViolation("d_max exceeds s = " + std::to_string(s));
            std::vector<Method> run;
            const std::size_t d_max = spec.d_max == 0 ? s : spec.d_max;
            for (Method m : spec.methods) {
                const std::uint64_t worst = worst_bound(spec, m, s, k, d_max);
                if (spec.budget != 0 && worst > spec.budget) {
                    result.skipped.push_back({m, s, k,
                                              "worst-case bound " + std::to_string(worst) +
                                                  " exceeds budget " + std::to_string(spec.budget)});
                    continue;
                }
                run.push_back(m);
            }
            if (run.empty()) continue;
            cells.push_back({s, k});
            cell_methods.push_back(std::move(run));
        }
    }

    std::vector<std::vector<BenchRecord>> per_cell(cells.size());
    parallel_for(cells.size(), spec.threads,
                 [&](std::size_t i) { per_cell[i] = run_cell(spec, cells[i], cell_methods[i]); });
    for (auto& records : per_cell)
        for (auto& r : records) result.records.push_back(r);
    return result;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << kCsvHeader << '\n';
    char buf[64];
    for (const BenchRecord& r : records) {
        out << method_name(r.method) << ',' << r.s << ',' << r.k << ',' << r.d_max << ',' << r.samples << ',';
        std::snprintf(buf, sizeof buf, "%.6f", r.mean_ms);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.3f", r.mean_vecadds);
        out << buf << ',' << r.bound << ',' << (r.ok ? "true" : "false") << '\n';
    }
}

}  // namespace tvalue
