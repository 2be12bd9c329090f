#pragma once

#include "tvalue/tvalue.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tvalue {

// Closed-form worst-case vector-addition counts for base 2. Results
// saturate at kSaturated. The oracle has no bound.
std::uint64_t bound_single(Method method, std::size_t s, std::size_t k, std::size_t t);
std::uint64_t bound_projections(Method method, std::size_t s, std::size_t k, std::size_t d_max);

enum class Suite { single, projections };

std::string_view suite_name(Suite suite) noexcept;
std::optional<Suite> parse_suite(std::string_view name) noexcept;

struct BenchRecord {
    Method method = Method::mgl_increasing;
    std::size_t s = 0;
    std::size_t k = 0;
    std::size_t d_max = 0;
    std::size_t samples = 0;
    double mean_ms = 0.0;
    double mean_vecadds = 0.0;
    // Largest per-instance bound over the samples (the bound depends on t
    // in the single suite).
    std::uint64_t bound = 0;
    bool ok = true;  // every sample's counter within its own bound
};

struct BenchSpec {
    Suite suite = Suite::single;
    std::vector<std::size_t> s_values;
    std::vector<std::size_t> k_values;
    // Projections suite only; 0 means d_max = s.
    std::size_t d_max = 0;
    std::vector<Method> methods;
    std::size_t samples = 20;
    std::uint64_t seed = 1;
    // Skip a cell when the worst-case bound over all t exceeds this; 0 means no limit.
    std::uint64_t budget = 0;
    unsigned threads = 1;  // cells run concurrently, each timed single-threaded
};

struct BenchSkip {
    Method method;
    std::size_t s;
    std::size_t k;
    std::string reason;
};

struct BenchResult {
    std::vector<BenchRecord> records;
    std::vector<BenchSkip> skipped;
};

// Samples `samples` regular nets per (s, k) cell from a seed derived from
// (seed, s, k), so every method sees the same nets and counts are
// reproducible.
BenchResult run_suite(const BenchSpec& spec);

std::uint64_t cell_seed(std::uint64_t seed, std::size_t s, std::size_t k) noexcept;

inline constexpr std::string_view kCsvHeader = "method,s,k,dmax,samples,mean_ms,mean_vecadds,bound,ok";
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);

}  // namespace tvalue
