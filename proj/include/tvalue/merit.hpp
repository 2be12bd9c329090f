#pragma once

#include "tvalue/embedded.hpp"
#include "tvalue/projections.hpp"

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tvalue {

// Projection weights gamma_u. Every kind is additionally zero above d_max.
class WeightSpec {
public:
    enum class Kind { uniform, order_dependent, product, joe_kuo_2d };

    static WeightSpec uniform() { return WeightSpec(Kind::uniform, {}); }
    // gamma_u = by_order[|u| - 1].
    static WeightSpec order_dependent(std::vector<double> by_order);
    // gamma_u = prod_{j in u} per_coordinate[j - 1].
    static WeightSpec product(std::vector<double> per_coordinate);
    // 0.9999^(min(j1, j2) - 1) on pairs, 0 elsewhere.
    static WeightSpec joe_kuo_2d() { return WeightSpec(Kind::joe_kuo_2d, {}); }

    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double weight(ProjectionKey u, std::size_t d_max) const;
    // Throws ContractViolation if the weights cannot cover s coordinates up to d_max.
    void validate(std::size_t s, std::size_t d_max) const;

private:
    WeightSpec(Kind kind, std::vector<double> values) : kind_(kind), values_(std::move(values)) {}

    Kind kind_;
    std::vector<double> values_;
};

// Transform of a projection's t-value; `k` is the digit count of the net
// level being scored.
class TildeT {
public:
    enum class Kind { raw, star_disc, joe_kuo };

    static TildeT raw() { return TildeT(Kind::raw, 0.0); }
    // 2^(t-k) * sum_{l < |u|} C(k - t, l)
    static TildeT star_disc() { return TildeT(Kind::star_disc, 0.0); }
    // t^p / (k - t + 1), p > 0
    static TildeT joe_kuo(double p);

    Kind kind() const noexcept { return kind_; }
    double p() const noexcept { return p_; }

    double operator()(std::size_t t, std::size_t k, std::size_t order) const;

private:
    TildeT(Kind kind, double p) : kind_(kind), p_(p) {}

    Kind kind_;
    double p_;
};

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

struct MeritConfig {
    WeightSpec weights = WeightSpec::uniform();
    TildeT tilde = TildeT::raw();
    double norm = kInfNorm;  // exponent in [1, inf]
    std::size_t d_max = 1;
    std::optional<std::size_t> m0;  // embedded range m0..k

    void validate(std::size_t s, std::size_t k) const;
};

struct ProjectionTerm {
    ProjectionKey u = 0;
    std::size_t t = 0;
    double tilde = 0.0;
    double weight = 0.0;
    double term = 0.0;  // weight * tilde
};

struct MeritReport {
    double value = 0.0;
    // Projections with positive weight, in lexicographic subset order.
    std::vector<ProjectionTerm> terms;
};

struct LevelMerit {
    std::size_t m = 0;
    MeritReport report;
};

struct EmbeddedMeritReport {
    double value = 0.0;
    std::vector<LevelMerit> levels;
};

// [sum terms^norm]^(1/norm), or max for an infinite norm. Terms must be >= 0.
double aggregate(std::span<const double> terms, double norm);

// Scores a precomputed table; `t_of(u)` and digit count `k` describe one level.
MeritReport score(std::span<const ProjectionKey> keys, const std::function<std::size_t(ProjectionKey)>& t_of,
                  std::size_t k, const MeritConfig& cfg);

MeritReport merit(const NetDef& net, const MeritConfig& cfg, OpCounter* counter = nullptr, unsigned threads = 1);

// Maximum over m0 <= m <= k of the per-level figure, with t~ using m digits.
EmbeddedMeritReport merit_embedded(const EmbeddedNetDef& net, const MeritConfig& cfg, OpCounter* counter = nullptr,
                                   unsigned threads = 1);

}  // namespace tvalue
