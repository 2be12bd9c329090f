#include "tvalue/merit.hpp"

#include "tvalue/composition.hpp"
#include "tvalue/error.hpp"

#include <algorithm>
#include <cmath>

namespace tvalue {

namespace {

void require_non_negative(const std::vector<double>& values) {
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v)) throw ContractViolation("weights must be finite and non-negative");
}

}  // namespace

WeightSpec WeightSpec::order_dependent(std::vector<double> by_order) {
    require_non_negative(by_order);
    return WeightSpec(Kind::order_dependent, std::move(by_order));
}

WeightSpec WeightSpec::product(std::vector<double> per_coordinate) {
    require_non_negative(per_coordinate);
    return WeightSpec(Kind::product, std::move(per_coordinate));
}

void WeightSpec::validate(std::size_t s, std::size_t d_max) const {
    if (kind_ == Kind::order_dependent && values_.size() < d_max)
        throw ContractViolation("order-dependent weights need one value per order up to d_max");
    if (kind_ == Kind::product && values_.size() < s)
        throw ContractViolation("product weights need one value per coordinate");
}

double WeightSpec::weight(ProjectionKey u, std::size_t d_max) const {
    const std::size_t order = cardinality(u);
    if (order == 0 || order > d_max) return 0.0;
    switch (kind_) {
        case Kind::uniform: return 1.0;
        case Kind::order_dependent: return values_.at(order - 1);
        case Kind::product: {
            double w = 1.0;
            for (std::size_t j : coordinates_of(u)) w *= values_.at(j - 1);
            return w;
        }
        case Kind::joe_kuo_2d: {
            if (order != 2) return 0.0;
            const std::size_t first = coordinates_of(u).front();
            return std::pow(0.9999, static_cast<double>(first - 1));
        }
    }
    return 0.0;
}

TildeT TildeT::joe_kuo(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ContractViolation("joe-kuo exponent p must be positive");
    return TildeT(Kind::joe_kuo, p);
}

double TildeT::operator()(std::size_t t, std::size_t k, std::size_t order) const {
    if (t > k) throw ContractViolation("t exceeds k");
    switch (kind_) {
        case Kind::raw: return static_cast<double>(t);
        case Kind::star_disc: {
            uint128 sum = 0;
            for (std::size_t l = 0; l < order; ++l) sum += binomial(k - t, l);
            return std::ldexp(static_cast<double>(sum), static_cast<int>(t) - static_cast<int>(k));
        }
        case Kind::joe_kuo: {
            if (t == 0) return 0.0;
            return std::pow(static_cast<double>(t), p_) / static_cast<double>(k - t + 1);
        }
    }
    return 0.0;
}

void MeritConfig::validate(std::size_t s, std::size_t k) const {
    if (!(norm >= 1.0)) throw ContractViolation("norm exponent must be >= 1 or inf");
    if (d_max < 1 || d_max > s) throw ContractViolation("d_max must lie in [1, s]");
    weights.validate(s, d_max);
    if (m0 && (*m0 < 1 || *m0 > k)) throw ContractViolation("m0 must lie in [1, k]");
}

double aggregate(std::span<const double> terms, double norm) {
    double top = 0.0;
    for (double x : terms) top = std::max(top, x);
    if (std::isinf(norm) || top == 0.0) return top;
    double sum = 0.0;
    for (double x : terms) sum += std::pow(x / top, norm);
    return top * std::pow(sum, 1.0 / norm);
}

MeritReport score(std::span<const ProjectionKey> keys, const std::function<std::size_t(ProjectionKey)>& t_of,
                  std::size_t k, const MeritConfig& cfg) {
    MeritReport report;
    std::vector<double> terms;
    for (ProjectionKey u : keys) {
        const double w = cfg.weights.weight(u, cfg.d_max);
        if (w == 0.0) continue;
        ProjectionTerm term;
        term.u = u;
        term.t = t_of(u);
        term.weight = w;
        term.tilde = cfg.tilde(term.t, k, cardinality(u));
        term.term = w * term.tilde;
        terms.push_back(term.term);
        report.terms.push_back(term);
    }
    std::sort(report.terms.begin(), report.terms.end(),
              [](const ProjectionTerm& a, const ProjectionTerm& b) { return lexicographic_less(a.u, b.u); });
    report.value = aggregate(terms, cfg.norm);
    return report;
}

MeritReport merit(const NetDef& net, const MeritConfig& cfg, OpCounter* counter, unsigned threads) {
    cfg.validate(net.s(), net.k);
    const RhoTable table = rho_all_projections(net, cfg.d_max, counter, threads);
    const auto keys = table.sorted_keys();
    return score(keys, [&](ProjectionKey u) { return table.t(u); }, net.k, cfg);
}

EmbeddedMeritReport merit_embedded(const EmbeddedNetDef& net, const MeritConfig& cfg, OpCounter* counter,
                                   unsigned threads) {
    cfg.validate(net.net.s(), net.net.k);
    const EmbeddedTable table = embedded_t_all(net, cfg.d_max, counter, threads);
    const auto keys = table.sorted_keys();

    EmbeddedMeritReport out;
    for (std::size_t m = net.m0; m <= net.net.k; ++m) {
        LevelMerit level{m, score(keys, [&](ProjectionKey u) { return table.t(u, m); }, m, cfg)};
        out.value = std::max(out.value, level.report.value);
        out.levels.push_back(std::move(level));
    }
    return out;
}

}  // namespace tvalue
