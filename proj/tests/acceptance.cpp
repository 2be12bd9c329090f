// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"
#include "tvalue/bench.hpp"
#include "tvalue/embedded.hpp"
#include "tvalue/merit.hpp"
#include "tvalue/netio.hpp"
#include "tvalue/projections.hpp"
#include "tvalue/raref.hpp"
#include "tvalue/tvalue.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>

using namespace tvalue;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const char* title, const Outcome& o, double seconds) {
    std::printf("criterion %d: %s  %s (%.1f s)%s%s\n", id, o.pass ? "PASS" : "FAIL", title, seconds,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

template <class F>
void run(int id, const char* title, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = f();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const auto stop = std::chrono::steady_clock::now();
    report(id, title, o, std::chrono::duration<double>(stop - start).count());
}

// Bound bookkeeping shared by criteria 1-3 and read by criterion 5.
struct BoundTally {
    std::map<std::string, std::uint64_t> checked;
    std::map<std::string, std::uint64_t> exceeded;
    std::map<std::string, std::string> example;

    void check(const std::string& what, std::uint64_t count, std::uint64_t bound, const std::string& where) {
        ++checked[what];
        if (count > bound) {
            if (exceeded[what]++ == 0) example[what] = where + ": " + std::to_string(count) + " > " + std::to_string(bound);
        }
    }
};

BoundTally tally;

std::string cell(std::size_t s, std::size_t k, std::size_t t) {
    return "s=" + std::to_string(s) + " k=" + std::to_string(k) + " t=" + std::to_string(t);
}

const Method kMethods[] = {Method::mgl_increasing, Method::mgl_decreasing, Method::schmid, Method::pirsic_schmid,
                           Method::oracle};

// Criterion 1 nets, kept for criterion 9.
std::vector<NetDef> corpus1;

Outcome criterion1() {
    std::size_t nets = 0, mismatches = 0;
    std::string first;
    for (std::size_t s = 2; s <= 4; ++s)
        for (std::size_t k = 3; k <= 8; ++k) {
            NetSampler sampler(cell_seed(1001, s, k));
            for (int i = 0; i < 28; ++i) {
                NetDef net = sampler.net(s, k);
                std::map<Method, std::size_t> t;
                for (Method m : kMethods) {
                    OpCounter counter;
                    t[m] = t_value(net.matrices, m, &counter);
                    if (m != Method::oracle)
                        tally.check(std::string(method_name(m)) + " single", counter.vec_adds,
                                    bound_single(m, s, k, t[Method::mgl_increasing]), cell(s, k, t[m]));
                }
                const std::size_t points = oracle::t_by_points(net.matrices);
                bool same = points == t[Method::oracle];
                for (Method m : kMethods) same = same && t[m] == points;
                if (!same) {
                    if (mismatches++ == 0) first = "first mismatch at " + cell(s, k, points);
                }
                corpus1.push_back(std::move(net));
                ++nets;
            }
        }
    return {mismatches == 0, std::to_string(nets) + " nets, " + std::to_string(mismatches) + " mismatches" +
                                 (first.empty() ? "" : "; " + first)};
}

// Criterion 2 nets and tables, kept for criterion 8.
struct Instance {
    NetDef net;
    RhoTable table;
};
std::vector<Instance> corpus2;

Outcome criterion2() {
    std::size_t nets = 0, entries = 0, bad_standalone = 0, bad_oracle = 0, bad_recurrence = 0, bad_baselines = 0;
    for (std::size_t s = 2; s <= 5; ++s)
        for (std::size_t k = 2; k <= 8; ++k) {
            NetSampler sampler(cell_seed(2002, s, k));
            for (int i = 0; i < 8; ++i) {
                NetDef net = sampler.net(s, k);
                OpCounter mgl, by_s, by_ps;
                RhoTable table = rho_all_projections(net, s, &mgl);
                const RhoTable ts = rho_all_projections_schmid(net, s, &by_s);
                const RhoTable tp = rho_all_projections_ps(net, s, &by_ps);
                const std::string where = "s=" + std::to_string(s) + " k=" + std::to_string(k);
                tally.check("mgl projections", mgl.vec_adds, bound_projections(Method::mgl_decreasing, s, k, s), where);
                tally.check("schmid projections", by_s.vec_adds, bound_projections(Method::schmid, s, k, s), where);
                tally.check("ps projections", by_ps.vec_adds, bound_projections(Method::pirsic_schmid, s, k, s), where);

                for (ProjectionKey u : table.sorted_keys()) {
                    const auto gens = net.select(coordinates_of(u));
                    const std::size_t r = table.at(u);
                    ++entries;
                    if (r != rho(gens, Method::mgl_increasing)) ++bad_standalone;
                    if (r != rho_oracle(gens)) ++bad_oracle;
                    if (r != ts.at(u) || r != tp.at(u)) ++bad_baselines;
                    std::size_t rhs = cardinality(u) == 1 ? k : oracle::rho_tilde(gens);
                    for (ProjectionKey bits = u; bits && cardinality(u) > 1; bits &= bits - 1)
                        rhs = std::min(rhs, table.at(u & ~(bits & (~bits + 1))));
                    if (r != rhs) ++bad_recurrence;
                }
                corpus2.push_back({std::move(net), std::move(table)});
                ++nets;
            }
        }
    std::ostringstream d;
    d << nets << " nets, " << entries << " entries; mismatches: standalone " << bad_standalone << ", oracle "
      << bad_oracle << ", recurrence " << bad_recurrence << ", S/PS tables " << bad_baselines;
    return {bad_standalone + bad_oracle + bad_recurrence + bad_baselines == 0, d.str()};
}

Outcome criterion3() {
    std::size_t nets = 0, entries = 0, bad_t = 0, l_checked = 0, bad_l = 0;
    for (std::size_t s = 2; s <= 4; ++s)
        for (std::size_t k = 3; k <= 8; ++k) {
            NetSampler sampler(cell_seed(3003, s, k));
            for (int i = 0; i < 6; ++i) {
                const auto net = EmbeddedNetDef::make(sampler.embedded_net(s, k, 2), 2);
                OpCounter counter;
                const EmbeddedTable table = embedded_t_all(net, s, &counter);
                tally.check("mgl embedded", counter.vec_adds, bound_projections(Method::mgl_decreasing, s, k, s),
                            "s=" + std::to_string(s) + " k=" + std::to_string(k));
                for (ProjectionKey u : table.sorted_keys()) {
                    const auto gens = net.net.select(coordinates_of(u));
                    for (std::size_t m = 2; m <= k; ++m) {
                        std::vector<BitMatrix> cut;
                        for (const BitMatrix& c : gens) cut.push_back(c.truncated(m, m));
                        ++entries;
                        if (table.t(u, m) != m - oracle::rho(cut)) ++bad_t;
                    }
                    if (cardinality(u) < 2) continue;
                    for (std::size_t q = cardinality(u); q <= k; ++q) {
                        const auto l = table.l_at(u, q);
                        if (!l) continue;
                        ++l_checked;
                        if (*l != oracle::l_q(gens, q)) ++bad_l;
                    }
                }
                ++nets;
            }
        }
    std::ostringstream d;
    d << nets << " nets, " << entries << " (u,m) entries, " << bad_t << " t mismatches; " << l_checked
      << " l_q values, " << bad_l << " mismatches";
    return {bad_t == 0 && bad_l == 0 && l_checked > 0, d.str()};
}

std::uint64_t raref_calls = 0, raref_over = 0;

Outcome criterion4() {
    std::mt19937_64 rng(4004);
    std::size_t cases = 0, computes = 0, updates = 0, invariant_failures = 0, rank_mismatches = 0;
    while (cases < 1000) {
        const std::size_t q = 1 + rng() % 10;
        const std::size_t k = q + rng() % (13 - q);
        BitMatrix c = oracle::random_matrix(rng, q, k);
        if (cases % 3 == 0 && q > 1) c.set_row(q - 1, c.row(0));  // rank-deficient computes too
        OpCounter counter;
        RarefState st = RarefState::compute(c, &counter);
        ++computes;
        ++raref_calls;
        if (counter.vec_adds > 4 * q * q) ++raref_over;
        if (!raref_violations(st).empty()) ++invariant_failures;
        if (st.rank() != oracle::rank(c)) ++rank_mismatches;
        ++cases;
        // chain of updates from full-rank states
        for (int step = 0; step < 6 && st.full_rank(); ++step) {
            const std::size_t i = rng() % q;
            Word row = rng() & low_mask(k);
            if (step == 5 && q > 1) row = c.row((i + 1) % q);
            OpCounter uc;
            st.update(i, row, &uc);
            c.set_row(i, row);
            ++updates;
            ++raref_calls;
            if (uc.vec_adds > 6 * q) ++raref_over;
            if (!raref_violations(st).empty()) ++invariant_failures;
            if (st.rank() != RarefState::compute(c).rank() || st.rank() != oracle::rank(c)) ++rank_mismatches;
            ++cases;
        }
    }
    std::ostringstream d;
    d << cases << " cases (" << computes << " computes, " << updates << " updates), invariant failures " << invariant_failures
      << ", update/recompute rank mismatches " << rank_mismatches;
    return {invariant_failures == 0 && rank_mismatches == 0, d.str()};
}

Outcome criterion5() {
    std::ostringstream d;
    bool pass = raref_over == 0;
    d << "raref per-call " << raref_over << "/" << raref_calls << " over";
    for (const auto& [what, n] : tally.checked) {
        const std::uint64_t over = tally.exceeded[what];
        d << "; " << what << " " << over << "/" << n << " over";
        if (over) {
            d << " (e.g. " << tally.example[what] << ")";
            pass = false;
        }
    }
    if (tally.checked.empty()) pass = false;
    return {pass, d.str()};
}

Outcome criterion6() {
    auto totals = [](std::size_t k, std::size_t s, std::size_t d_max) {
        double matrices = 0.0, rows = 0.0;
        for (std::size_t d = 1; d <= d_max; ++d)
            for (std::size_t q = 1; q <= k; ++q) {
                const double n = static_cast<double>(binomial(s, d)) *
                                 static_cast<double>(count_compositions(d, q, Positivity::weak));
                matrices += n;
                rows += n * static_cast<double>(q);
            }
        return std::pair{matrices, rows};
    };
    auto within = [](double value, double target) { return std::abs(value - target) <= 0.05 * target; };
    const auto [m10, r10] = totals(10, 5, 5);
    const auto [m20, r20] = totals(20, 20, 20);
    const bool a = m10 > 1.2e4;
    const bool b = within(r10, 9.1e4);
    const bool c = within(m20, 2.6e14);
    const bool e = within(r20, 4.9e15);
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "k=10 s=5: matrices %.0f (> 1.2e4: %s), rows %.0f (~9.1e4: %s); k=s=20: matrices %.4g "
                  "(~2.6e14: %s), rows %.4g (~4.9e15: %s)",
                  m10, a ? "yes" : "no", r10, b ? "yes" : "no", m20, c ? "yes" : "no", r20, e ? "yes" : "no");
    return {a && b && c && e, buf};
}

Outcome criterion7() {
    BenchSpec spec;
    spec.s_values = {12};
    spec.k_values = {16, 20, 24};
    spec.methods = {Method::mgl_increasing, Method::schmid, Method::pirsic_schmid};
    spec.samples = 20;
    spec.seed = 7007;
    const BenchResult result = run_suite(spec);
    std::map<std::size_t, std::map<Method, double>> ms;
    for (const BenchRecord& r : result.records) ms[r.k][r.method] = r.mean_ms;
    bool pass = ms.size() == 3;
    std::ostringstream d;
    d.setf(std::ios::fixed);
    d.precision(2);
    for (const auto& [k, by] : ms) {
        const double mgl = by.at(Method::mgl_increasing);
        const double s = by.at(Method::schmid);
        const double ps = by.at(Method::pirsic_schmid);
        d << "k=" << k << ": mgl " << mgl << " ms, S " << s << " ms, PS " << ps << " ms; ";
        if (!(mgl < ps)) pass = false;
        if (k == 24 && !(mgl < s && mgl < ps)) pass = false;
    }
    d << "need MGL < PS everywhere and MGL fastest at k=24";
    return {pass, d.str()};
}

Outcome criterion8() {
    std::size_t checked = 0, bad = 0;
    for (const Instance& inst : corpus2) {
        MeritConfig cfg;
        cfg.d_max = inst.net.s();
        cfg.weights = WeightSpec::uniform();
        cfg.tilde = TildeT::raw();
        cfg.norm = kInfNorm;
        std::size_t worst = 0;
        for (const auto& [u, r] : inst.table.rho) worst = std::max(worst, inst.net.k - r);
        const MeritReport rep = merit(inst.net, cfg);
        ++checked;
        if (rep.value != static_cast<double>(worst)) ++bad;
    }
    return {checked > 0 && bad == 0, std::to_string(checked) + " instances, " + std::to_string(bad) + " mismatches"};
}

Outcome criterion9() {
    std::size_t s4 = 0, zero = 0;
    for (const NetDef& net : corpus1) {
        if (net.s() != 4) continue;
        ++s4;
        if (t_value(net.matrices, Method::mgl_increasing) == 0) ++zero;
    }
    return {s4 > 0 && zero == 0, std::to_string(s4) + " nets with s=4, " + std::to_string(zero) + " with t=0"};
}

}  // namespace

int main() {
    run(1, "oracle equivalence of all five methods", criterion1);
    run(2, "projection DP correctness", criterion2);
    run(3, "embedded correctness", criterion3);
    run(4, "RAREF invariants", criterion4);
    run(5, "bound compliance", criterion5);
    run(6, "composition count reproduction", criterion6);
    run(7, "performance ordering at s=12", criterion7);
    run(8, "merit equals max t (uniform, raw, inf)", criterion8);
    run(9, "no t=0 for s=4", criterion9);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
