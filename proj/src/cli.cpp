#include "tvalue/cli.hpp"

#include "tvalue/bench.hpp"
#include "tvalue/embedded.hpp"
#include "tvalue/error.hpp"
#include "tvalue/merit.hpp"
#include "tvalue/netio.hpp"
#include "tvalue/projections.hpp"
#include "tvalue/tvalue.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <ostream>

namespace tvalue {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        out.push_back(text.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

std::size_t to_size(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        if (text.empty() || text.front() == '-') throw std::invalid_argument(text);
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        throw ContractViolation("bad " + what + " '" + text + "'");
    }
    if (used != text.size()) throw ContractViolation("bad " + what + " '" + text + "'");
    return static_cast<std::size_t>(v);
}

double to_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ContractViolation("bad " + what + " '" + text + "'");
    }
    if (used != text.size()) throw ContractViolation("bad " + what + " '" + text + "'");
    return v;
}

// "12", "3,5,7" or "16..24"
std::vector<std::size_t> parse_values(const std::string& text, const std::string& what) {
    std::vector<std::size_t> out;
    for (const std::string& item : split(text, ',')) {
        const std::size_t dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(to_size(item, what));
            continue;
        }
        const std::size_t lo = to_size(item.substr(0, dots), what);
        const std::size_t hi = to_size(item.substr(dots + 2), what);
        if (lo > hi) throw ContractViolation("empty range '" + item + "' for " + what);
        for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    }
    return out;
}

Method to_method(const std::string& name) {
    const auto m = parse_method(name);
    if (!m) throw ContractViolation("unknown method '" + name + "' (mgl-inc, mgl-dec, schmid, ps, oracle)");
    return *m;
}

WeightSpec parse_weights(const std::string& text) {
    if (text == "uniform") return WeightSpec::uniform();
    if (text == "joe-kuo-2d") return WeightSpec::joe_kuo_2d();
    const std::size_t colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string kind = text.substr(0, colon);
        std::vector<double> values;
        for (const std::string& v : split(text.substr(colon + 1), ',')) values.push_back(to_double(v, "weight"));
        if (kind == "order") return WeightSpec::order_dependent(std::move(values));
        if (kind == "product") return WeightSpec::product(std::move(values));
    }
    throw ContractViolation("unknown weights '" + text + "' (uniform, order:..., product:..., joe-kuo-2d)");
}

TildeT parse_tilde(const std::string& text) {
    if (text == "t") return TildeT::raw();
    if (text == "star-disc") return TildeT::star_disc();
    if (text.rfind("joe-kuo:", 0) == 0) return TildeT::joe_kuo(to_double(text.substr(8), "joe-kuo exponent"));
    throw ContractViolation("unknown tilde '" + text + "' (t, star-disc, joe-kuo:P)");
}

double parse_norm(const std::string& text) {
    if (text == "inf") return kInfNorm;
    const double q = to_double(text, "norm");
    if (!(q >= 1.0)) throw ContractViolation("norm must be >= 1 or inf");
    return q;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

json terms_json(const MeritReport& report) {
    json arr = json::array();
    for (const ProjectionTerm& t : report.terms)
        arr.push_back({{"u", coordinates_of(t.u)}, {"t", t.t}, {"tilde", t.tilde}, {"weight", t.weight},
                       {"term", t.term}});
    return arr;
}

void print_terms(std::ostream& out, const MeritReport& report) {
    out << "u\tt\ttilde\tterm\n";
    for (const ProjectionTerm& t : report.terms)
        out << '{' << format_key(t.u) << "}\t" << t.t << '\t' << fmt(t.tilde) << '\t' << fmt(t.term) << '\n';
}

struct ComputeArgs {
    std::string input;
    std::string method = "mgl-inc";
    std::string projection;
    bool json = false;
};

int cmd_compute(const ComputeArgs& a, std::ostream& out) {
    const Method method = to_method(a.method);
    const NetDef net = read_net_file(a.input);
    std::vector<BitMatrix> gens = net.matrices;
    if (!a.projection.empty()) {
        auto coords = parse_values(a.projection, "projection");
        std::sort(coords.begin(), coords.end());
        if (std::adjacent_find(coords.begin(), coords.end()) != coords.end())
            throw ContractViolation("projection lists a coordinate twice");
        gens = net.select(coords);
    }
    OpCounter counter;
    const std::size_t r = rho(gens, method, &counter);
    if (a.json) {
        json j = {{"t", net.k - r}, {"rho", r}, {"method", method_name(method)}, {"s", gens.size()},
                  {"k", net.k}, {"vecadds", counter.vec_adds}};
        out << j.dump() << '\n';
    } else {
        out << "t=" << net.k - r << " rho=" << r << " method=" << method_name(method) << " s=" << gens.size()
            << " k=" << net.k << " vecadds=" << counter.vec_adds << '\n';
    }
    return 0;
}

struct MeritArgs {
    std::string input;
    std::size_t d_max = 0;
    std::string norm = "inf";
    std::string weights = "uniform";
    std::string tilde = "t";
    std::size_t m0 = 0;
    bool per_projection = false;
    bool json = false;
};

int cmd_merit(const MeritArgs& a, unsigned threads, std::ostream& out) {
    MeritConfig cfg;
    cfg.weights = parse_weights(a.weights);
    cfg.tilde = parse_tilde(a.tilde);
    cfg.norm = parse_norm(a.norm);
    NetDef net = read_net_file(a.input);
    cfg.d_max = a.d_max == 0 ? std::min<std::size_t>(2, net.s()) : a.d_max;
    if (a.m0 != 0) cfg.m0 = a.m0;
    cfg.validate(net.s(), net.k);

    OpCounter counter;
    if (cfg.m0) {
        const EmbeddedNetDef emb = EmbeddedNetDef::make(std::move(net), *cfg.m0);
        const EmbeddedMeritReport report = merit_embedded(emb, cfg, &counter, threads);
        if (a.json) {
            json levels = json::array();
            for (const LevelMerit& lvl : report.levels) {
                json entry = {{"m", lvl.m}, {"merit", lvl.report.value}};
                if (a.per_projection) entry["projections"] = terms_json(lvl.report);
                levels.push_back(entry);
            }
            out << json{{"merit", report.value}, {"levels", levels}, {"vecadds", counter.vec_adds}}.dump() << '\n';
            return 0;
        }
        for (const LevelMerit& lvl : report.levels) {
            out << "m=" << lvl.m << " merit=" << fmt(lvl.report.value) << '\n';
            if (a.per_projection) print_terms(out, lvl.report);
        }
        out << "merit=" << fmt(report.value) << '\n';
        return 0;
    }

    const MeritReport report = merit(net, cfg, &counter, threads);
    if (a.json) {
        json j = {{"merit", report.value}, {"vecadds", counter.vec_adds}};
        if (a.per_projection) j["projections"] = terms_json(report);
        out << j.dump() << '\n';
        return 0;
    }
    if (a.per_projection) print_terms(out, report);
    out << "merit=" << fmt(report.value) << '\n';
    return 0;
}

struct RandomArgs {
    std::size_t s = 0;
    std::size_t k = 0;
    std::uint64_t seed = 1;
    std::size_t count = 1;
    std::size_t m0 = 0;
    std::string out_dir;
};

int cmd_random(const RandomArgs& a, std::ostream& out) {
    if (a.s == 0 || a.k == 0) throw ContractViolation("--s and --k must be positive");
    if (a.k > kMaxCols) throw SizeError("k = " + std::to_string(a.k) + " exceeds 64");
    if (a.m0 > a.k) throw ContractViolation("--embedded-from exceeds k");
    namespace fs = std::filesystem;
    fs::create_directories(a.out_dir);
    NetSampler sampler(a.seed);
    for (std::size_t i = 0; i < a.count; ++i) {
        const NetDef net = a.m0 == 0 ? sampler.net(a.s, a.k) : sampler.embedded_net(a.s, a.k, a.m0);
        char name[32];
        std::snprintf(name, sizeof name, "net-%04zu.txt", i);
        const fs::path path = fs::path(a.out_dir) / name;
        std::ofstream file(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + path.string());
        file << emit_net(net);
        if (!file) throw std::runtime_error("write failed for " + path.string());
        out << path.string() << '\n';
    }
    return 0;
}

struct BenchArgs {
    std::string suite = "single";
    std::string s;
    std::string k;
    std::string methods = "mgl-inc,schmid,ps";
    std::size_t samples = 20;
    std::uint64_t seed = 1;
    std::string out;
    std::size_t d_max = 0;
    std::uint64_t budget = 0;
};

int cmd_bench(const BenchArgs& a, unsigned threads, std::ostream& out, std::ostream& err) {
    BenchSpec spec;
    const auto suite = parse_suite(a.suite);
    if (!suite) throw ContractViolation("unknown suite '" + a.suite + "' (single, projections)");
    spec.suite = *suite;
    spec.s_values = parse_values(a.s, "s");
    spec.k_values = parse_values(a.k, "k");
    for (const std::string& m : split(a.methods, ',')) spec.methods.push_back(to_method(m));
    spec.samples = a.samples;
    spec.seed = a.seed;
    spec.d_max = a.d_max;
    spec.budget = a.budget;
    spec.threads = threads;

    const BenchResult result = run_suite(spec);
    for (const BenchSkip& skip : result.skipped)
        err << "skip: " << method_name(skip.method) << " s=" << skip.s << " k=" << skip.k << ": " << skip.reason
            << '\n';
    if (result.records.empty()) throw ContractViolation("every cell was skipped");

    if (a.out.empty()) {
        write_csv(out, result.records);
    } else {
        std::ofstream file(a.out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write " + a.out);
        write_csv(file, result.records);
        if (!file) throw std::runtime_error("write failed for " + a.out);
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"t-values and figures of merit of digital nets in base 2", "tvalue"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned threads = 1;
    app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 1024u));

    ComputeArgs compute;
    auto* c = app.add_subcommand("compute", "t-value of a net or one projection");
    c->add_option("--input", compute.input, "net file")->required();
    c->add_option("--method", compute.method, "mgl-inc, mgl-dec, schmid, ps or oracle");
    c->add_option("--projection", compute.projection, "1-based coordinates, e.g. 1,3");
    c->add_flag("--json", compute.json);

    MeritArgs merit_args;
    auto* m = app.add_subcommand("merit", "figure of merit over projections");
    m->add_option("--input", merit_args.input, "net file")->required();
    m->add_option("--dmax", merit_args.d_max, "largest projection order (default min(2, s))");
    m->add_option("--norm", merit_args.norm, "inf or an exponent >= 1");
    m->add_option("--weights", merit_args.weights, "uniform, order:w1,..., product:g1,..., joe-kuo-2d");
    m->add_option("--tilde", merit_args.tilde, "t, star-disc or joe-kuo:P");
    m->add_option("--embedded-from", merit_args.m0, "score the embedded nets m0..k");
    m->add_flag("--per-projection", merit_args.per_projection);
    m->add_flag("--json", merit_args.json);

    RandomArgs random_args;
    auto* r = app.add_subcommand("random", "sample fully projection-regular nets");
    r->add_option("--s", random_args.s)->required();
    r->add_option("--k", random_args.k)->required();
    r->add_option("--seed", random_args.seed);
    r->add_option("--count", random_args.count);
    r->add_option("--embedded-from", random_args.m0, "also require non-singular leading m x m minors for m >= M0");
    r->add_option("--out", random_args.out_dir, "output directory")->required();

    BenchArgs bench_args;
    auto* b = app.add_subcommand("bench", "timing and operation counts against the closed-form bounds");
    b->add_option("--suite", bench_args.suite, "single or projections");
    b->add_option("--s", bench_args.s, "values such as 12, 3,4 or 2..5")->required();
    b->add_option("--k", bench_args.k, "values such as 16,20,24 or 4..10")->required();
    b->add_option("--methods", bench_args.methods, "comma-separated method names");
    b->add_option("--samples", bench_args.samples);
    b->add_option("--seed", bench_args.seed);
    b->add_option("--out", bench_args.out, "CSV file (default standard output)");
    b->add_option("--dmax", bench_args.d_max, "projections suite: largest order (default s)");
    b->add_option("--budget", bench_args.budget, "skip cells whose bound exceeds this (0: no limit)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*c) return cmd_compute(compute, out);
        if (*m) return cmd_merit(merit_args, threads, out);
        if (*r) return cmd_random(random_args, out);
        if (*b) return cmd_bench(bench_args, threads, out, err);
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "error: " << msg << '\n';
        return 1;
    }
    return 1;
}

}  // namespace tvalue
