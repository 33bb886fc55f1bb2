#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spanner/errors.hpp"
#include "spanner/graph.hpp"
#include "spanner/hitting.hpp"
#include "spanner/suite.hpp"

using namespace spanner;

namespace {

enum Exit { kOk = 0, kAuditFailure = 1, kConfigError = 2, kResourceError = 3 };

struct RunConfig {
    std::string gen;
    std::string input;
    std::string config;
    std::string algo = "randomized";
    unsigned k = 6;
    std::string backend;
    std::uint64_t seed = 0;
    bool verify = false;
    std::size_t routing_cost = 1;
    std::string out;
    std::string format = "csv";
    std::string transcript;
};

struct SweepConfig {
    std::vector<unsigned> ks{6, 8, 16, 32};
    std::size_t n = 512;
    double p = 0.1;
    std::string gen;
    std::string algo = "randomized";
    std::string backend;
    std::uint64_t seed = 0;
    bool verify = false;
    std::size_t routing_cost = 1;
    std::string out;
    std::string format = "csv";
    unsigned threads = 0;
};

struct HitsetConfig {
    std::string instance;
    std::string backend = "derand";
    std::uint64_t seed = 0;
    unsigned trials = 1;
    unsigned d = 8;
    std::string profile = "sqrt";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Flags given on the command line win over the config file.
void apply_config_file(RunConfig& c, const CLI::App& app) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(c.config));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw InputError("config must be a JSON object");
    auto take = [&](const char* key, auto& field, const char* flag) {
        if (j.contains(key) && app.count(flag) == 0) {
            try {
                j.at(key).get_to(field);
            } catch (const nlohmann::json::exception&) {
                throw InputError(std::string("config field '") + key + "' has the wrong type");
            }
        }
    };
    take("gen", c.gen, "--gen");
    take("input", c.input, "--input");
    take("algo", c.algo, "--algo");
    take("k", c.k, "--k");
    take("backend", c.backend, "--backend");
    take("seed", c.seed, "--seed");
    take("verify", c.verify, "--verify");
    take("routing_cost", c.routing_cost, "--routing-cost");
    take("out", c.out, "--out");
    take("format", c.format, "--format");
}

Graph load_graph(const std::string& gen, const std::string& input, std::uint64_t seed) {
    if (!gen.empty() && !input.empty()) throw InputError("give either --gen or --input, not both");
    if (!input.empty()) return load_edge_list_file(input);
    if (gen.empty()) throw InputError("a graph source is required (--gen or --input)");
    return generate(GenSpec::parse(gen), seed);
}

void check_domain(Algorithm a, unsigned k) {
    switch (a) {
        case Algorithm::Randomized:
        case Algorithm::Deterministic:
        case Algorithm::Ok:
            if (k < 6) throw UnsupportedK(algorithm_name(a) + " needs k >= 6 (use --algo small-k for k in 2..5)");
            break;
        case Algorithm::SmallK:
            if (k < 2 || k > 5) throw UnsupportedK("small-k needs k in 2..5");
            break;
        case Algorithm::BaswanaSen:
            if (k < 1) throw InputError("baswana-sen needs k >= 1");
            break;
    }
}

SuiteOptions suite_options(const std::string& backend, std::uint64_t seed, bool verify, std::size_t routing_cost) {
    SuiteOptions opt;
    opt.seed = seed;
    opt.audit = verify;
    if (routing_cost < 1) throw InputError("--routing-cost must be at least 1");
    opt.routing_cost = routing_cost;
    if (!backend.empty()) {
        opt.backend = parse_backend(backend);
        opt.backend_set = true;
    }
    return opt;
}

void write_reports(const std::vector<SpannerReport>& reports, const std::string& format, const std::string& out) {
    std::ostringstream ss;
    if (format == "csv") {
        ss << SpannerReport::csv_header() << "\n";
        for (const auto& r : reports) ss << r.csv_row() << "\n";
    } else {
        for (const auto& r : reports) ss << r.to_json() << "\n";
    }
    if (out.empty()) {
        std::cout << ss.str();
        return;
    }
    std::ofstream f(out);
    if (!f) throw InputError("cannot write " + out);
    f << ss.str();
}

void summarize(const SpannerReport& r) {
    std::cerr << r.algorithm << " n=" << r.n << " m=" << r.m << " k=" << r.k << " |H|=" << r.edges
              << " rounds=" << r.rounds << " (routing " << r.routing_rounds << ")";
    if (r.audited) std::cerr << " max_stretch=" << r.max_stretch << " bound=" << r.stretch_bound;
    std::cerr << (r.success ? " ok" : " FAILED");
    if (!r.failure.empty()) std::cerr << ": " << r.failure;
    std::cerr << "\n";
}

int cmd_run(RunConfig c, const CLI::App& app) {
    if (!c.config.empty()) apply_config_file(c, app);
    if (c.format != "csv" && c.format != "json") throw InputError("--format must be csv or json");
    Algorithm a = parse_algorithm(c.algo);
    check_domain(a, c.k);
    SuiteOptions opt = suite_options(c.backend, c.seed, c.verify, c.routing_cost);
    Graph g = load_graph(c.gen, c.input, c.seed);
    std::ofstream transcript;
    if (!c.transcript.empty()) {
        transcript.open(c.transcript);
        if (!transcript) throw InputError("cannot write " + c.transcript);
        opt.transcript = &transcript;
    }
    SpannerRun run = run_algorithm(a, g, c.k, opt);
    summarize(run.report);
    write_reports({run.report}, c.format, c.out);
    return run.report.success ? kOk : kAuditFailure;
}

int cmd_sweep(const SweepConfig& c) {
    if (c.format != "csv" && c.format != "json") throw InputError("--format must be csv or json");
    Algorithm a = parse_algorithm(c.algo);
    for (unsigned k : c.ks) check_domain(a, k);
    SuiteOptions opt = suite_options(c.backend, c.seed, c.verify, c.routing_cost);
    std::string spec = c.gen.empty() ? "gnp:" + std::to_string(c.n) + ":" + std::to_string(c.p) : c.gen;
    Graph g = generate(GenSpec::parse(spec), c.seed);
    std::vector<SpannerReport> reports(c.ks.size());
    std::vector<std::string> errors(c.ks.size());
    unsigned threads = c.threads ? c.threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(mu);
                if (next >= c.ks.size()) return;
                i = next++;
            }
            try {
                reports[i] = run_algorithm(a, g, c.ks[i], opt).report;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    for (unsigned t = 0; t < std::min<std::size_t>(threads, c.ks.size()); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (!e.empty()) throw Error(e);
    bool ok = true;
    for (const auto& r : reports) {
        summarize(r);
        ok = ok && r.success;
    }
    write_reports(reports, c.format, c.out);
    return ok ? kOk : kAuditFailure;
}

int cmd_hitset(const HitsetConfig& c) {
    HittingSetInstance inst = HittingSetInstance::from_json(read_file(c.instance));
    HitBackend b = parse_backend(c.backend);
    BetaProfile profile;
    if (c.profile == "sqrt")
        profile = BetaProfile::Sqrt;
    else if (c.profile == "log")
        profile = BetaProfile::Log;
    else
        throw InputError("--profile must be sqrt or log");
    if (c.trials < 1) throw InputError("--trials must be at least 1");
    if (b == HitBackend::Derand) {
        DerandParams p;
        p.d = c.d;
        p.profile = profile;
        DerandResult r;
        try {
            r = derandomized_hitting_set(inst, p);
        } catch (const ParameterError& e) {
            std::cerr << e.what() << " (size part " << e.size_part() << ", miss part " << e.miss_part()
                      << "); retrying in best-effort mode\n";
            p.best_effort = true;
            r = derandomized_hitting_set(inst, p);
        }
        HittingAudit a = audit_hitting(inst, r.z);
        std::cout << "size=" << a.z_size << " pass=" << (a.pass ? "true" : "false")
                  << " seed_bits=" << r.seed_bits << " beta=" << r.beta << " rounds=" << r.rounds
                  << " patched=" << r.patched << "\n";
        return a.pass ? kOk : kAuditFailure;
    }
    std::size_t failures = 0, total_size = 0, seed_bits = 0;
    for (unsigned t = 0; t < c.trials; ++t) {
        std::vector<Vertex> z;
        if (b == HitBackend::Random) {
            z = randomized_hitting_set(inst, 2.0, c.seed + t);
        } else {
            DWiseDraw d = dwise_hitting_draw(inst, c.d, c.seed + t);
            z = d.z;
            seed_bits = d.seed.size();
        }
        HittingAudit a = audit_hitting(inst, z);
        failures += a.pass ? 0 : 1;
        total_size += a.z_size;
        if (c.trials == 1)
            std::cout << "size=" << a.z_size << " pass=" << (a.pass ? "true" : "false")
                      << " seed_bits=" << seed_bits << "\n";
    }
    if (c.trials > 1) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "trials=%u failures=%zu failure_rate=%.6g mean_size=%.6g seed_bits=%zu\n",
                      c.trials, failures, static_cast<double>(failures) / c.trials,
                      static_cast<double>(total_size) / c.trials, seed_bits);
        std::cout << buf;
    }
    return failures == 0 ? kOk : kAuditFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Congested-clique spanner constructions and audits"};
    app.require_subcommand(1);

    RunConfig rc;
    auto* run = app.add_subcommand("run", "Build one spanner and report it");
    run->add_option("--gen", rc.gen, "Generator spec, e.g. gnp:200:0.1, path:9, grid:8:8");
    run->add_option("--input", rc.input, "Edge-list file");
    run->add_option("--config", rc.config, "JSON config file with the same keys as the flags");
    run->add_option("--algo", rc.algo, "randomized|deterministic|ok|baswana-sen|small-k");
    run->add_option("--k", rc.k, "Stretch parameter");
    run->add_option("--backend", rc.backend, "random|dwise|derand");
    run->add_option("--seed", rc.seed, "RNG seed (generator and algorithm)");
    run->add_flag("--verify", rc.verify, "Audit the stretch of every edge");
    run->add_option("--routing-cost", rc.routing_cost, "Rounds charged per routing call");
    run->add_option("--out", rc.out, "Output file (default stdout)");
    run->add_option("--format", rc.format, "csv|json");
    run->add_option("--transcript", rc.transcript, "Write a per-round JSON-lines transcript");

    SweepConfig sc;
    auto* sweep = app.add_subcommand("sweep", "Run one graph across several k");
    sweep->add_option("--k", sc.ks, "Comma-separated k values")->delimiter(',');
    sweep->add_option("--n", sc.n, "Vertices of the default G(n,p) graph");
    sweep->add_option("--p", sc.p, "Edge probability of the default G(n,p) graph");
    sweep->add_option("--gen", sc.gen, "Generator spec overriding --n/--p");
    sweep->add_option("--algo", sc.algo, "Algorithm");
    sweep->add_option("--backend", sc.backend, "random|dwise|derand");
    sweep->add_option("--seed", sc.seed, "RNG seed");
    sweep->add_flag("--verify", sc.verify, "Audit every run");
    sweep->add_option("--routing-cost", sc.routing_cost, "Rounds charged per routing call");
    sweep->add_option("--out", sc.out, "Output file (default stdout)");
    sweep->add_option("--format", sc.format, "csv|json");
    sweep->add_option("--threads", sc.threads, "Worker threads (0 = hardware)");

    HitsetConfig hc;
    auto* hitset = app.add_subcommand("hitset", "Solve a hitting-set instance");
    hitset->add_option("instance", hc.instance, "Instance JSON file")->required();
    hitset->add_option("--backend", hc.backend, "random|dwise|derand");
    hitset->add_option("--seed", hc.seed, "RNG seed for random/dwise");
    hitset->add_option("--trials", hc.trials, "Repeat random/dwise draws and print the failure rate");
    hitset->add_option("--d", hc.d, "Independence of the hash family");
    hitset->add_option("--profile", hc.profile, "sqrt|log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*run) return cmd_run(rc, *run);
        if (*sweep) return cmd_sweep(sc);
        if (*hitset) return cmd_hitset(hc);
    } catch (const InputError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kResourceError;
    } catch (const std::bad_alloc&) {
        std::cerr << "resource error: out of memory\n";
        return kResourceError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAuditFailure;
    }
    return kConfigError;
}
