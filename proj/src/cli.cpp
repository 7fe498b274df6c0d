#include "avk/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "avk/json_io.hpp"
#include "avk/seedstream.hpp"
#include "avk/verify.hpp"

namespace avk::cli {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct Row {
    std::uint64_t seed;
    double a, b;
    int n;
    double lambda, phi, tau, bound, margin;
    bool ok;
};

std::string row_csv_header() { return "seed,a,b,n,lambda,phi,tau,bound,margin,ok"; }

std::string row_csv(const Row& r) {
    std::ostringstream os;
    os << r.seed << ',' << fmt(r.a) << ',' << fmt(r.b) << ',' << r.n << ',' << fmt(r.lambda)
       << ',' << fmt(r.phi) << ',' << fmt(r.tau) << ',' << fmt(r.bound) << ',' << fmt(r.margin)
       << ',' << (r.ok ? 1 : 0);
    return os.str();
}

std::string row_jsonl(const Row& r) {
    std::ostringstream os;
    os << "{\"seed\":" << r.seed << ",\"a\":" << fmt(r.a) << ",\"b\":" << fmt(r.b)
       << ",\"n\":" << r.n << ",\"lambda\":" << fmt(r.lambda) << ",\"phi\":" << fmt(r.phi)
       << ",\"tau\":" << fmt(r.tau) << ",\"bound\":" << fmt(r.bound)
       << ",\"margin\":" << fmt(r.margin) << ",\"ok\":" << (r.ok ? "true" : "false") << "}";
    return os.str();
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct VerifyConfig {
    std::string suite = "ap";
    std::vector<std::string> pair_strings;
    std::vector<int> ns;
    int samples = 0; // 0: suite default
    std::uint64_t seed = 20240101;
    std::string backend = "h2";
    std::string out;
    std::string format = "jsonl";
    std::string from_file;
};

std::pair<double, double> parse_pair(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
        throw ConfigError("--pair expects \"a,b\", got \"" + s + "\"");
    try {
        return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ConfigError("--pair expects numeric \"a,b\", got \"" + s + "\"");
    }
}

GoodPair require_good(double a, double b) {
    std::string reason;
    if (auto gp = try_good_pair(a, b, &reason))
        return *gp;
    throw ConfigError("pair (" + fmt(a) + ", " + fmt(b) + ") is not good: " + reason);
}

Backend parse_backend(const std::string& s) {
    if (s == "h2")
        return Backend::H2;
    if (s == "h3")
        return Backend::H3;
    if (s == "tree")
        return Backend::Tree;
    throw ConfigError("unknown backend \"" + s + "\" (expected h2, h3 or tree)");
}

void apply_env_seed(std::uint64_t& seed) {
    if (const char* env = std::getenv("AVK_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError("AVK_SEED is not an unsigned integer: " + std::string(env));
        }
    }
}

// Matrix chain document: residual-vs-orbit-tension consistency, plus the
// norm bound 8c(n-2)e^{2b-a} when a pair is supplied and admissible.
int verify_matrix_file(const VerifyConfig& cfg, const std::string& text) {
    const MatChain mc = mat_chain_from_json(text);
    const int n = static_cast<int>(mc.size());
    if (n < 2)
        throw ConfigError("matrix chain needs at least two matrices");
    const double residual = ap_residual(mc);
    const double tau = tension(mc.orbit_metric());
    const double consistency = std::abs(residual + tau / 2.0);

    Row row{};
    row.seed = cfg.seed;
    row.n = n;
    row.tau = tau;
    row.margin = 1e-9 - consistency;
    row.ok = consistency <= 1e-9;
    if (!cfg.pair_strings.empty()) {
        const auto [a, b] = parse_pair(cfg.pair_strings.front());
        const GoodPair gp = require_good(a, b);
        dictionary(a, b, 2.0); // exits 2 when a - 2b <= log 8
        row.a = gp.a;
        row.b = gp.b;
        row.lambda = gp.lambda;
        row.phi = gp.phi;
        row.bound = 16.0 * (n - 2) * std::exp(2.0 * b - a);
        row.margin = std::min(row.margin, row.bound - std::abs(residual));
        row.ok = row.ok && std::abs(residual) <= row.bound &&
                 is_good_chain(mc.orbit_metric(), gp);
    }
    Output out(cfg.out);
    if (cfg.format == "csv")
        out.stream() << row_csv_header() << '\n' << row_csv(row) << '\n';
    else
        out.stream() << row_jsonl(row) << '\n';
    if (!row.ok)
        std::cerr << "violation: matrix chain in " << cfg.from_file << "\n";
    return row.ok ? 0 : 1;
}

int verify_from_file(const VerifyConfig& cfg) {
    std::ifstream in(cfg.from_file);
    if (!in)
        throw ConfigError("cannot open chain file: " + cfg.from_file);
    std::stringstream buf;
    buf << in.rdbuf();
    if (buf.str().find("\"mats\"") != std::string::npos)
        return verify_matrix_file(cfg, buf.str());
    ChainDoc doc = chain_from_json(buf.str());
    if (!doc.pair && !cfg.pair_strings.empty()) {
        const auto [a, b] = parse_pair(cfg.pair_strings.front());
        doc.pair = require_good(a, b);
    }
    const MetricChain mc = doc.metric_chain();
    const int n = static_cast<int>(mc.segments());

    Row row{};
    row.seed = cfg.seed;
    row.n = n;
    if (doc.pair) {
        row.a = doc.pair->a;
        row.b = doc.pair->b;
        row.lambda = doc.pair->lambda;
        row.phi = doc.pair->phi;
    }
    if (doc.model == "H2" && doc.pair) {
        row.tau = tension(mc);
        row.bound = ap_bound(n, *doc.pair) + 1e-9 * n;
        row.margin = row.bound - std::abs(row.tau);
        row.ok = is_good_chain(mc, *doc.pair) && row.margin >= 0.0;
    } else {
        const CatReport rep = verify_cat_comparison(mc);
        row.tau = rep.tau_source;
        row.bound = rep.tau_image + 1e-9 * n;
        row.margin = row.bound - std::abs(rep.tau_source);
        row.ok = rep.ok && (!doc.pair || is_good_chain(mc, *doc.pair));
    }

    Output out(cfg.out);
    if (cfg.format == "csv")
        out.stream() << row_csv_header() << '\n' << row_csv(row) << '\n';
    else
        out.stream() << row_jsonl(row) << '\n';
    if (!row.ok)
        std::cerr << "violation: seed " << row.seed << " in " << cfg.from_file << "\n";
    return row.ok ? 0 : 1;
}

int run_verify(VerifyConfig cfg) {
    apply_env_seed(cfg.seed);
    if (cfg.format != "csv" && cfg.format != "jsonl")
        throw ConfigError("unknown format \"" + cfg.format + "\" (expected csv or jsonl)");
    if (!cfg.from_file.empty())
        return verify_from_file(cfg);

    std::vector<std::pair<double, double>> pairs;
    for (const auto& s : cfg.pair_strings)
        pairs.push_back(parse_pair(s));
    if (pairs.empty())
        pairs = cfg.suite == "matrix" ? matrix_pair_grid() : default_pair_grid();

    std::vector<int> ns = cfg.ns;
    if (ns.empty()) {
        if (cfg.suite == "ap")
            ns = {3, 5, 10, 25, 50};
        else if (cfg.suite == "matrix")
            ns = {5, 10, 25};
        else if (cfg.suite == "cat")
            ns = {3, 5, 10};
        else
            ns = {5};
    }
    if (cfg.samples < 0)
        throw ConfigError("--samples must be at least 1");
    int samples = cfg.samples;
    if (samples == 0)
        samples = cfg.suite == "ap" ? 200 : (cfg.suite == "lemmas" ? 20 : 100);

    const Backend backend = parse_backend(cfg.backend);
    std::vector<GoodPair> gps;
    gps.reserve(pairs.size());
    for (const auto& [a, b] : pairs)
        gps.push_back(require_good(a, b));
    if (cfg.suite == "matrix")
        for (const auto& gp : gps)
            dictionary(gp.a, gp.b, 2.0); // PreconditionFailed -> config error

    Output out(cfg.out);
    if (cfg.format == "csv")
        out.stream() << row_csv_header() << '\n';

    long violations = 0;
    std::size_t cell = 0;
    for (const auto& gp : gps) {
        for (int n : ns) {
            for (int s = 0; s < samples; ++s) {
                const std::uint64_t seed = derive_sample_seed(cfg.seed, cfg.suite, cell, s);
                SampleResult res;
                if (cfg.suite == "ap")
                    res = check_ap_sample(gp, n, seed, s % 2 == 0);
                else if (cfg.suite == "matrix")
                    res = check_matrix_sample(gp, n, seed);
                else if (cfg.suite == "cat")
                    res = check_cat_sample(backend, gp, n, seed);
                else if (cfg.suite == "lemmas")
                    res = check_lemmas_sample(gp, n, seed);
                else
                    throw ConfigError("unknown suite \"" + cfg.suite + "\"");
                Row row{res.seed, gp.a,      gp.b,      n,      gp.lambda,
                        gp.phi,   res.tau,   res.bound, res.margin, res.ok};
                out.stream() << (cfg.format == "csv" ? row_csv(row) : row_jsonl(row)) << '\n';
                if (!res.ok) {
                    ++violations;
                    std::cerr << "violation: suite " << cfg.suite << " seed " << res.seed
                              << " pair (" << fmt(gp.a) << ", " << fmt(gp.b) << ") n " << n
                              << " margin " << fmt(res.margin) << "\n";
                }
            }
            ++cell;
        }
    }
    if (violations > 0)
        std::cerr << violations << " violation(s)\n";
    return violations == 0 ? 0 : 1;
}

struct GenerateConfig {
    std::string pair_string;
    int n = 8;
    std::uint64_t seed = 20240101;
    std::string backend = "h2";
    std::string out;
};

int run_generate(GenerateConfig cfg) {
    apply_env_seed(cfg.seed);
    const auto [a, b] = parse_pair(cfg.pair_string);
    const GoodPair gp = require_good(a, b);
    if (cfg.n < 2)
        throw ConfigError("--n must be at least 2");

    if (cfg.backend == "matrix") {
        SeedStream rng = SeedStream(cfg.seed).sub("generate_matrix");
        const ChainMoves moves = sample_good_moves(gp, cfg.n, cfg.seed, rng.coin());
        const MatChain mc = mat_chain_from_moves(moves, rng);
        Output out(cfg.out);
        out.stream() << mat_chain_to_json(mc) << '\n';
        return 0;
    }

    ChainDoc doc;
    doc.pair = gp;
    const Backend backend = parse_backend(cfg.backend);
    if (backend == Backend::H2) {
        doc.model = "H2";
        const bool convex = SeedStream(cfg.seed).sub("h2_convex").coin();
        doc.h2_points = sample_good_chain(gp, cfg.n, cfg.seed, convex).points();
    } else if (backend == Backend::H3) {
        doc.model = "H3";
        doc.h3_points = sample_good_chain_h3(gp, cfg.n, cfg.seed);
    } else {
        doc.model = "tree";
        auto sample = sample_good_tree_chain(gp, cfg.n, cfg.seed);
        doc.tree = std::move(sample.tree);
        doc.tree_nodes = std::move(sample.nodes);
    }
    Output out(cfg.out);
    out.stream() << chain_to_json(doc) << '\n';
    return 0;
}

int run_table(const std::string& which, const std::string& out_path) {
    Output out(out_path);
    std::ostream& os = out.stream();
    if (which == "polygon") {
        os << "n,r,step,skip,tau,tau_over_n\n";
        for (int n = 4; n <= 12; ++n)
            for (double r : {0.5, 1.0, 2.0, 4.0, 8.0}) {
                const Chain c = regular_polygon_chain(n, r);
                const double step = c.steps()[0];
                const double skip = dist(c.points()[0], c.points()[2]);
                const double tau = tension(c);
                os << n << ',' << fmt(r) << ',' << fmt(step) << ',' << fmt(skip) << ','
                   << fmt(tau) << ',' << fmt(tau / n) << '\n';
            }
        return 0;
    }
    if (which == "canonical") {
        // lambda = 1.5, phi = 13.404 degrees
        const GoodPair gp = good_pair_from_params(1.5, 13.404 * 3.141592653589793 / 180.0);
        const int n = 8;
        const Chain c = canonical_chain(gp, n);
        os << "j,re,im,step,gromov\n";
        for (int j = 0; j <= n; ++j) {
            const double step = j >= 1 ? c.steps()[j - 1] : 0.0;
            const double grom = (j >= 1 && j <= n - 1) ? c.gromovs()[j - 1] : 0.0;
            os << j << ',' << fmt(c.points()[j].re) << ',' << fmt(c.points()[j].im) << ','
               << fmt(step) << ',' << fmt(grom) << '\n';
        }
        return 0;
    }
    if (which == "degenerate") {
        const std::vector<std::vector<double>> cases = {
            {2.0, 2.0, 2.0},
            {1.5, 1.5, 1.5, 1.5},
            {1.2, 3.0, 1.7, 2.5},
            {1.1, 1.1, 1.1, 1.1, 1.1},
            {4.0, 1.01, 4.0},
            {2.0, 2.0, 2.0, 2.0, 2.0, 2.0},
            {1.05, 2.0, 1.05, 2.0, 1.05},
        };
        os << "lambdas,tau0,bound\n";
        for (const auto& ls : cases) {
            std::ostringstream name;
            for (std::size_t i = 0; i < ls.size(); ++i)
                name << (i ? "|" : "") << fmt(ls[i]);
            double bound = 0.0;
            for (std::size_t j = 1; j + 1 < ls.size(); ++j)
                bound += 2.0 / (ls[j] - 1.0);
            os << name.str() << ',' << fmt(tension_degenerate(ls)) << ',' << fmt(bound) << '\n';
        }
        return 0;
    }
    throw ConfigError("unknown table \"" + which + "\" (expected polygon, canonical or degenerate)");
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"hyperbolic chain calculus: generate chains, verify avalanche-principle and "
                 "CAT(-1) comparison properties, emit example tables"};
    app.require_subcommand(1);

    VerifyConfig vc;
    auto* verify = app.add_subcommand("verify", "run a property suite over a pair/n grid");
    verify->add_option("--suite", vc.suite, "ap, cat, matrix or lemmas");
    verify->add_option("--pair", vc.pair_strings, "good pair as \"a,b\" (repeatable)");
    verify->add_option("--n", vc.ns, "chain segment counts (repeatable)");
    verify->add_option("--samples", vc.samples, "samples per grid cell");
    verify->add_option("--seed", vc.seed, "root seed (env AVK_SEED overrides)");
    verify->add_option("--backend", vc.backend, "h2, h3 or tree (cat suite)");
    verify->add_option("--out", vc.out, "output file (default stdout)");
    verify->add_option("--format", vc.format, "csv or jsonl (default jsonl)");
    verify->add_option("--from-file", vc.from_file, "verify a single chain document");

    GenerateConfig gc;
    auto* generate = app.add_subcommand("generate", "emit one good chain as JSON");
    generate->add_option("--pair", gc.pair_string, "good pair as \"a,b\"")->required();
    generate->add_option("--n", gc.n, "segment count (default 8)");
    generate->add_option("--seed", gc.seed, "seed (env AVK_SEED overrides)");
    generate->add_option("--backend", gc.backend, "h2, h3, tree or matrix");
    generate->add_option("--out", gc.out, "output file (default stdout)");

    std::string table_kind;
    std::string table_out;
    auto* table = app.add_subcommand("table", "emit an illustrative CSV table");
    table->add_option("kind", table_kind, "polygon, canonical or degenerate")->required();
    table->add_option("--out", table_out, "output file (default stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed())
            return run_verify(vc);
        if (generate->parsed())
            return run_generate(gc);
        return run_table(table_kind, table_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace avk::cli
