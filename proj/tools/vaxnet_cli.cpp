// vaxnet: reproduction numbers, vaccination sweeps and Monte Carlo checks
// for epidemics on weighted configuration-model graphs.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vaxnet/config.hpp"
#include "vaxnet/error.hpp"
#include "vaxnet/graph.hpp"
#include "vaxnet/simulation.hpp"
#include "vaxnet/thresholds.hpp"
#include "vaxnet/vaccination.hpp"

using namespace vaxnet;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitValidation = 4;

// Minimum runs reaching the second generation for a validated estimate.
constexpr std::size_t kMinRuns = 200;
constexpr double kSeTolerance = 4.0;

std::string num(double x) {
    if (std::isnan(x))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

using Values = std::map<std::string, std::string>;

// Resolved key/value settings: config-file keys first, command-line flags on top.
class Settings {
public:
    Settings() = default;
    explicit Settings(Values values) : values_(std::move(values)) {}

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string text(const std::string& key, const std::string& fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }
    std::string text(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end())
            throw ParseError("missing setting '" + key + "' (pass --" + key + " or set it in the config file)");
        return it->second;
    }
    double number(const std::string& key, double fallback) const {
        return has(key) ? parse_number(text(key)) : fallback;
    }
    std::uint64_t count(const std::string& key, std::uint64_t fallback) const {
        if (!has(key))
            return fallback;
        const double x = parse_number(text(key));
        if (x < 0.0 || x != std::floor(x) || x > 1.8e19)
            throw ParseError("'" + key + "' must be a non-negative integer, got '" + text(key) + "'");
        return static_cast<std::uint64_t>(x);
    }

    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    /// Adds the keys of `defaults` that are not already set, so the echoed
    /// configuration is complete.
    Settings& fill(const Values& defaults) {
        for (const auto& [key, value] : defaults)
            values_.emplace(key, value);
        return *this;
    }
    const Values& values() const { return values_; }

    /// `key=value` pairs in key order, skipping keys that do not change outputs.
    std::string echo() const {
        std::string out;
        for (const auto& [key, value] : values_) {
            if (key == "threads" || key == "out" || key == "config")
                continue;
            out += (out.empty() ? "" : " ") + key + "=" + value;
        }
        return out;
    }

private:
    Values values_;
};

Values to_values(const ConfigFile::Section& section) {
    Values out;
    for (const auto& [key, entry] : section)
        out[key] = entry.value;
    return out;
}

// A subcommand whose string options are collected into Settings.
class Command {
public:
    Command(CLI::App& app, const std::string& name, const std::string& help) : sub_(app.add_subcommand(name, help)) {
        option("--config", "config", "key = value file; flags override its top-level keys");
        option("--out", "out", "write output here instead of stdout");
        option("--format", "format", "output format (csv)");
    }

    CLI::App* app() const { return sub_; }

    Command& option(const std::string& flag, const std::string& key, const std::string& help) {
        options_.emplace_back(key, sub_->add_option(flag, raw_[key], help));
        return *this;
    }

    bool parsed() const { return sub_->parsed(); }

    /// Settings plus the parsed config file, if any.
    std::pair<Settings, ConfigFile> resolve() const {
        ConfigFile file;
        Values values;
        if (const auto it = raw_.find("config"); it != raw_.end() && !it->second.empty()) {
            file = load_config(it->second);
            values = to_values(file.global);
        }
        for (const auto& [key, opt] : options_)
            if (opt->count() > 0)
                values[key] = raw_.at(key);
        return {Settings(std::move(values)), std::move(file)};
    }

private:
    CLI::App* sub_;
    std::map<std::string, std::string> raw_;
    std::vector<std::pair<std::string, CLI::Option*>> options_;
};

// stdout or --out.
/// Buffers a command's output and writes it to stdout or --out only if the
/// command finishes without throwing.
class Output {
public:
    explicit Output(const Settings& s) : exceptions_(std::uncaught_exceptions()) {
        if (s.has("out")) {
            path_ = s.text("out");
            file_.open(path_, std::ios::binary);
            if (!file_)
                throw ParameterError("cannot write " + s.text("out"));
        }
    }
    Output(const Output&) = delete;
    Output& operator=(const Output&) = delete;
    ~Output() {
        if (std::uncaught_exceptions() > exceptions_) {
            if (to_file()) {
                file_.close();
                std::error_code ignored;
                std::filesystem::remove(path_, ignored);
            }
            return;
        }
        std::ostream& target = to_file() ? static_cast<std::ostream&>(file_) : std::cout;
        target << buffer_.str();
        target.flush();
    }
    std::ostream& stream() { return buffer_; }
    bool to_file() const { return file_.is_open(); }

private:
    int exceptions_;
    std::string path_;
    std::ofstream file_;
    std::ostringstream buffer_;
};

void require_csv(const Settings& s) {
    const std::string format = s.text("format", "csv");
    if (format != "csv")
        throw ParseError("unsupported --format '" + format + "' (expected csv)");
}

void write_preamble(std::ostream& out, const std::string& command, const Settings& s) {
    out << "# vaxnet " << command << (s.values().empty() ? "" : " ") << s.echo() << "\n";
}

std::vector<StrategyKind> strategy_list(const Settings& s, const WeightModel& m) {
    std::vector<StrategyKind> kinds;
    if (s.has("strategies")) {
        std::string list = s.text("strategies");
        std::stringstream in(list);
        for (std::string item; std::getline(in, item, ',');)
            kinds.push_back(strategy_from_string(std::string(CLI::detail::trim_copy(item))));
        return kinds;
    }
    kinds = {StrategyKind::Uniform, StrategyKind::AcqStandard};
    if (m.is_continuous())
        kinds.push_back(StrategyKind::AcqWeightContinuous);
    else if (m.is_two_point())
        kinds.push_back(StrategyKind::WeightTwoPoint);
    return kinds;
}

CriticalOptions critical_options(const Settings& s) {
    CriticalOptions opts;
    opts.tol = s.number("tol", opts.tol);
    opts.beta_max = s.number("beta-max", opts.beta_max);
    return opts;
}

// --- threshold -------------------------------------------------------------------

int cmd_threshold(const Settings& s) {
    require_csv(s);
    const DegreeDist d = parse_degree_spec(s.text("degree"));
    std::string weights;
    double r0 = NAN, r_deg = NAN, r_h1 = NAN, r_h2 = NAN;
    std::string regime;
    if (s.has("g")) {
        const WeightFunctionG g = parse_g_spec(s.text("g"));
        weights = "g=" + g.describe();
        regime = to_string(Regime::DegreeDep);
        r_deg = r0_degree_dep(d, g);
        r_h1 = r0_h1(d, g);
        r_h2 = r0_h2(d, g);
        r0 = r_deg;
    } else if (s.has("gamma")) {
        const double gamma = parse_number(s.text("gamma"));
        weights = "gamma=" + num(gamma);
        regime = to_string(Regime::IidWeights);
        r0 = r0_iid(d, gamma);
    } else {
        const WeightModel m = parse_weight_spec(s.text("weights"));
        weights = m.describe();
        if (const auto* dep = std::get_if<DegreeDependentWeights>(&m.law())) {
            r_deg = r0_degree_dep(d, dep->g);
            r_h1 = r0_h1(d, dep->g);
            r_h2 = r0_h2(d, dep->g);
        }
        const ThresholdReport report = threshold_report(d, m);
        regime = to_string(report.regime);
        r0 = report.r0;
    }

    Output out(s);
    if (out.to_file() || s.has("format")) {
        std::ostream& os = out.stream();
        write_preamble(os, "threshold", s);
        os << "degree,weights,regime,r0,r0_deg,r0_h1,r0_h2\n";
        os << csv_field(d.label()) << "," << csv_field(weights) << "," << regime << "," << num(r0) << ","
           << num(r_deg) << "," << num(r_h1) << "," << num(r_h2) << "\n";
    }
    if (!out.to_file()) {
        if (s.has("format"))
            return 0;
        std::cout << "degree " << d.label() << "\n" << "weights " << weights << "\n" << "regime " << regime << "\n";
        std::cout << "r0 " << num(r0) << "\n";
        if (!std::isnan(r_deg))
            std::cout << "r0_deg " << num(r_deg) << "\n" << "r0_h1 " << num(r_h1) << "\n"
                      << "r0_h2 " << num(r_h2) << "\n";
    }
    return 0;
}

// --- sweep -------------------------------------------------------------------------

int sweep_tau(const Settings& s, std::ostream& os) {
    const DegreeDist d = parse_degree_spec(s.text("degree"));
    const std::vector<double> taus = parse_grid(s.text("grid"));
    os << "tau,r0_h2,r0_h1,r0_deg\n";
    for (const TauRow& row : sweep_tau(d, taus))
        os << num(row.tau) << "," << num(row.r0_h2) << "," << num(row.r0_h1) << "," << num(row.r0_deg) << "\n";
    return 0;
}

int sweep_coverage(const Settings& s, std::ostream& os) {
    const DegreeDist d = parse_degree_spec(s.text("degree"));
    const WeightModel m = parse_weight_spec(s.text("weights"));
    const std::vector<double> coverages = parse_grid(s.text("grid"));
    os << "coverage,r_uniform,r_acq,r_weight\n";
    for (const CoverageRow& row : coverage_sweep(d, m, coverages, critical_options(s)))
        os << num(row.coverage) << "," << num(row.r_uniform) << "," << num(row.r_acq) << "," << num(row.r_weight)
           << "\n";
    return 0;
}

int sweep_sampled(const Settings& s, std::ostream& os) {
    const DegreeDist d = parse_degree_spec(s.text("degree"));
    const WeightModel m = parse_weight_spec(s.text("weights"));
    const std::vector<double> coverages = parse_grid(s.text("grid"));
    CurveOptions curve;
    curve.n = s.count("n", 0);
    curve.replicates = s.count("replicates", 0);
    curve.seed = s.count("seed", 0);

    std::vector<StrategyKind> kinds;
    if (s.has("strategies")) {
        kinds = strategy_list(s, m);
    } else {
        kinds = {StrategyKind::AcqStandard};
        if (m.is_two_point())
            kinds.push_back(StrategyKind::WeightTwoPoint);
        else if (m.is_continuous())
            kinds.push_back(StrategyKind::AcqWeightContinuous);
    }

    os << "sampled_fraction,coverage,strategy\n";
    for (StrategyKind kind : kinds) {
        std::vector<double> parameters;
        for (double c : coverages)
            if (const auto p = parameter_for_coverage(kind, d, m, c, critical_options(s)))
                parameters.push_back(*p);
        for (const SampledFractionRow& row : sampled_fraction_curve(d, m, kind, parameters, curve))
            os << num(row.sampled_fraction) << "," << num(row.coverage) << "," << to_string(kind) << "\n";
    }
    return 0;
}

int cmd_sweep(Settings s) {
    require_csv(s);
    const std::string kind = s.text("kind");
    if (kind != "tau")
        s.fill({{"weights", "uniform"}});
    if (kind == "tau")
        s.fill({{"grid", "0:1:0.02"}});
    else if (kind == "coverage")
        s.fill({{"grid", "0:0.6:0.02"}});
    else if (kind == "sampled")
        s.fill({{"grid", "0:0.6:0.05"}, {"n", "20000"}, {"replicates", "4"}, {"seed", "1"}});
    Output out(s);
    write_preamble(out.stream(), "sweep", s);
    if (kind == "tau")
        return sweep_tau(s, out.stream());
    if (kind == "coverage")
        return sweep_coverage(s, out.stream());
    if (kind == "sampled")
        return sweep_sampled(s, out.stream());
    throw ParseError("unknown sweep '" + kind + "' (expected tau, coverage or sampled)");
}

// --- coverage --------------------------------------------------------------------------

int cmd_coverage(Settings s) {
    require_csv(s);
    s.fill({{"weights", "uniform"}});
    const DegreeDist d = parse_degree_spec(s.text("degree"));
    const WeightModel m = parse_weight_spec(s.text("weights"));
    const CriticalOptions opts = critical_options(s);
    Output out(s);
    std::ostream& os = out.stream();
    write_preamble(os, "coverage", s);
    os << "strategy,reachable,critical_coverage,parameter,r\n";
    for (StrategyKind kind : strategy_list(s, m)) {
        const CriticalResult c = critical_coverage(kind, d, m, opts);
        os << to_string(kind) << "," << (c.reachable ? 1 : 0) << "," << num(c.coverage) << "," << num(c.parameter)
           << "," << num(c.r) << "\n";
    }
    return 0;
}

// --- simulation runs ---------------------------------------------------------------------

struct RunRow {
    std::string id;
    double analytic_r = 0.0;
    double estimated_r = 0.0;
    Interval ci;
    double outbreak_prob = 0.0;
    double coverage = 0.0;
    double analytic_coverage = 0.0;
    bool pass = false;
};

// One configuration: generate the graph, apply the plan, run the ensemble.
// `index` separates the random streams of configurations sharing a seed.
RunRow run_config(const std::string& id, const Settings& s, std::uint64_t index, unsigned threads) {
    const DegreeDist d = parse_degree_spec(s.text("degree"));
    const WeightModel m = parse_weight_spec(s.text("weights"));
    const std::size_t n = s.count("n", 0);
    const std::size_t runs = s.count("runs", 0);
    const std::uint64_t seed = s.count("seed", 0);
    if (n < 2)
        throw ParameterError("--n must be at least 2");

    const std::string strategy = s.text("strategy");
    const bool none = strategy == "none";
    const StrategyKind kind = none ? StrategyKind::Uniform : strategy_from_string(strategy);
    double parameter = none ? 0.0 : s.number("parameter", 0.0);
    if (!none && s.has("target_r")) {
        const auto tuned = parameter_for_r(kind, d, m, s.number("target_r", 1.0));
        if (!tuned)
            throw ParameterError(id + ": target R " + s.text("target_r") + " is out of reach for " + strategy);
        parameter = *tuned;
    }
    const StrategySpec spec{kind, parameter};

    RunRow row;
    row.id = id;
    if (s.has("analytic_gamma")) {
        // analytic side with a stated mean weight, regardless of the simulated law
        const double gamma = s.number("analytic_gamma", 0.0);
        switch (kind) {
        case StrategyKind::Uniform:
            row.analytic_r = r_uniform(d, gamma, parameter);
            row.analytic_coverage = parameter;
            break;
        case StrategyKind::AcqStandard:
            row.analytic_r = r_acq_standard(d, gamma, parameter);
            row.analytic_coverage = coverage_standard(d, parameter);
            break;
        default: throw ParameterError(id + ": analytic_gamma applies to none, uniform and acq only");
        }
    } else if (none && m.is_degree_dependent()) {
        row.analytic_r = threshold_report(d, m).r0;
    } else {
        const StrategyPoint p = evaluate(spec, d, m);
        row.analytic_r = p.r;
        row.analytic_coverage = p.coverage;
    }

    const WeightedGraph g = generate(n, d, m, stream_seed(seed, 3 * index));
    const VaccinationPlan plan = none ? empty_plan(n) : apply_plan(g, m, spec, stream_seed(seed, 3 * index + 1));
    SimOptions sim;
    sim.threads = threads;
    sim.outbreak_fraction = s.number("outbreak_fraction", sim.outbreak_fraction);
    const EnsembleStats stats = run_ensemble(g, plan, runs, stream_seed(seed, 3 * index + 2), sim);

    row.estimated_r = stats.mean_gen2_offspring;
    row.ci = stats.gen2_offspring_ci;
    row.outbreak_prob = stats.outbreak_prob;
    row.coverage = plan.realized_coverage;

    const double cov_se = std::sqrt(row.analytic_coverage * (1.0 - row.analytic_coverage) / static_cast<double>(n));
    const bool coverage_ok = std::abs(row.coverage - row.analytic_coverage) <= kSeTolerance * cov_se + 1e-12;
    // No second-generation case in any run: nothing was ever transmitted onward.
    const bool enough = stats.runs_reaching_gen2 >= kMinRuns || stats.gen2_samples == 0;
    const bool r_ok = std::abs(row.estimated_r - row.analytic_r) <= kSeTolerance * stats.gen2_offspring_se + 1e-12;
    row.pass = enough && coverage_ok && r_ok;
    if (!enough)
        std::cerr << id << ": only " << stats.runs_reaching_gen2 << " runs reached the second generation\n";
    return row;
}

void write_run_header(std::ostream& os, bool with_check) {
    os << "config_id,analytic_r,estimated_r,ci_low,ci_high,outbreak_prob,coverage";
    os << (with_check ? ",analytic_coverage,pass\n" : "\n");
}

void write_run_row(std::ostream& os, const RunRow& r, bool with_check) {
    os << csv_field(r.id) << "," << num(r.analytic_r) << "," << num(r.estimated_r) << "," << num(r.ci.low) << ","
       << num(r.ci.high) << "," << num(r.outbreak_prob) << "," << num(r.coverage);
    if (with_check)
        os << "," << num(r.analytic_coverage) << "," << (r.pass ? 1 : 0);
    os << "\n";
}

unsigned thread_count(const Settings& s) {
    return static_cast<unsigned>(s.count("threads", 0));
}

// The Monte Carlo suite used when the config file has no sections.
std::vector<std::pair<std::string, Values>> default_suite() {
    return {
        {"none", {{"strategy", "none"}}},
        {"uniform", {{"strategy", "uniform"}, {"parameter", "0.3"}}},
        {"acq", {{"strategy", "acq"}, {"parameter", "1"}}},
        {"weight", {{"strategy", "weight"}, {"parameter", "1"}}},
        {"twopoint", {{"strategy", "twopoint"}, {"parameter", "0.5"}, {"weights", "twopoint(0.1,1,pa=0.9)"}}},
    };
}

const Values kRunDefaults{{"n", "200000"}, {"runs", "2000"}, {"seed", "1"}, {"strategy", "none"}};

int cmd_validate(Settings s, const ConfigFile& file) {
    require_csv(s);
    s.fill({{"degree", "poisson(6)"}, {"weights", "uniform"}}).fill(kRunDefaults);
    if (s.count("n", 0) < 1000)
        throw ParameterError("validate needs --n of at least 1000");

    std::vector<std::pair<std::string, Values>> configs;
    if (file.sections.empty())
        configs = default_suite();
    else
        for (const auto& [name, section] : file.sections)
            configs.emplace_back(name, to_values(section));

    std::string suite;
    for (const auto& [name, values] : configs) {
        std::string body;
        for (const auto& [key, value] : values)
            body += (body.empty() ? "" : ";") + key + "=" + value;
        suite += " [" + name + "]" + body;
    }

    Output out(s);
    std::ostream& os = out.stream();
    os << "# vaxnet validate " << s.echo() << suite << "\n";
    write_run_header(os, true);
    bool all_pass = true;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        Settings merged = s;
        for (const auto& [key, value] : configs[i].second)
            merged.set(key, value);
        const RunRow row = run_config(configs[i].first, merged, i, thread_count(s));
        write_run_row(os, row, true);
        os.flush();
        all_pass = all_pass && row.pass;
    }
    return all_pass ? 0 : kExitValidation;
}

int cmd_simulate(Settings s) {
    require_csv(s);
    s.fill({{"weights", "uniform"}}).fill(kRunDefaults);
    Output out(s);
    std::ostream& os = out.stream();
    write_preamble(os, "simulate", s);
    write_run_header(os, false);
    write_run_row(os, run_config(s.text("strategy"), s, 0, thread_count(s)), false);
    return 0;
}

// --- generate ----------------------------------------------------------------------------

int cmd_generate(Settings s) {
    s.fill({{"weights", "uniform"}, {"n", "10000"}, {"seed", "1"}});
    const DegreeDist d = parse_degree_spec(s.text("degree"));
    const WeightModel m = parse_weight_spec(s.text("weights"));
    const std::size_t n = s.count("n", 0);
    const std::uint64_t seed = s.count("seed", 0);
    const std::string format = s.text("format", "bin");
    if (format != "bin" && format != "csv")
        throw ParseError("unsupported --format '" + format + "' (expected bin or csv)");
    if (format == "bin" && !s.has("out"))
        throw ParseError("binary graphs need --out");

    const WeightedGraph g = generate(n, d, m, seed);
    Output out(s);
    if (format == "bin") {
        write_binary(g, out.stream());
    } else {
        write_preamble(out.stream(), "generate", s);
        write_edge_csv(g, out.stream());
    }
    if (out.to_file())
        std::cout << "vertices " << g.num_vertices() << "\nedges " << g.num_edges() << "\nerased_self_loops "
                  << g.erased_self_loops << "\nmerged_multi_edges " << g.merged_multi_edges << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Epidemic thresholds and vaccination strategies on weighted random graphs"};
    app.require_subcommand(1);

    Command threshold(app, "threshold", "basic reproduction number for a degree law and weights");
    threshold.option("--degree", "degree", "degree law, e.g. poisson(6) or powerlaw(3.5,mean=4)")
        .option("--weights", "weights", "weight law, e.g. uniform, beta(0.5,2.5), g=power(0.7)")
        .option("--gamma", "gamma", "mean of i.i.d. weights")
        .option("--g", "g", "degree-dependent weights g(D_u): power(tau), indicator(theta), geom(alpha)");

    Command sweep(app, "sweep", "figure data: tau, coverage or sampled-fraction sweeps");
    sweep.option("kind", "kind", "tau | coverage | sampled")
        .option("--degree", "degree", "degree law")
        .option("--weights", "weights", "weight law")
        .option("--grid", "grid", "start:stop:step or a comma list")
        .option("--strategies", "strategies", "comma list of uniform, acq, weight, twopoint")
        .option("--n", "n", "graph size for sampled-fraction curves")
        .option("--replicates", "replicates", "graphs per sampled-fraction point")
        .option("--seed", "seed", "master seed")
        .option("--beta-max", "beta-max", "upper end of the beta search")
        .option("--threads", "threads", "worker threads");

    Command coverage(app, "coverage", "critical vaccination coverage per strategy");
    coverage.option("--degree", "degree", "degree law")
        .option("--weights", "weights", "weight law")
        .option("--strategies", "strategies", "comma list of uniform, acq, weight, twopoint")
        .option("--tol", "tol", "tolerance on |R - 1|")
        .option("--beta-max", "beta-max", "upper end of the beta search");

    Command validate(app, "validate", "analytic against simulated reproduction numbers");
    Command simulate(app, "simulate", "one Monte Carlo ensemble");
    for (Command* c : {&validate, &simulate})
        c->option("--degree", "degree", "degree law")
            .option("--weights", "weights", "weight law")
            .option("--strategy", "strategy", "none, uniform, acq, weight or twopoint")
            .option("--parameter", "parameter", "v, beta or s")
            .option("--target-r", "target_r", "tune the parameter so the analytic R equals this")
            .option("--n", "n", "graph size")
            .option("--runs", "runs", "epidemics per ensemble")
            .option("--seed", "seed", "master seed")
            .option("--threads", "threads", "worker threads (0 = all cores)");

    Command gen(app, "generate", "write a generated graph");
    gen.option("--degree", "degree", "degree law")
        .option("--weights", "weights", "weight law")
        .option("--n", "n", "number of vertices")
        .option("--seed", "seed", "seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (threshold.parsed())
            return cmd_threshold(threshold.resolve().first);
        if (sweep.parsed())
            return cmd_sweep(sweep.resolve().first);
        if (coverage.parsed())
            return cmd_coverage(coverage.resolve().first);
        if (validate.parsed()) {
            const auto [s, file] = validate.resolve();
            return cmd_validate(s, file);
        }
        if (simulate.parsed())
            return cmd_simulate(simulate.resolve().first);
        if (gen.parsed())
            return cmd_generate(gen.resolve().first);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::logic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return 0;
}
