// Copyright 2026 The qhmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qhmc/bb84.h"
#include "qhmc/chsh.h"
#include "qhmc/diagnostics.h"
#include "qhmc/random.h"

namespace qhmc::cli {

namespace {

using nlohmann::json;

constexpr double kQubitTau = 0.1;
// The nine-angle posteriors sit close to the boundary of the state space,
// where a step of 0.1 drops the acceptance rate below one half.
constexpr double kBb84Tau = 0.05;

std::vector<double> parse_number_list(const std::string &text, const char *what) {
    std::vector<double> out;
    std::string field;
    std::istringstream ss(text);
    while (std::getline(ss, field, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(field, &used));
            if (field.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument(field);
            }
        } catch (const std::exception &) {
            throw ConfigError(std::string(what) + ": '" + field + "' is not a number");
        }
    }
    return out;
}

std::vector<double> read_numbers(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoFailure("cannot open '" + path + "' for reading");
    }
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::string token;
        while (ss >> token) {
            try {
                size_t used = 0;
                out.push_back(std::stod(token, &used));
                if (used != token.size()) {
                    throw std::invalid_argument(token);
                }
            } catch (const std::exception &) {
                throw ConfigError("'" + path + "': '" + token + "' is not a number");
            }
        }
    }
    return out;
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoFailure("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw IoFailure("failed writing '" + path + "'");
    }
}

std::string histogram_csv(const std::vector<HistogramBin> &bins) {
    std::ostringstream out;
    out << "bin_left,bin_right,weighted_density\n";
    for (const auto &b : bins) {
        out << format_double(b.left) << ',' << format_double(b.right) << ',' << format_double(b.density) << '\n';
    }
    return out.str();
}

json quantile_summary(const std::vector<double> &values, const std::vector<double> &weights) {
    json q = json::object();
    for (double level : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        q[format_double(level)] = weighted_quantile(values, weights, level);
    }
    return json{{"mean", weighted_mean(values, weights)}, {"quantiles", q}};
}

std::vector<double> column_values(const LoadedSample &loaded, const std::string &column, const std::string &space) {
    const auto &layout = loaded.layout;
    const auto &s = loaded.samples;
    std::vector<double> out;
    out.reserve(s.size());
    auto indexed = [&](const std::string &prefix, size_t limit) -> long {
        if (column.rfind(prefix, 0) != 0) {
            return -1;
        }
        try {
            size_t used = 0;
            long k = std::stol(column.substr(prefix.size()), &used);
            if (used + prefix.size() == column.size() && k >= 1 && static_cast<size_t>(k) <= limit) {
                return k - 1;
            }
        } catch (const std::exception &) {
        }
        throw ConfigError("no column '" + column + "' in this sample");
    };
    if (long k = indexed("theta_", layout.angles); k >= 0) {
        for (const auto &p : s.points) out.push_back(p[k]);
        return out;
    }
    if (long k = indexed("p_", layout.probabilities); k >= 0) {
        for (const auto &p : s.derived_probs) out.push_back(p[k]);
        return out;
    }
    if (column == "q" && layout.has_q) {
        for (const auto &a : s.auxiliary) out.push_back(a[0]);
        return out;
    }
    if (column == "x" || column == "y" || column == "z") {
        Space sp = layout.angles == 3 ? Space::full : parse_space(space);
        if (space_dimension(sp) != layout.angles) {
            throw ConfigError("Bloch coordinates need a qubit sample with 2 or 3 angles");
        }
        for (const auto &p : s.points) {
            auto b = qubit_embedding(sp, p);
            out.push_back(column == "x" ? b.x : column == "y" ? b.y : b.z);
        }
        return out;
    }
    throw ConfigError("no column '" + column + "' in this sample");
}

std::vector<LoadedSample> split_chains(const LoadedSample &loaded) {
    std::vector<LoadedSample> parts;
    for (size_t i = 0; i < loaded.samples.size(); i++) {
        uint32_t c = loaded.chains[i];
        if (parts.size() <= c) {
            parts.resize(c + 1);
        }
        auto &part = parts[c];
        part.layout = loaded.layout;
        part.samples.points.push_back(loaded.samples.points[i]);
        if (!loaded.samples.derived_probs.empty()) part.samples.derived_probs.push_back(loaded.samples.derived_probs[i]);
        if (!loaded.samples.auxiliary.empty()) part.samples.auxiliary.push_back(loaded.samples.auxiliary[i]);
        if (!loaded.samples.weights.empty()) part.samples.weights.push_back(loaded.samples.weights[i]);
        part.chains.push_back(c);
    }
    std::erase_if(parts, [](const LoadedSample &p) { return p.samples.size() == 0; });
    return parts;
}

/// Fraction of rows that differ from their predecessor; for HMC and
/// Metropolis chains this estimates the acceptance rate.
double moved_fraction(const SampleSet &s) {
    if (s.size() < 2) {
        return 0;
    }
    size_t moved = 0;
    for (size_t i = 1; i < s.size(); i++) {
        moved += s.points[i] != s.points[i - 1] ? 1 : 0;
    }
    return static_cast<double>(moved) / static_cast<double>(s.size() - 1);
}

ChshSetting parse_setting(const std::string &text) {
    if (text.empty()) {
        return ChshSetting::reference();
    }
    auto v = parse_number_list(text, "--setting");
    if (v.size() != 4) {
        throw ConfigError("--setting needs phi1,phi2,psi1,psi2");
    }
    return {v[0], v[1], v[2], v[3]};
}

struct SampleOptions {
    RunConfig cfg;
    std::string counts;
    std::string counts_file;
    std::string mock;
    std::string initial;
    std::string from_manifest;
    std::string manifest_out;
};

int cmd_sample(SampleOptions opt, const CLI::App &sub) {
    RunConfig cfg = opt.cfg;
    if (!opt.from_manifest.empty()) {
        RunConfig stored = read_manifest(opt.from_manifest).config;
        if (sub.count("--output") > 0) {
            stored.output = cfg.output;
        }
        cfg = stored;
    } else {
        if (!opt.counts.empty() && !opt.counts_file.empty()) {
            throw ConfigError("give either --counts or --counts-file, not both");
        }
        bool two_qubit = parse_pom(cfg.pom) == Pom::bb84;
        if (!opt.counts.empty()) {
            cfg.counts = parse_number_list(opt.counts, "--counts");
        } else if (!opt.counts_file.empty()) {
            cfg.counts = read_counts_file(opt.counts_file, outcome_count(parse_pom(cfg.pom)), two_qubit);
        }
        if (!opt.mock.empty()) {
            cfg.mock = parse_number_list(opt.mock, "--mock");
        }
        if (!opt.initial.empty()) {
            cfg.initial = parse_number_list(opt.initial, "--initial");
        }
    }
    std::string manifest_path = opt.manifest_out.empty() ? cfg.output + ".manifest.json" : opt.manifest_out;
    auto run = run_sampling(resolve(cfg));
    write_sample_file(run.manifest.config.output, run.chains, parse_sample_format(run.manifest.config.format));
    write_manifest(manifest_path, run.manifest);
    std::cerr << "wrote " << run.manifest.config.output << " and " << manifest_path << "; acceptance "
              << run.manifest.acceptance_rate << '\n';
    return kExitOk;
}

struct SimulateOptions {
    std::string state;
    std::string bloch;
    std::string pom = "bb84-double-crosshair";
    double noise = 0;
    size_t shots = 64;
    uint64_t seed = 1;
    std::string output = "counts.csv";
};

int cmd_simulate(const SimulateOptions &opt) {
    Pom pom = parse_pom(opt.pom);
    std::vector<double> probs;
    if (pom == Pom::bb84) {
        if (!opt.bloch.empty()) {
            throw ConfigError("--bloch describes a single qubit; use --state for two-qubit data");
        }
        auto p = bb84_probabilities(two_qubit_state(opt.state.empty() ? "singlet" : opt.state, opt.noise));
        probs.assign(p.values.begin(), p.values.end());
    } else {
        if (!opt.state.empty() && opt.state != "mixed") {
            throw ConfigError("single-qubit data take --bloch x,y,z (or --state mixed)");
        }
        BlochVector b;
        if (!opt.bloch.empty()) {
            auto v = parse_number_list(opt.bloch, "--bloch");
            if (v.size() != 3) {
                throw ConfigError("--bloch needs x,y,z");
            }
            b = {v[0], v[1], v[2]};
        }
        if (b.norm_squared() > 1 + 1e-12) {
            throw ConfigError("Bloch vector lies outside the unit ball");
        }
        if (!(opt.noise >= 0 && opt.noise <= 1)) {
            throw ConfigError("noise must lie in [0, 1]");
        }
        b = {b.x * (1 - opt.noise), b.y * (1 - opt.noise), b.z * (1 - opt.noise)};
        probs = qubit_probs(pom, b);
    }
    auto counts = simulate_counts(probs, opt.shots, opt.seed);
    write_counts_file(opt.output, counts, pom == Pom::bb84);
    std::cerr << "wrote " << opt.output << '\n';
    return kExitOk;
}

struct AnalyzeOptions {
    std::string input;
    std::string analysis;
    std::string output;
    std::string summary;
    std::string manifest;
    std::string acf_table;
    std::string column;
    std::string space = "equatorial";
    std::string setting;
    std::string quantity = "s";
    size_t bins = 50;
    double lo = NAN;
    double hi = NAN;
    size_t max_lag = 200;
};

json diagnostics_json(const DiagnosticsReport &r, const std::string &acceptance_source) {
    json series = json::array();
    for (const auto &s : r.series) {
        series.push_back({
            {"name", s.name},
            {"integrated_time", s.integrated_time},
            {"effective_sample_size", s.effective_sample_size},
            {"degenerate", s.degenerate},
            {"acf", s.acf},
        });
    }
    return {
        {"points", r.points},
        {"acceptance_rate", r.acceptance_rate},
        {"acceptance_source", acceptance_source},
        {"series", series},
        {"warnings", r.warnings},
    };
}

int cmd_analyze(const AnalyzeOptions &opt) {
    auto loaded = read_sample_file(opt.input);
    std::string summary_path = opt.summary.empty() ? opt.output + ".summary.json" : opt.summary;

    if (opt.analysis == "diagnostics") {
        std::vector<double> manifest_rates;
        if (!opt.manifest.empty()) {
            for (const auto &c : read_manifest(opt.manifest).chains) {
                manifest_rates.push_back(c.acceptance_rate);
            }
        }
        json chains = json::array();
        std::ostringstream table;
        bool table_header = false;
        auto parts = split_chains(loaded);
        for (size_t c = 0; c < parts.size(); c++) {
            auto &s = parts[c].samples;
            bool from_manifest = c < manifest_rates.size();
            s.metadata.acceptance_rate = from_manifest ? manifest_rates[c] : moved_fraction(s);
            auto report = diagnostics(s, opt.max_lag);
            for (auto &w : report.warnings) {
                std::cerr << "chain " << c << ": " << w << '\n';
            }
            chains.push_back(diagnostics_json(report, from_manifest ? "manifest" : "moved-fraction"));
            if (!table_header) {
                table << "chain,lag";
                for (const auto &ser : report.series) table << ',' << ser.name;
                table << '\n';
                table_header = true;
            }
            size_t lags = report.series.empty() ? 0 : report.series.front().acf.size();
            for (size_t lag = 0; lag < lags; lag++) {
                table << c << ',' << lag;
                for (const auto &ser : report.series) table << ',' << format_double(ser.acf[lag]);
                table << '\n';
            }
        }
        write_text(opt.output, json{{"chains", chains}}.dump(2) + "\n");
        if (!opt.acf_table.empty()) {
            write_text(opt.acf_table, table.str());
        }
        return kExitOk;
    }

    if (opt.analysis == "chsh-fixed" || opt.analysis == "chsh-optimized") {
        if (loaded.layout.probabilities != 16) {
            throw MalformedSample("CHSH analysis needs the 16 crosshair probabilities p_1..p_16");
        }
        auto mode = opt.analysis == "chsh-fixed" ? ChshMode::fixed : ChshMode::optimized;
        auto summary = chsh_sample_summary(loaded.samples, parse_setting(opt.setting), mode, opt.bins);
        if (opt.quantity != "s" && opt.quantity != "s2") {
            throw ConfigError("--quantity is s or s2");
        }
        write_text(opt.output, histogram_csv(opt.quantity == "s" ? summary.s_histogram : summary.s2_histogram));
        std::vector<double> quarter;
        for (double s : summary.values) quarter.push_back(s * s / 4);
        json report = {
            {"analysis", opt.analysis},
            {"points", summary.values.size()},
            {"S", quantile_summary(summary.values, summary.weights)},
            {"S2_over_4", quantile_summary(quarter, summary.weights)},
            {"fraction_abs_S_above_2", summary.fraction_abs_above_2},
            {"fraction_S_above_2", summary.fraction_above_2},
            {"fraction_S2_over_4_above_1", summary.fraction_s2_above_1},
        };
        write_text(summary_path, report.dump(2) + "\n");
        return kExitOk;
    }

    if (opt.analysis == "histogram") {
        if (opt.column.empty()) {
            throw ConfigError("histogram needs --column");
        }
        auto values = column_values(loaded, opt.column, opt.space);
        std::vector<double> weights(loaded.samples.weights.begin(), loaded.samples.weights.end());
        auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        double lo = std::isnan(opt.lo) ? *mn : opt.lo;
        double hi = std::isnan(opt.hi) ? *mx : opt.hi;
        if (!(hi > lo)) {
            hi = lo + 1;
        }
        write_text(opt.output, histogram_csv(weighted_histogram(values, weights, lo, hi, opt.bins)));
        json report = quantile_summary(values, weights);
        report["column"] = opt.column;
        report["points"] = values.size();
        write_text(summary_path, report.dump(2) + "\n");
        return kExitOk;
    }
    throw ConfigError("unknown analysis '" + opt.analysis + "'");
}

int cmd_check_physical(const std::string &input, const std::string &output) {
    auto numbers = read_numbers(input);
    if (numbers.size() != 16) {
        throw ConfigError("expected 16 probabilities p11..p44, got " + std::to_string(numbers.size()));
    }
    auto p = Bb84Probabilities::from_span(numbers);
    json report;
    bool physical = false;
    if (!satisfies_basic_constraints(p)) {
        report = {{"physical", false}, {"reason", "basic constraints violated"}};
    } else {
        try {
            auto interval = q_bounds(p);
            physical = true;
            report = {{"physical", true}, {"q_min", interval.q_min}, {"q_max", interval.q_max}};
        } catch (const NotPhysical &) {
            report = {{"physical", false}, {"reason", "no q makes the state positive"}};
        }
    }
    std::cout << (physical ? "physical" : "not physical") << '\n';
    if (!output.empty()) {
        write_text(output, report.dump(2) + "\n");
    }
    return physical ? kExitOk : kExitNotPhysical;
}

}  // namespace

RunConfig resolve(RunConfig cfg) {
    Pom pom = parse_pom(cfg.pom);
    cfg.pom = std::string(pom_name(pom));
    if (cfg.space.empty()) {
        cfg.space = pom == Pom::trine || pom == Pom::crosshair ? "equatorial" : "full";
    }
    cfg.space = std::string(space_name(parse_space(cfg.space)));
    if (pom == Pom::bb84 && cfg.space != "full") {
        throw ConfigError("the two-qubit measurement samples its own nine-angle family; drop --space");
    }
    cfg.prior = std::string(prior_name(parse_prior(cfg.prior)));
    if (cfg.tau == 0) {
        cfg.tau = pom == Pom::bb84 ? kBb84Tau : kQubitTau;
    }
    if (cfg.counts.empty()) {
        cfg.counts.assign(outcome_count(pom), 0.0);
    }
    if (cfg.counts.size() != outcome_count(pom)) {
        throw ConfigError(
            std::string(pom_name(pom)) + " needs " + std::to_string(outcome_count(pom)) + " counts, got " +
            std::to_string(cfg.counts.size()));
    }
    if (cfg.points == 0) {
        throw ConfigError("--n must be positive");
    }
    if (cfg.chains == 0) {
        throw ConfigError("--chains must be positive");
    }
    parse_sample_format(cfg.format);
    cfg.hmc_config(0).validate();
    return cfg;
}

TargetDensity build_target(const RunConfig &raw) {
    RunConfig cfg = resolve(raw);
    Pom pom = parse_pom(cfg.pom);
    Space space = parse_space(cfg.space);
    auto counts = effective_counts(cfg.counts, parse_prior(cfg.prior), cfg.mock);
    if (pom == Pom::bb84) {
        return bb84_target(counts);
    }
    bool no_data = std::all_of(counts.begin(), counts.end(), [](double n) { return n == 0; });
    if (no_data && space == Space::full && (pom == Pom::tetrahedron || pom == Pom::pauli)) {
        return primitive_qubit_target(pom);
    }
    if (pom == Pom::trine && space == Space::equatorial) {
        return trine_posterior_target(counts);
    }
    return qubit_posterior_target(pom, space, counts);
}

SamplingRun run_sampling(const RunConfig &raw) {
    RunConfig cfg = resolve(raw);
    auto target = build_target(cfg);
    bool reweight = parse_pom(cfg.pom) == Pom::bb84;

    auto start = std::chrono::steady_clock::now();
    SamplingRun run;
    run.chains.resize(cfg.chains);
    std::vector<std::exception_ptr> errors(cfg.chains);
    auto work = [&](size_t c) {
        try {
            auto s = run_chain(target, cfg.hmc_config(c));
            run.chains[c] = reweight ? reweight_marginal(std::move(s)) : std::move(s);
        } catch (...) {
            errors[c] = std::current_exception();
        }
    };
    if (cfg.chains == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (size_t c = 0; c < cfg.chains; c++) {
            threads.emplace_back(work, c);
        }
        for (auto &t : threads) {
            t.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    auto &m = run.manifest;
    m.config = cfg;
    m.seed = cfg.seed;
    m.rng_algorithm = std::string(kRngAlgorithm);
    m.target_label = target.label;
    m.wall_time_seconds = seconds;
    size_t proposals = 0;
    size_t accepted = 0;
    for (const auto &s : run.chains) {
        const auto &md = s.metadata;
        m.chains.push_back({md.seed, md.proposals, md.accepted, md.acceptance_rate, md.degenerate_weights});
        proposals += md.proposals;
        accepted += md.accepted;
        m.degenerate_weights += md.degenerate_weights;
    }
    m.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(proposals);
    return run;
}

std::vector<double> simulate_counts(std::vector<double> probabilities, size_t shots, uint64_t seed) {
    double total = 0;
    for (double &p : probabilities) {
        if (!(p >= -1e-12)) {
            throw ConfigError("negative outcome probability");
        }
        if (p < 1e-15) {
            p = 0;
        }
        total += p;
    }
    if (!(total > 0)) {
        throw ConfigError("outcome probabilities sum to zero");
    }
    std::vector<double> cumulative;
    double running = 0;
    for (double p : probabilities) {
        running += p / total;
        cumulative.push_back(running);
    }
    size_t last_positive = 0;
    for (size_t j = 0; j < probabilities.size(); j++) {
        if (probabilities[j] > 0) {
            last_positive = j;
        }
    }
    std::vector<double> counts(probabilities.size(), 0.0);
    Rng rng(seed);
    for (size_t i = 0; i < shots; i++) {
        double u = rng.uniform();
        size_t k = last_positive;
        for (size_t j = 0; j < cumulative.size(); j++) {
            if (probabilities[j] > 0 && u < cumulative[j]) {
                k = j;
                break;
            }
        }
        counts[k] += 1;
    }
    return counts;
}

void write_counts_file(const std::string &path, const std::vector<double> &counts, bool two_qubit) {
    std::ostringstream out;
    out << "outcome,count\n";
    for (size_t i = 0; i < counts.size(); i++) {
        if (two_qubit) {
            out << (i / 4 + 1) << (i % 4 + 1);
        } else {
            out << (i + 1);
        }
        out << ',' << format_double(counts[i]) << '\n';
    }
    write_text(path, out.str());
}

std::vector<double> read_counts_file(const std::string &path, size_t outcomes, bool two_qubit) {
    std::ifstream in(path);
    if (!in) {
        throw IoFailure("cannot open '" + path + "' for reading");
    }
    std::vector<double> counts(outcomes, 0.0);
    std::vector<bool> seen(outcomes, false);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || (line_no == 1 && line == "outcome,count")) {
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'outcome,count'");
        }
        std::string id = line.substr(0, comma);
        auto value = parse_number_list(line.substr(comma + 1), "count");
        if (value.size() != 1) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected one count");
        }
        size_t index = outcomes;
        if (two_qubit && id.size() == 2 && id[0] >= '1' && id[0] <= '4' && id[1] >= '1' && id[1] <= '4') {
            index = static_cast<size_t>(id[0] - '1') * 4 + static_cast<size_t>(id[1] - '1');
        } else if (!two_qubit && !id.empty() && id.find_first_not_of("0123456789") == std::string::npos) {
            size_t k = std::stoul(id);
            index = k >= 1 && k <= outcomes ? k - 1 : outcomes;
        }
        if (index >= outcomes || seen[index]) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": bad or repeated outcome id '" + id + "'");
        }
        seen[index] = true;
        counts[index] = value[0];
    }
    return counts;
}

int run_cli(int argc, const char *const *argv) {
    CLI::App app{"Hamiltonian Monte Carlo sampling of quantum states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    SampleOptions sample;
    sample.cfg.space.clear();
    auto *sample_cmd = app.add_subcommand("sample", "run HMC chains and write a sample file plus manifest");
    sample_cmd->add_option("--pom", sample.cfg.pom, "tetrahedron, pauli, trine, crosshair, bb84-double-crosshair");
    sample_cmd->add_option("--space", sample.cfg.space, "full, equatorial or hemisphere");
    sample_cmd->add_option("--prior", sample.cfg.prior, "primitive, jeffreys or conjugate");
    sample_cmd->add_option("--counts", sample.counts, "comma-separated counts n_1,...,n_K");
    sample_cmd->add_option("--counts-file", sample.counts_file, "counts file written by simulate-data");
    sample_cmd->add_option("--mock", sample.mock, "mock counts of the conjugate prior");
    sample_cmd->add_option("--n", sample.cfg.points, "points kept after burn-in and thinning");
    sample_cmd->add_option("--seed", sample.cfg.seed, "master seed");
    sample_cmd->add_option("--tau", sample.cfg.tau, "leapfrog step size (default 0.1, or 0.05 for bb84)");
    sample_cmd->add_option("--steps", sample.cfg.steps, "leapfrog steps per trajectory");
    sample_cmd->add_option("--jitter-tau", sample.cfg.jitter_tau, "relative half-width of the step-size jitter");
    sample_cmd->add_option("--jitter-steps", sample.cfg.jitter_steps, "relative half-width of the step-count jitter");
    sample_cmd->add_option("--burn-in", sample.cfg.burn_in, "discarded initial iterations");
    sample_cmd->add_option("--thinning", sample.cfg.thinning, "keep every k-th point");
    sample_cmd->add_option("--chains", sample.cfg.chains, "independent chains, one thread each");
    sample_cmd->add_option("--initial", sample.initial, "comma-separated starting angles");
    sample_cmd->add_option("--format", sample.cfg.format, "csv or jsonl");
    sample_cmd->add_option("--output", sample.cfg.output, "sample file");
    sample_cmd->add_option("--manifest-out", sample.manifest_out, "manifest path (default <output>.manifest.json)");
    sample_cmd->add_option("--manifest", sample.from_manifest, "rerun the configuration stored in a manifest");

    SimulateOptions sim;
    auto *sim_cmd = app.add_subcommand("simulate-data", "draw multinomial counts from a known state");
    sim_cmd->add_option("--pom", sim.pom, "measurement");
    sim_cmd->add_option("--state", sim.state, "singlet, triplet or mixed");
    sim_cmd->add_option("--bloch", sim.bloch, "x,y,z of a single-qubit state");
    sim_cmd->add_option("--noise", sim.noise, "mixing weight of the maximally mixed state");
    sim_cmd->add_option("--shots", sim.shots, "number of measured copies");
    sim_cmd->add_option("--seed", sim.seed, "seed");
    sim_cmd->add_option("--output", sim.output, "counts file");

    AnalyzeOptions an;
    auto *an_cmd = app.add_subcommand("analyze", "summaries of a sample file");
    an_cmd->add_option("--input", an.input, "sample file")->required();
    an_cmd->add_option("--analysis", an.analysis, "diagnostics, chsh-fixed, chsh-optimized or histogram")
        ->required();
    an_cmd->add_option("--output", an.output, "report (diagnostics) or histogram CSV")->required();
    an_cmd->add_option("--summary", an.summary, "quantile summary (default <output>.summary.json)");
    an_cmd->add_option("--manifest", an.manifest, "manifest with the recorded acceptance rates");
    an_cmd->add_option("--acf-table", an.acf_table, "also write the autocorrelation table as CSV");
    an_cmd->add_option("--column", an.column, "histogram column: theta_s, p_k, q, x, y or z");
    an_cmd->add_option("--space", an.space, "reconstruction space of a two-angle qubit sample");
    an_cmd->add_option("--setting", an.setting, "phi1,phi2,psi1,psi2 for chsh-fixed");
    an_cmd->add_option("--quantity", an.quantity, "s or s2 (S^2/4) histogram for CHSH analyses");
    an_cmd->add_option("--bins", an.bins, "histogram bins");
    an_cmd->add_option("--lo", an.lo, "histogram lower edge");
    an_cmd->add_option("--hi", an.hi, "histogram upper edge");
    an_cmd->add_option("--max-lag", an.max_lag, "autocorrelation lags");

    std::string phys_input;
    std::string phys_output;
    auto *phys_cmd = app.add_subcommand("check-physical", "test 16 two-qubit crosshair probabilities for physicality");
    phys_cmd->add_option("--input", phys_input, "file with p11 ... p44 in row-major order")->required();
    phys_cmd->add_option("--output", phys_output, "optional JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*sample_cmd) return cmd_sample(sample, *sample_cmd);
        if (*sim_cmd) return cmd_simulate(sim);
        if (*an_cmd) return cmd_analyze(an);
        if (*phys_cmd) return cmd_check_physical(phys_input, phys_output);
    } catch (const BadInitialPoint &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInitialPoint;
    } catch (const IoFailure &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const QhmcError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitConfig;
}

}  // namespace qhmc::cli
