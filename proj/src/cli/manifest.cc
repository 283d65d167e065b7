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

#include "cli/manifest.h"

#include <fstream>

#include "qhmc/random.h"

namespace qhmc::cli {

using nlohmann::json;

HmcConfig RunConfig::hmc_config(size_t chain) const {
    HmcConfig cfg;
    cfg.trajectory.tau = tau;
    cfg.trajectory.steps = steps;
    cfg.trajectory.jitter_tau = jitter_tau;
    cfg.trajectory.jitter_steps = jitter_steps;
    cfg.burn_in = burn_in;
    cfg.thinning = thinning;
    cfg.chain_length = burn_in + points * thinning;
    cfg.seed = derive_seed(seed, chain);
    cfg.initial = initial;
    return cfg;
}

void to_json(json &j, const RunConfig &c) {
    j = json{
        {"pom", c.pom},
        {"space", c.space},
        {"prior", c.prior},
        {"counts", c.counts},
        {"mock", c.mock},
        {"points", c.points},
        {"seed", c.seed},
        {"tau", c.tau},
        {"steps", c.steps},
        {"jitter_tau", c.jitter_tau},
        {"jitter_steps", c.jitter_steps},
        {"burn_in", c.burn_in},
        {"thinning", c.thinning},
        {"chains", c.chains},
        {"initial", c.initial},
        {"format", c.format},
        {"output", c.output},
    };
}

void from_json(const json &j, RunConfig &c) {
    RunConfig defaults;
    c.pom = j.value("pom", defaults.pom);
    c.space = j.value("space", defaults.space);
    c.prior = j.value("prior", defaults.prior);
    c.counts = j.value("counts", defaults.counts);
    c.mock = j.value("mock", defaults.mock);
    c.points = j.value("points", defaults.points);
    c.seed = j.value("seed", defaults.seed);
    c.tau = j.value("tau", defaults.tau);
    c.steps = j.value("steps", defaults.steps);
    c.jitter_tau = j.value("jitter_tau", defaults.jitter_tau);
    c.jitter_steps = j.value("jitter_steps", defaults.jitter_steps);
    c.burn_in = j.value("burn_in", defaults.burn_in);
    c.thinning = j.value("thinning", defaults.thinning);
    c.chains = j.value("chains", defaults.chains);
    c.initial = j.value("initial", defaults.initial);
    c.format = j.value("format", defaults.format);
    c.output = j.value("output", defaults.output);
}

void to_json(json &j, const RunManifest &m) {
    json chains = json::array();
    for (const auto &c : m.chains) {
        chains.push_back({
            {"seed", c.seed},
            {"proposals", c.proposals},
            {"accepted", c.accepted},
            {"acceptance_rate", c.acceptance_rate},
            {"degenerate_weights", c.degenerate_weights},
        });
    }
    j = json{
        {"tool", "qhmc"},
        {"tool_version", m.tool_version},
        {"config", m.config},
        {"seed", m.seed},
        {"rng_algorithm", m.rng_algorithm},
        {"target", m.target_label},
        {"acceptance_rate", m.acceptance_rate},
        {"wall_time_seconds", m.wall_time_seconds},
        {"degenerate_weights", m.degenerate_weights},
        {"chains", chains},
    };
}

void from_json(const json &j, RunManifest &m) {
    m.tool_version = j.at("tool_version").get<std::string>();
    m.config = j.at("config").get<RunConfig>();
    m.seed = j.at("seed").get<uint64_t>();
    m.rng_algorithm = j.at("rng_algorithm").get<std::string>();
    m.target_label = j.value("target", std::string());
    m.acceptance_rate = j.at("acceptance_rate").get<double>();
    m.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    m.degenerate_weights = j.at("degenerate_weights").get<size_t>();
    m.chains.clear();
    for (const auto &c : j.at("chains")) {
        m.chains.push_back({
            c.at("seed").get<uint64_t>(),
            c.at("proposals").get<size_t>(),
            c.at("accepted").get<size_t>(),
            c.at("acceptance_rate").get<double>(),
            c.at("degenerate_weights").get<size_t>(),
        });
    }
}

void write_manifest(const std::string &path, const RunManifest &m) {
    std::ofstream out(path);
    if (!out) {
        throw IoFailure("cannot open '" + path + "' for writing");
    }
    out << json(m).dump(2) << '\n';
    if (!out) {
        throw IoFailure("failed writing '" + path + "'");
    }
}

RunManifest read_manifest(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoFailure("cannot open '" + path + "' for reading");
    }
    try {
        return json::parse(in).get<RunManifest>();
    } catch (const json::exception &e) {
        throw ConfigError("manifest '" + path + "' is malformed: " + e.what());
    }
}

}  // namespace qhmc::cli
