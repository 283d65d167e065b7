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

#include "cli/sample_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace qhmc::cli {

namespace {

using nlohmann::json;

double parse_field(const std::string &text, size_t line) {
    const char *begin = text.data();
    const char *end = begin + text.size();
    while (begin < end && *begin == ' ') {
        begin++;
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        throw MalformedSample("line " + std::to_string(line) + ": '" + text + "' is not a number");
    }
    return v;
}

std::vector<std::string> split_commas(const std::string &line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

SampleLayout parse_header(const std::vector<std::string> &names) {
    SampleLayout layout;
    size_t i = 0;
    while (i < names.size() && names[i] == "theta_" + std::to_string(layout.angles + 1)) {
        layout.angles++;
        i++;
    }
    while (i < names.size() && names[i] == "p_" + std::to_string(layout.probabilities + 1)) {
        layout.probabilities++;
        i++;
    }
    if (i < names.size() && names[i] == "q") {
        layout.has_q = true;
        i++;
    }
    if (i < names.size() && names[i] == "weight") {
        layout.has_weight = true;
        i++;
    }
    if (i < names.size() && names[i] == "chain") {
        layout.has_chain = true;
        i++;
    }
    if (i != names.size() || layout.angles == 0) {
        throw MalformedSample("header does not match theta_1..theta_S,p_1..p_K[,q][,weight][,chain]");
    }
    return layout;
}

void append_row(LoadedSample &loaded, const std::vector<double> &row, size_t line) {
    const auto &layout = loaded.layout;
    auto &s = loaded.samples;
    size_t at = 0;
    s.points.emplace_back(row.begin(), row.begin() + layout.angles);
    at += layout.angles;
    if (layout.probabilities > 0) {
        s.derived_probs.emplace_back(row.begin() + at, row.begin() + at + layout.probabilities);
        at += layout.probabilities;
    }
    if (layout.has_q) {
        s.auxiliary.push_back({row[at++]});
    }
    if (layout.has_weight) {
        double w = row[at++];
        if (!(w > 0) || !std::isfinite(w)) {
            throw MalformedSample("line " + std::to_string(line) + ": weights must be finite and positive");
        }
        s.weights.push_back(w);
    }
    uint32_t chain = 0;
    if (layout.has_chain) {
        double c = row[at++];
        if (!(c >= 0) || c != static_cast<double>(static_cast<uint32_t>(c))) {
            throw MalformedSample("line " + std::to_string(line) + ": chain ids are nonnegative integers");
        }
        chain = static_cast<uint32_t>(c);
    }
    loaded.chains.push_back(chain);
}

std::vector<double> row_values(const SampleSet &s, size_t i, const SampleLayout &layout, uint32_t chain) {
    std::vector<double> row(s.points[i].begin(), s.points[i].end());
    if (layout.probabilities > 0) {
        row.insert(row.end(), s.derived_probs[i].begin(), s.derived_probs[i].end());
    }
    if (layout.has_q) {
        row.push_back(s.auxiliary[i].at(0));
    }
    if (layout.has_weight) {
        row.push_back(s.weight(i));
    }
    if (layout.has_chain) {
        row.push_back(chain);
    }
    return row;
}

}  // namespace

std::vector<std::string> SampleLayout::header() const {
    std::vector<std::string> names;
    for (size_t s = 1; s <= angles; s++) {
        names.push_back("theta_" + std::to_string(s));
    }
    for (size_t k = 1; k <= probabilities; k++) {
        names.push_back("p_" + std::to_string(k));
    }
    if (has_q) names.emplace_back("q");
    if (has_weight) names.emplace_back("weight");
    if (has_chain) names.emplace_back("chain");
    return names;
}

size_t SampleLayout::width() const {
    return angles + probabilities + has_q + has_weight + has_chain;
}

SampleFormat parse_sample_format(const std::string &name) {
    if (name == "csv") return SampleFormat::csv;
    if (name == "jsonl") return SampleFormat::jsonl;
    throw ConfigError("unknown sample format '" + name + "' (expected csv or jsonl)");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SampleLayout layout_for(const std::vector<SampleSet> &chains) {
    if (chains.empty() || chains.front().size() == 0) {
        throw MalformedSample("no points to write");
    }
    const auto &first = chains.front();
    SampleLayout layout;
    layout.angles = first.points.front().size();
    layout.probabilities = first.derived_probs.empty() ? 0 : first.derived_probs.front().size();
    layout.has_q = !first.auxiliary.empty() && !first.auxiliary.front().empty();
    layout.has_weight = !first.weights.empty();
    layout.has_chain = chains.size() > 1;
    return layout;
}

void write_samples(std::ostream &out, const std::vector<SampleSet> &chains, SampleFormat format) {
    auto layout = layout_for(chains);
    auto names = layout.header();
    if (format == SampleFormat::csv) {
        for (size_t i = 0; i < names.size(); i++) {
            out << (i ? "," : "") << names[i];
        }
        out << '\n';
    }
    for (size_t c = 0; c < chains.size(); c++) {
        const auto &s = chains[c];
        for (size_t i = 0; i < s.size(); i++) {
            auto row = row_values(s, i, layout, static_cast<uint32_t>(c));
            if (format == SampleFormat::csv) {
                for (size_t j = 0; j < row.size(); j++) {
                    out << (j ? "," : "") << format_double(row[j]);
                }
                out << '\n';
            } else {
                // Raw text keeps the 17-digit rendering shared with the CSV path.
                out << '{';
                for (size_t j = 0; j < row.size(); j++) {
                    out << (j ? "," : "") << '"' << names[j] << "\":" << format_double(row[j]);
                }
                out << "}\n";
            }
        }
    }
}

LoadedSample read_samples(std::istream &in) {
    LoadedSample loaded;
    std::string line;
    size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        if (line.front() == '{') {
            json obj;
            try {
                obj = json::parse(line);
            } catch (const json::exception &e) {
                throw MalformedSample("line " + std::to_string(line_no) + ": " + e.what());
            }
            if (!obj.is_object()) {
                throw MalformedSample("line " + std::to_string(line_no) + ": expected a JSON object");
            }
            std::vector<std::string> names;
            for (auto it = obj.begin(); it != obj.end(); ++it) {
                names.push_back(it.key());
            }
            // nlohmann sorts keys; rebuild the contract order from the keys.
            SampleLayout layout;
            for (const auto &n : names) {
                if (n.rfind("theta_", 0) == 0) layout.angles++;
                else if (n.rfind("p_", 0) == 0) layout.probabilities++;
                else if (n == "q") layout.has_q = true;
                else if (n == "weight") layout.has_weight = true;
                else if (n == "chain") layout.has_chain = true;
                else throw MalformedSample("line " + std::to_string(line_no) + ": unknown field '" + n + "'");
            }
            auto expected = layout.header();
            if (!have_header) {
                loaded.layout = layout;
                have_header = true;
            } else if (!(layout == loaded.layout)) {
                throw MalformedSample("line " + std::to_string(line_no) + ": fields differ from the first row");
            }
            for (const auto &n : expected) {
                if (!obj.contains(n) || !obj[n].is_number()) {
                    throw MalformedSample("line " + std::to_string(line_no) + ": missing numeric field '" + n + "'");
                }
                row.push_back(obj[n].get<double>());
            }
            if (layout.angles == 0) {
                throw MalformedSample("rows need at least one angle");
            }
        } else if (!have_header) {
            loaded.layout = parse_header(split_commas(line));
            have_header = true;
            continue;
        } else {
            auto fields = split_commas(line);
            if (fields.size() != loaded.layout.width()) {
                throw MalformedSample(
                    "line " + std::to_string(line_no) + ": expected " + std::to_string(loaded.layout.width()) +
                    " fields, got " + std::to_string(fields.size()));
            }
            for (const auto &f : fields) {
                row.push_back(parse_field(f, line_no));
            }
        }
        append_row(loaded, row, line_no);
    }
    if (loaded.samples.size() == 0) {
        throw MalformedSample("sample file has no rows");
    }
    return loaded;
}

void write_sample_file(const std::string &path, const std::vector<SampleSet> &chains, SampleFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoFailure("cannot open '" + path + "' for writing");
    }
    write_samples(out, chains, format);
    out.flush();
    if (!out) {
        throw IoFailure("failed writing '" + path + "'");
    }
}

LoadedSample read_sample_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open '" + path + "' for reading");
    }
    return read_samples(in);
}

}  // namespace qhmc::cli
