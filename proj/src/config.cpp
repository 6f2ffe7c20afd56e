// Copyright 2026 The qlga Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlga/config.hpp"

#include "qlga/error.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace qlga {

namespace {

struct Entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
};

struct Section {
    std::string name;
    std::size_t line = 0;
    std::vector<Entry> entries;
};

[[noreturn]] void fail(std::size_t line, const std::string &msg) {
    throw ValidationError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<std::string> words(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) {
        out.push_back(w);
    }
    return out;
}

long long parse_int(const std::string &s, std::size_t line) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(line, "expected an integer, got '" + s + "'");
    }
    return v;
}

std::size_t parse_count(const std::string &s, std::size_t line) {
    const long long v = parse_int(s, line);
    if (v < 0) {
        fail(line, "expected a non-negative integer, got '" + s + "'");
    }
    return static_cast<std::size_t>(v);
}

double parse_real(const std::string &s, std::size_t line) {
    if (s == "pi") {
        return std::numbers::pi;
    }
    if (s.starts_with("pi/")) {
        return std::numbers::pi / parse_real(s.substr(3), line);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        fail(line, "expected a number, got '" + s + "'");
    }
    return v;
}

bool parse_bool(const std::string &s, std::size_t line) {
    if (s == "true" || s == "yes" || s == "1") {
        return true;
    }
    if (s == "false" || s == "no" || s == "0") {
        return false;
    }
    fail(line, "expected true or false, got '" + s + "'");
}

std::vector<std::size_t> parse_counts(const std::string &s, std::size_t line) {
    std::vector<std::size_t> out;
    for (const auto &w : words(s)) {
        out.push_back(parse_count(w, line));
    }
    return out;
}

std::vector<Velocity> default_velocities(std::size_t dims, std::size_t q) {
    if (dims == 1 && q == 2) {
        return {{1, 0}, {-1, 0}};
    }
    if (dims == 1 && q == 3) {
        return {{1, 0}, {-1, 0}, {0, 0}};
    }
    if (dims == 2 && q == 4) {
        return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    }
    if (dims == 2 && q == 5) {
        return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {0, 0}};
    }
    return {};
}

/// "g" or "x,y" -> gridpoint index, range checked.
std::size_t parse_gridpoint(const LatticeSpec &spec, const std::string &s,
                            std::size_t line) {
    const auto comma = s.find(',');
    std::size_t g = 0;
    if (comma == std::string::npos) {
        g = parse_count(s, line);
        if (g >= spec.num_gridpoints()) {
            fail(line, "gridpoint " + s + " outside the lattice (" +
                           std::to_string(spec.num_gridpoints()) + " gridpoints)");
        }
        return g;
    }
    if (spec.dims != 2) {
        fail(line, "coordinates '" + s + "' given for a 1D lattice");
    }
    const std::size_t x = parse_count(s.substr(0, comma), line);
    const std::size_t y = parse_count(s.substr(comma + 1), line);
    if (x >= spec.shape[0] || y >= spec.shape[1]) {
        fail(line, "gridpoint " + s + " outside the " + std::to_string(spec.shape[0]) + "x" +
                       std::to_string(spec.shape[1]) + " lattice");
    }
    return spec.gridpoint_at({x, y});
}

std::size_t parse_channel(const LatticeSpec &spec, const std::string &s, std::size_t line) {
    const std::size_t c = parse_count(s, line);
    if (c >= spec.q) {
        fail(line, "unknown channel index " + s + " (q = " + std::to_string(spec.q) + ")");
    }
    return c;
}

/// "site/c" or "site/c/p".
std::vector<std::size_t> parse_site(const LatticeSpec &spec, const std::string &s,
                                    std::size_t parts, std::size_t line) {
    const auto fields = split(s, '/');
    if (fields.size() != parts) {
        fail(line, "malformed site '" + s + "'");
    }
    std::vector<std::size_t> out{parse_gridpoint(spec, fields[0], line)};
    for (std::size_t i = 1; i < parts; ++i) {
        out.push_back(parse_channel(spec, fields[i], line));
    }
    return out;
}

std::vector<Section> tokenize(const std::string &text) {
    std::vector<Section> sections;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) {
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']') {
                fail(line, "unterminated section header");
            }
            sections.push_back({trim(s.substr(1, s.size() - 2)), line, {}});
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            fail(line, "expected key = value");
        }
        if (sections.empty()) {
            fail(line, "entry outside any section");
        }
        sections.back().entries.push_back({trim(s.substr(0, eq)), trim(s.substr(eq + 1)), line});
    }
    return sections;
}

LatticeSpec parse_lattice(const Section &sec) {
    LatticeSpec spec;
    bool have_shape = false;
    std::optional<Entry> velocities;
    for (const auto &e : sec.entries) {
        if (e.key == "dims") {
            spec.dims = parse_count(e.value, e.line);
            if (spec.dims != 1 && spec.dims != 2) {
                fail(e.line, "dims must be 1 or 2");
            }
        } else if (e.key == "shape") {
            spec.shape = parse_counts(e.value, e.line);
            have_shape = true;
        } else if (e.key == "q") {
            spec.q = parse_count(e.value, e.line);
        } else if (e.key == "velocities") {
            velocities = e;
        } else if (e.key == "rest_weight") {
            spec.rest_weight = static_cast<int>(parse_int(e.value, e.line));
        } else if (e.key == "periodic") {
            spec.periodic = parse_bool(e.value, e.line);
        } else {
            fail(e.line, "unknown key '" + e.key + "' in [lattice]");
        }
    }
    if (!have_shape) {
        fail(sec.line, "[lattice] needs a shape");
    }
    if (spec.shape.size() != spec.dims) {
        fail(sec.line, "shape must list " + std::to_string(spec.dims) + " extents");
    }
    if (velocities) {
        spec.velocities.clear();
        for (const auto &v : split(velocities->value, ';')) {
            const auto parts = words(v);
            if (parts.size() != spec.dims) {
                fail(velocities->line, "velocity '" + v + "' needs " +
                                           std::to_string(spec.dims) + " components");
            }
            Velocity vel{0, 0};
            for (std::size_t d = 0; d < spec.dims; ++d) {
                vel[d] = static_cast<int>(parse_int(parts[d], velocities->line));
            }
            spec.velocities.push_back(vel);
        }
    } else {
        spec.velocities = default_velocities(spec.dims, spec.q);
        if (spec.velocities.empty()) {
            fail(sec.line, "no default velocities for this lattice; list them");
        }
    }
    if (spec.velocities.size() != spec.q) {
        fail(velocities ? velocities->line : sec.line,
             "expected " + std::to_string(spec.q) + " velocities");
    }
    try {
        spec.validate();
    } catch (const ValidationError &err) {
        fail(sec.line, err.what());
    }
    return spec;
}

LatticeSpec parse_configuration(const LatticeSpec &base, const Section &sec) {
    LatticeSpec spec = base;
    for (const auto &e : sec.entries) {
        if (e.key == "occupancy") {
            for (const auto &w : words(e.value)) {
                const auto site = parse_site(spec, w, 2, e.line);
                spec.initial_occupancy.insert({site[0], site[1]});
            }
        } else if (e.key == "reflect") {
            for (const auto &w : words(e.value)) {
                const auto site = parse_site(spec, w, 3, e.line);
                spec.add_reflection(site[0], site[1], site[2]);
            }
        } else if (e.key == "links") {
            for (const auto &w : words(e.value)) {
                const auto site = parse_site(spec, w, 3, e.line);
                spec.boundary_links.insert({site[0], site[1], site[2]});
            }
        } else {
            fail(e.line, "unknown key '" + e.key + "' in [configuration]");
        }
    }
    try {
        spec.validate();
    } catch (const ValidationError &err) {
        fail(sec.line, std::string("configuration: ") + err.what());
    }
    return spec;
}

CollisionModel parse_collision(const Section &sec, const LatticeSpec &spec) {
    CollisionModel model;
    std::string kind = "identity";
    std::size_t kind_line = sec.line;
    std::optional<Entry> rows;
    for (const auto &e : sec.entries) {
        if (e.key == "kind") {
            kind = e.value;
            kind_line = e.line;
        } else if (e.key == "theta") {
            model.theta = parse_real(e.value, e.line);
        } else if (e.key == "rows") {
            rows = e;
        } else {
            fail(e.line, "unknown key '" + e.key + "' in [collision]");
        }
    }
    if (kind == "identity") {
        model.kind = CollisionKind::Identity;
    } else if (kind == "hpp") {
        model.kind = CollisionKind::HppPermutation;
    } else if (kind == "rotation") {
        model.kind = CollisionKind::ParametrizedRotation;
    } else if (kind == "custom") {
        model.kind = CollisionKind::Custom;
        if (!rows) {
            fail(kind_line, "custom collision needs rows");
        }
        for (const auto &r : split(rows->value, ';')) {
            for (const auto &w : words(r)) {
                model.matrix.emplace_back(parse_real(w, rows->line), 0.0);
            }
        }
    } else {
        fail(kind_line, "unknown collision kind '" + kind + "'");
    }
    try {
        const auto report = verify_conservation(model, spec);
        if (!report.passed) {
            fail(kind_line, "collision does not conserve mass and momentum");
        }
    } catch (const ValidationError &err) {
        const std::string what = err.what();
        if (what.starts_with("line ")) {
            throw;
        }
        fail(kind_line, what);
    } catch (const NumericalError &err) {
        fail(kind_line, err.what());
    }
    return model;
}

QoISpec parse_qoi(const Section &sec, const LatticeSpec &spec) {
    QoISpec qoi;
    bool have_channels = false;
    for (const auto &e : sec.entries) {
        if (e.key == "region") {
            for (const auto &w : words(e.value)) {
                qoi.region.push_back(parse_gridpoint(spec, w, e.line));
            }
        } else if (e.key == "channels") {
            have_channels = true;
            for (const auto &w : words(e.value)) {
                qoi.channels.push_back(parse_channel(spec, w, e.line));
            }
        } else if (e.key == "weights") {
            for (const auto &w : words(e.value)) {
                qoi.weights.push_back(static_cast<int>(parse_int(w, e.line)));
            }
        } else if (e.key == "acc_steps") {
            qoi.acc_steps = parse_counts(e.value, e.line);
        } else {
            fail(e.line, "unknown key '" + e.key + "' in [qoi]");
        }
    }
    if (!have_channels) {
        for (std::size_t c = 0; c < spec.q; ++c) {
            qoi.channels.push_back(c);
        }
    }
    try {
        qoi.validate(spec);
    } catch (const ValidationError &err) {
        fail(sec.line, std::string("qoi: ") + err.what());
    }
    return qoi;
}

} // namespace

RunConfig parse_config(const std::string &text) {
    const auto sections = tokenize(text);
    RunConfig cfg;
    auto &p = cfg.pipeline;

    const Section *lattice = nullptr;
    for (const auto &sec : sections) {
        if (sec.name == "lattice") {
            if (lattice) {
                fail(sec.line, "duplicate [lattice] section");
            }
            lattice = &sec;
        }
    }
    if (!lattice) {
        throw ValidationError("line 1: missing [lattice] section");
    }
    const LatticeSpec base = parse_lattice(*lattice);

    std::optional<std::size_t> acc_line;
    bool have_qoi = false;
    std::size_t pipeline_line = 1;
    for (const auto &sec : sections) {
        if (sec.name == "lattice") {
            continue;
        }
        if (sec.name == "experiment") {
            for (const auto &e : sec.entries) {
                if (e.key == "name") {
                    cfg.name = e.value;
                } else if (e.key == "seed") {
                    cfg.seed = parse_count(e.value, e.line);
                } else {
                    fail(e.line, "unknown key '" + e.key + "' in [experiment]");
                }
            }
        } else if (sec.name == "configuration") {
            p.configs.lattices.push_back(parse_configuration(base, sec));
        } else if (sec.name == "markers") {
            for (const auto &e : sec.entries) {
                if (e.key != "encoding") {
                    fail(e.line, "unknown key '" + e.key + "' in [markers]");
                }
                if (e.value == "compact") {
                    p.configs.encoding = MarkerEncoding::Compact;
                } else if (e.value == "onehot") {
                    p.configs.encoding = MarkerEncoding::OneHot;
                } else {
                    fail(e.line, "marker encoding must be compact or onehot");
                }
            }
        } else if (sec.name == "collision") {
            p.collision = parse_collision(sec, base);
        } else if (sec.name == "qoi") {
            p.qoi = parse_qoi(sec, base);
            have_qoi = true;
            for (const auto &e : sec.entries) {
                if (e.key == "acc_steps") {
                    acc_line = e.line;
                }
            }
        } else if (sec.name == "pipeline") {
            pipeline_line = sec.line;
            for (const auto &e : sec.entries) {
                if (e.key == "steps") {
                    p.steps = parse_count(e.value, e.line);
                } else if (e.key == "mapping") {
                    if (e.value == "linear") {
                        p.mapping.kind = MappingKind::LinearComparison;
                    } else if (e.value == "rotation") {
                        p.mapping.kind = MappingKind::WeightedRotation;
                    } else {
                        fail(e.line, "mapping must be linear or rotation");
                    }
                } else if (e.key == "alpha") {
                    p.mapping.alpha = parse_real(e.value, e.line);
                } else if (e.key == "e") {
                    p.estimation_bits = parse_count(e.value, e.line);
                    if (p.estimation_bits < 1) {
                        fail(e.line, "estimation width e must be at least 1");
                    }
                } else if (e.key == "lambda") {
                    p.minfind.lambda = parse_real(e.value, e.line);
                } else if (e.key == "budget_c") {
                    p.minfind.budget_c = parse_real(e.value, e.line);
                } else if (e.key == "repetitions") {
                    cfg.repetitions = parse_count(e.value, e.line);
                    if (cfg.repetitions == 0 || cfg.repetitions % 2 == 0) {
                        fail(e.line, "repetitions must be odd, got " + e.value);
                    }
                } else if (e.key == "semantics") {
                    if (e.value == "shared") {
                        p.semantics = SemanticsMode::Shared;
                    } else if (e.value == "naive") {
                        p.semantics = SemanticsMode::Naive;
                    } else {
                        fail(e.line, "semantics must be shared or naive");
                    }
                } else {
                    fail(e.line, "unknown key '" + e.key + "' in [pipeline]");
                }
            }
        } else {
            fail(sec.line, "unknown section [" + sec.name + "]");
        }
    }

    if (p.configs.lattices.empty()) {
        throw ValidationError("line " + std::to_string(lattice->line) +
                              ": no [configuration] sections");
    }
    if (!have_qoi) {
        throw ValidationError("line 1: missing [qoi] section");
    }
    if (!acc_line) {
        for (std::size_t t = 1; t <= p.steps; ++t) {
            p.qoi.acc_steps.push_back(t);
        }
    }
    for (std::size_t t : p.qoi.acc_steps) {
        if (t > p.steps) {
            fail(acc_line.value_or(pipeline_line),
                 "accumulation step " + std::to_string(t) + " exceeds steps = " +
                     std::to_string(p.steps));
        }
    }
    try {
        p.validate();
    } catch (const ValidationError &err) {
        fail(pipeline_line, err.what());
    }
    return cfg;
}

RunConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open config file " + path);
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

} // namespace qlga
