#include "glvortex/scenario.hpp"

#include "glvortex/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace glvortex {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw ConfigError("unknown key", path.empty() ? it.key() : path + "." + it.key());
        }
    }
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    const std::string full = path.empty() ? key : path + "." + key;
    if (!obj.is_object() || !obj.contains(key)) throw ConfigError("missing required key", full);
    return obj.at(key);
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_number()) throw ConfigError("expected a number", path + "." + key);
    return v.get<double>();
}

double get_number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
    return obj.contains(key) ? get_number(obj, key, path) : fallback;
}

std::string get_string(const json& obj, const std::string& key, const std::string& path) {
    const json& v = require(obj, key, path);
    if (!v.is_string()) throw ConfigError("expected a string", path.empty() ? key : path + "." + key);
    return v.get<std::string>();
}

void require_object(const json& v, const std::string& path) {
    if (!v.is_object()) throw ConfigError("expected an object", path);
}

EquationKind parse_equation(const std::string& s) {
    if (s == "schrodinger") return EquationKind::schrodinger;
    if (s == "heat_flow") return EquationKind::heat_flow;
    throw ConfigError("expected \"schrodinger\" or \"heat_flow\", got \"" + s + "\"", "equation");
}

IntegrationMethod parse_method(const std::string& s) {
    if (s == "rk4") return IntegrationMethod::rk4;
    if (s == "rk45") return IntegrationMethod::rk45;
    throw ConfigError("expected \"rk4\" or \"rk45\", got \"" + s + "\"", "integrator.method");
}

OutputKind parse_output(const std::string& s, const std::string& path) {
    if (s == "csv") return OutputKind::csv;
    if (s == "json") return OutputKind::json;
    if (s == "svg") return OutputKind::svg;
    throw ConfigError("expected \"csv\", \"json\" or \"svg\", got \"" + s + "\"", path);
}

std::string line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

ordered_json spec_json(const ScenarioSpec& spec) {
    ordered_json j;
    j["name"] = spec.name;
    ordered_json domain;
    domain["kind"] = spec.domain.is_annulus() ? "annulus" : "disk";
    if (spec.domain.is_annulus()) domain["R1"] = spec.domain.R1();
    domain["R2"] = spec.domain.R2();
    j["domain"] = domain;
    j["equation"] = std::string(to_string(spec.equation));
    j["vortices"] = ordered_json::array();
    for (const Vortex& v : spec.vortices) {
        ordered_json o;
        o["x"] = v.position.real();
        o["y"] = v.position.imag();
        o["n"] = v.degree;
        j["vortices"].push_back(o);
    }
    const IntegratorParams& p = spec.params;
    ordered_json integ;
    integ["method"] = std::string(to_string(p.method));
    integ["dt"] = p.dt;
    integ["rel_tol"] = p.rel_tol;
    integ["abs_tol"] = p.abs_tol;
    integ["t_end"] = p.t_end;
    integ["max_steps"] = p.max_steps;
    j["integrator"] = integ;
    j["events"] = {{"collision_eps", p.collision_eps}, {"wall_eps", p.wall_eps}};
    j["outputs"] = ordered_json::array();
    for (OutputKind k : spec.outputs) j["outputs"].push_back(std::string(to_string(k)));
    j["detect_period"] = spec.detect_period;
    j["notes"] = spec.notes;
    return j;
}

}  // namespace

ScenarioSpec parse_spec(std::string_view text, std::string_view source) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string(source) + ": syntax error at " + line_col(text, e.byte));
    }
    require_object(root, "<root>");
    reject_unknown(root, "",
                   {"name", "domain", "equation", "vortices", "integrator", "events", "outputs", "detect_period",
                    "notes"});

    ScenarioSpec spec;
    spec.name = root.contains("name") ? get_string(root, "name", "") : "scenario";
    if (spec.name.empty() || spec.name.find_first_of("/\\") != std::string::npos) {
        throw ConfigError("name must be non-empty and free of path separators", "name");
    }

    const json& domain = require(root, "domain", "");
    require_object(domain, "domain");
    reject_unknown(domain, "domain", {"kind", "R1", "R2"});
    const std::string kind = get_string(domain, "kind", "domain");
    try {
        if (kind == "disk") {
            if (domain.contains("R1")) throw ConfigError("a disk takes no R1", "domain.R1");
            spec.domain = DomainGeometry::disk(get_number(domain, "R2", "domain"));
        } else if (kind == "annulus") {
            spec.domain = DomainGeometry::annulus(get_number(domain, "R1", "domain"), get_number(domain, "R2", "domain"));
        } else {
            throw ConfigError("expected \"disk\" or \"annulus\", got \"" + kind + "\"", "domain.kind");
        }
    } catch (const InvalidGeometry& e) {
        throw ConfigError(e.what(), "domain");
    }

    spec.equation = parse_equation(get_string(root, "equation", ""));

    const json& vortices = require(root, "vortices", "");
    if (!vortices.is_array() || vortices.empty()) throw ConfigError("expected a non-empty array", "vortices");
    for (std::size_t i = 0; i < vortices.size(); ++i) {
        const std::string path = "vortices[" + std::to_string(i) + "]";
        const json& v = vortices[i];
        require_object(v, path);
        reject_unknown(v, path, {"x", "y", "n"});
        const json& n = require(v, "n", path);
        if (!n.is_number_integer()) throw ConfigError("expected an integer", path + ".n");
        spec.vortices.push_back({{get_number(v, "x", path), get_number(v, "y", path)}, n.get<int>()});
    }

    IntegratorParams p = IntegratorParams::defaults_for(spec.domain);
    if (root.contains("integrator")) {
        const json& integ = root.at("integrator");
        require_object(integ, "integrator");
        reject_unknown(integ, "integrator", {"method", "dt", "rel_tol", "abs_tol", "t_end", "max_steps"});
        if (integ.contains("method")) p.method = parse_method(get_string(integ, "method", "integrator"));
        p.dt = get_number_or(integ, "dt", "integrator", p.dt);
        p.rel_tol = get_number_or(integ, "rel_tol", "integrator", p.rel_tol);
        p.abs_tol = get_number_or(integ, "abs_tol", "integrator", p.abs_tol);
        p.t_end = get_number_or(integ, "t_end", "integrator", p.t_end);
        if (integ.contains("max_steps")) {
            const json& m = integ.at("max_steps");
            if (!m.is_number_unsigned()) throw ConfigError("expected a positive integer", "integrator.max_steps");
            p.max_steps = m.get<std::size_t>();
        }
    }
    if (root.contains("events")) {
        const json& ev = root.at("events");
        require_object(ev, "events");
        reject_unknown(ev, "events", {"collision_eps", "wall_eps"});
        p.collision_eps = get_number_or(ev, "collision_eps", "events", p.collision_eps);
        p.wall_eps = get_number_or(ev, "wall_eps", "events", p.wall_eps);
    }
    try {
        p.validate();
    } catch (const InvalidGeometry& e) {
        throw ConfigError(e.what(), "integrator");
    }
    spec.params = p;

    if (root.contains("outputs")) {
        const json& outs = root.at("outputs");
        if (!outs.is_array()) throw ConfigError("expected an array", "outputs");
        spec.outputs.clear();
        std::set<OutputKind> seen;
        for (std::size_t i = 0; i < outs.size(); ++i) {
            const std::string path = "outputs[" + std::to_string(i) + "]";
            if (!outs[i].is_string()) throw ConfigError("expected a string", path);
            const OutputKind k = parse_output(outs[i].get<std::string>(), path);
            if (seen.insert(k).second) spec.outputs.push_back(k);
        }
    }
    if (root.contains("detect_period")) {
        if (!root.at("detect_period").is_boolean()) throw ConfigError("expected a boolean", "detect_period");
        spec.detect_period = root.at("detect_period").get<bool>();
    }
    if (root.contains("notes")) spec.notes = get_string(root, "notes", "");

    try {
        (void)spec.initial_configuration();
    } catch (const Error& e) {
        throw ConfigError(e.what(), "vortices");
    }
    return spec;
}

ScenarioSpec load_spec(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str(), path.string());
}

std::string spec_to_text(const ScenarioSpec& spec) { return spec_json(spec).dump(2) + "\n"; }

std::string trajectory_csv(const Trajectory& trajectory) {
    std::string out = "t";
    const std::size_t n = trajectory.samples.empty() ? 0 : trajectory.samples.front().config.size();
    for (std::size_t j = 1; j <= n; ++j) {
        const std::string s = std::to_string(j);
        out += ",x" + s + ",y" + s + ",alive" + s;
    }
    out += '\n';
    for (const Sample& s : trajectory.samples) {
        out += num(s.t);
        for (const Vortex& v : s.config.vortices()) {
            out += ',' + num(v.position.real()) + ',' + num(v.position.imag()) + (v.alive ? ",1" : ",0");
        }
        out += '\n';
    }
    return out;
}

std::string events_csv(const Trajectory& trajectory) {
    std::string out = "t,kind,indices\n";
    for (const Event& e : trajectory.events) {
        out += num(e.t) + ',' + std::string(to_string(e.kind)) + ',';
        for (std::size_t i = 0; i < e.vortices.size(); ++i) {
            if (i) out += ';';
            out += std::to_string(e.vortices[i] + 1);
        }
        out += '\n';
    }
    return out;
}

std::string result_json(const ScenarioSpec& spec, const Trajectory& trajectory, const ScenarioSummary& summary) {
    ordered_json root;
    ordered_json meta;
    meta["generator"] = "glvortex";
    meta["name"] = spec.name;
    meta["domain"] = spec.domain.is_annulus() ? "annulus" : "disk";
    meta["R1"] = spec.domain.R1();
    meta["R2"] = spec.domain.R2();
    meta["equation"] = std::string(to_string(spec.equation));
    meta["notes"] = spec.notes;
    meta["indices"] = "1-based";
    root["metadata"] = meta;
    root["scenario"] = spec_json(spec);

    ordered_json sum;
    sum["final_time"] = summary.final_time;
    sum["sample_count"] = summary.sample_count;
    sum["alive_count"] = summary.alive_count;
    sum["pair_annihilations"] = summary.pair_annihilations;
    sum["wall_absorptions"] = summary.wall_absorptions;
    sum["angular_moment_drift"] = summary.angular_moment_drift ? ordered_json(*summary.angular_moment_drift) : ordered_json();
    if (summary.period) {
        sum["period"] = {{"period", summary.period->period}, {"return_error", summary.period->return_error}};
    } else {
        sum["period"] = nullptr;
    }
    sum["stop_reason"] = summary.stop_reason;
    root["summary"] = sum;

    root["events"] = ordered_json::array();
    for (const Event& e : trajectory.events) {
        ordered_json ev;
        ev["t"] = e.t;
        ev["kind"] = std::string(to_string(e.kind));
        ev["indices"] = ordered_json::array();
        for (std::size_t i : e.vortices) ev["indices"].push_back(i + 1);
        root["events"].push_back(ev);
    }
    root["samples"] = ordered_json::array();
    for (const Sample& s : trajectory.samples) {
        ordered_json o;
        o["t"] = s.t;
        ordered_json xs = ordered_json::array();
        ordered_json ys = ordered_json::array();
        ordered_json alive = ordered_json::array();
        for (const Vortex& v : s.config.vortices()) {
            xs.push_back(v.position.real());
            ys.push_back(v.position.imag());
            alive.push_back(v.alive);
        }
        o["x"] = xs;
        o["y"] = ys;
        o["alive"] = alive;
        root["samples"].push_back(o);
    }
    return root.dump(2) + "\n";
}

std::string trajectory_svg(const ScenarioSpec& spec, const Trajectory& trajectory) {
    constexpr double size = 800.0;
    constexpr double margin = 20.0;
    const double R2 = spec.domain.R2();
    const double scale = (size / 2 - margin) / R2;
    auto px = [&](Complex z) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f,%.2f", size / 2 + scale * z.real(), size / 2 - scale * z.imag());
        return std::string(buf);
    };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", v);
        return std::string(buf);
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    out << "<title>" << spec.name << "</title>\n";
    out << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
    out << "<circle cx=\"400\" cy=\"400\" r=\"" << fmt(scale * R2)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    if (spec.domain.is_annulus()) {
        out << "<circle cx=\"400\" cy=\"400\" r=\"" << fmt(scale * spec.domain.R1())
            << "\" fill=\"#eeeeee\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    if (trajectory.samples.empty()) {
        out << "</svg>\n";
        return out.str();
    }
    const std::size_t n = trajectory.samples.front().config.size();
    for (std::size_t j = 0; j < n; ++j) {
        const Vortex& first = trajectory.samples.front().config[j];
        const char* colour = first.degree > 0 ? "#c0392b" : "#2459a8";
        std::string points;
        Complex last = first.position;
        bool died = !first.alive;
        for (const Sample& s : trajectory.samples) {
            const Vortex& v = s.config[j];
            if (!points.empty()) points += ' ';
            points += px(v.position);
            last = v.position;
            if (!v.alive) {
                died = true;
                break;
            }
        }
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"" << points
            << "\"/>\n";
        const std::string start = px(first.position);
        const auto comma = start.find(',');
        out << "<circle cx=\"" << start.substr(0, comma) << "\" cy=\"" << start.substr(comma + 1)
            << "\" r=\"4\" fill=\"" << colour << "\"/>\n";
        if (died) {
            const std::string end = px(last);
            const auto c = end.find(',');
            out << "<circle cx=\"" << end.substr(0, c) << "\" cy=\"" << end.substr(c + 1) << "\" r=\"7\" fill=\"none\" stroke=\""
                << colour << "\" stroke-width=\"1.5\" stroke-dasharray=\"3,2\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

std::vector<std::filesystem::path> output_paths(const ScenarioSpec& spec, const std::filesystem::path& out_dir) {
    std::vector<std::filesystem::path> paths;
    for (OutputKind k : spec.outputs) {
        switch (k) {
            case OutputKind::csv:
                paths.push_back(out_dir / (spec.name + ".csv"));
                paths.push_back(out_dir / (spec.name + "_events.csv"));
                break;
            case OutputKind::json: paths.push_back(out_dir / (spec.name + ".json")); break;
            case OutputKind::svg: paths.push_back(out_dir / (spec.name + ".svg")); break;
        }
    }
    return paths;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> write_outputs(const Trajectory& trajectory, const ScenarioSpec& spec,
                                                 const ScenarioSummary& summary, const OutputOptions& options) {
    const std::vector<std::filesystem::path> paths = output_paths(spec, options.out_dir);
    if (!options.overwrite) {
        for (const auto& p : paths) {
            if (std::filesystem::exists(p)) throw IoError("refusing to overwrite " + p.string() + " (pass --overwrite)");
        }
    }
    std::error_code ec;
    if (!options.out_dir.empty()) std::filesystem::create_directories(options.out_dir, ec);
    if (ec) throw IoError("cannot create " + options.out_dir.string() + ": " + ec.message());

    for (OutputKind k : spec.outputs) {
        switch (k) {
            case OutputKind::csv:
                write_file(options.out_dir / (spec.name + ".csv"), trajectory_csv(trajectory));
                write_file(options.out_dir / (spec.name + "_events.csv"), events_csv(trajectory));
                break;
            case OutputKind::json:
                write_file(options.out_dir / (spec.name + ".json"), result_json(spec, trajectory, summary));
                break;
            case OutputKind::svg:
                write_file(options.out_dir / (spec.name + ".svg"), trajectory_svg(spec, trajectory));
                break;
        }
    }
    return paths;
}

}  // namespace glvortex
