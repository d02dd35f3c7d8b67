#include "csflow/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "csflow/errors.hpp"
#include "csflow/metrics.hpp"
#include "csflow/study.hpp"

namespace csflow {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        ++a;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        --b;
    }
    return s.substr(a, b - a);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::logic_error&) {
        throw ConfigInvalid("cannot parse number for key \"" + key + "\": " + value);
    }
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::logic_error&) {
        throw ConfigInvalid("cannot parse integer for key \"" + key + "\": " + value);
    }
}

} // namespace

SimConfig parse_config_text(const std::string& text) {
    std::map<std::string, std::string> entries;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto pos = line.find('=');
        if (pos == std::string::npos) {
            throw ConfigInvalid("config line " + std::to_string(line_no) +
                                " has no '=' separator: " + line);
        }
        const std::string key = trim(line.substr(0, pos));
        const std::string value = trim(line.substr(pos + 1));
        if (key.empty()) {
            throw ConfigInvalid("config line " + std::to_string(line_no) + " has an empty key");
        }
        if (!entries.emplace(key, value).second) {
            throw ConfigInvalid("duplicate config key \"" + key + "\"");
        }
    }

    SimConfig cfg;
    for (const auto& [key, value] : entries) {
        if (key == "geometry") {
            cfg.geometry = value;
        } else if (key == "alpha") {
            cfg.alpha = to_double(key, value);
        } else if (key == "J") {
            cfg.element_count = to_int(key, value);
        } else if (key == "T") {
            cfg.final_time = to_double(key, value);
        } else if (key == "dt_rule") {
            cfg.dt_rule = DtRule::parse(value);
        } else if (key == "scheme") {
            if (value == "newton") {
                cfg.scheme = SchemeKind::Newton;
            } else if (value == "linear") {
                cfg.scheme = SchemeKind::LinearDE98;
            } else {
                throw ConfigInvalid("scheme must be \"newton\" or \"linear\", got " + value);
            }
        } else if (key == "f") {
            cfg.f_name = value;
        } else if (key == "g") {
            cfg.g_name = value;
        } else if (key == "f_time") {
            if (value == "prev") {
                cfg.f_time = ForcingTime::PrevTime;
            } else if (value == "curr") {
                cfg.f_time = ForcingTime::CurrTime;
            } else {
                throw ConfigInvalid("f_time must be \"prev\" or \"curr\", got " + value);
            }
        } else if (key == "g_time") {
            if (value == "prev") {
                cfg.g_time = SourceTime::PrevTime;
            } else if (value == "curr") {
                cfg.g_time = SourceTime::CurrTime;
            } else {
                throw ConfigInvalid("g_time must be \"prev\" or \"curr\", got " + value);
            }
        } else if (key == "w_b") {
            cfg.w_b = to_double(key, value);
        } else if (key == "initial") {
            cfg.initial = value;
        } else if (key == "w0") {
            cfg.w0_name = value;
        } else if (key == "newton_tol") {
            cfg.newton_tol = to_double(key, value);
        } else if (key == "newton_max_iter") {
            cfg.newton_max_iter = to_int(key, value);
        } else if (key == "snapshot_stride") {
            cfg.snapshot_stride = to_int(key, value);
        } else {
            throw ConfigInvalid("unknown config key \"" + key + "\"");
        }
    }
    cfg.validate();
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw ConfigInvalid("cannot open config file: " + path);
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_config_text(buffer.str());
}

std::string snapshots_csv(const std::vector<SimState>& states, bool with_field) {
    std::ostringstream out;
    out << "n,t,j,rho,x,y,w\n";
    for (const SimState& state : states) {
        const ParameterGrid& grid = state.curve.grid;
        for (int j = 0; j < grid.node_count(); ++j) {
            out << state.step << "," << format_full(state.curve.time) << "," << j << ","
                << format_full(grid.node(j)) << "," << format_full(state.curve.nodes[j].x)
                << "," << format_full(state.curve.nodes[j].y) << ",";
            if (with_field) {
                out << format_full(state.field.values[j]);
            }
            out << "\n";
        }
    }
    return out.str();
}

bool field_is_active(const SimConfig& config) {
    return config.g_name != "none" || config.w0_name != "zero" || config.w_b != 0.0;
}

namespace {

nlohmann::json config_json(const SimConfig& config) {
    nlohmann::json doc;
    doc["geometry"] = config.geometry;
    doc["alpha"] = config.alpha;
    doc["J"] = config.element_count;
    doc["T"] = config.final_time;
    doc["dt_rule"] = config.dt_rule.describe();
    doc["scheme"] = config.scheme == SchemeKind::Newton ? "newton" : "linear";
    doc["f"] = config.f_name;
    doc["g"] = config.g_name;
    doc["f_time"] = config.f_time == ForcingTime::PrevTime ? "prev" : "curr";
    doc["g_time"] = config.g_time == SourceTime::PrevTime ? "prev" : "curr";
    doc["w_b"] = config.w_b;
    doc["initial"] = config.initial;
    doc["w0"] = config.w0_name;
    doc["newton_tol"] = config.newton_tol;
    doc["newton_max_iter"] = config.newton_max_iter;
    doc["snapshot_stride"] = config.snapshot_stride;
    doc["N"] = config.step_count();
    doc["dt"] = config.dt();
    return doc;
}

// benchmark whose configuration this run reproduces, if any
const ExactSolution* matching_exact(const SimConfig& config) {
    for (ExampleId id :
         {ExampleId::Semicircle, ExampleId::Diameter, ExampleId::Coupled}) {
        const ExactSolution& ex = exact_catalog(id);
        if (config.geometry == ex.geometry && config.f_name == ex.f_name &&
            config.g_name == ex.g_name && config.initial == ex.initial &&
            config.w0_name == ex.w0_name && config.w_b == ex.w_b &&
            config.final_time == ex.final_time) {
            return &ex;
        }
    }
    return nullptr;
}

} // namespace

std::string summary_json(const SimConfig& config, const Trajectory& traj,
                         double wall_seconds) {
    nlohmann::json doc;
    doc["config"] = config_json(config);

    if (traj.failure) {
        doc["failure"] = {{"step", traj.failure->step}, {"what", traj.failure->what}};
    } else {
        doc["failure"] = nullptr;
    }
    doc["snapshots"] = traj.states.size();
    doc["terminal_time"] = traj.states.empty() ? 0.0 : traj.terminal().curve.time;

    nlohmann::json newton;
    if (!traj.reports.empty()) {
        long total = 0;
        int worst = 0;
        double violation = 0.0;
        bool all_converged = true;
        for (const NewtonReport& rep : traj.reports) {
            total += rep.iterations;
            worst = std::max(worst, rep.iterations);
            violation = std::max(violation, rep.final_constraint_violation);
            all_converged = all_converged && rep.converged;
        }
        newton["steps"] = traj.reports.size();
        newton["total_iterations"] = total;
        newton["max_iterations"] = worst;
        newton["mean_iterations"] =
            static_cast<double>(total) / static_cast<double>(traj.reports.size());
        newton["max_constraint_violation"] = violation;
        newton["all_converged"] = all_converged;
    }
    doc["newton"] = newton;

    doc["errors_vs_exact"] = nullptr;
    if (!traj.failure && config.snapshot_stride == 1) {
        if (const ExactSolution* exact = matching_exact(config)) {
            const ErrorReport report = error_accumulate(traj, *exact);
            nlohmann::json errs;
            errs["example"] = example_name(exact->id);
            errs["E1"] = report.e1;
            errs["E2"] = report.e2;
            errs["E3"] = report.e3;
            if (report.has_field) {
                errs["E4"] = report.e4;
                errs["E5"] = report.e5;
            }
            doc["errors_vs_exact"] = errs;
        }
    }
    doc["wall_clock_seconds"] = wall_seconds;
    return doc.dump(2) + "\n";
}

bool write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        return false;
    }
    out << content;
    return static_cast<bool>(out);
}

} // namespace csflow
