// csflow command line interface: single runs, convergence studies,
// reference table comparison and figure-style snapshot extraction.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "csflow/io.hpp"
#include "csflow/metrics.hpp"
#include "csflow/study.hpp"

namespace {

using namespace csflow;

std::vector<int> parse_levels(const std::string& text) {
    std::vector<int> levels;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            levels.push_back(std::stoi(token));
        } catch (const std::logic_error&) {
            throw ConfigInvalid("cannot parse level list \"" + text + "\"");
        }
    }
    if (levels.empty()) {
        throw ConfigInvalid("level list is empty");
    }
    return levels;
}

std::vector<double> parse_times(const std::string& text) {
    std::vector<double> times;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            times.push_back(std::stod(token));
        } catch (const std::logic_error&) {
            throw ConfigInvalid("cannot parse time list \"" + text + "\"");
        }
    }
    if (times.empty()) {
        throw ConfigInvalid("time list is empty");
    }
    return times;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ConfigInvalid("cannot create output directory " + dir + ": " + ec.message());
    }
}

void write_or_die(const std::string& path, const std::string& content) {
    if (!write_text_file(path, content)) {
        throw ConfigInvalid("cannot write " + path);
    }
    std::cout << "wrote " << path << "\n";
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const SimConfig config = load_config_file(config_path);
    ensure_dir(out_dir);

    const auto start = std::chrono::steady_clock::now();
    const Trajectory traj = run(config);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    write_or_die(out_dir + "/snapshots.csv", snapshots_csv(traj.states, field_is_active(config)));
    write_or_die(out_dir + "/summary.json", summary_json(config, traj, wall));
    if (traj.failure) {
        std::cerr << "run failed at step " << traj.failure->step << ": " << traj.failure->what
                  << "\n";
        return 1;
    }
    return 0;
}

int cmd_converge(const std::string& example, double alpha, const std::string& scheme,
                 const std::string& levels, const std::string& dt_rule,
                 const std::string& out_dir) {
    const ExampleId id = parse_example(example);
    const SchemeKind kind = (scheme == "linear") ? SchemeKind::LinearDE98 : SchemeKind::Newton;
    if (scheme != "linear" && scheme != "newton") {
        throw ConfigInvalid("scheme must be \"newton\" or \"linear\", got " + scheme);
    }
    const EocTable table =
        convergence_study(id, alpha, kind, parse_levels(levels), DtRule::parse(dt_rule));
    ensure_dir(out_dir);
    write_or_die(out_dir + "/eoc.csv", eoc_csv(table));
    write_or_die(out_dir + "/eoc.md", eoc_markdown(table));
    std::cout << eoc_markdown(table);
    return 0;
}

int cmd_compare(const std::string& table, double tol, const std::string& out_dir) {
    const CompareReport report = compare_against_reference(parse_table_id(table), tol);
    ensure_dir(out_dir);
    write_or_die(out_dir + "/compare.json", compare_report_json(report));
    for (const CompareCell& cell : report.cells) {
        std::printf("J=%-3d %-5s expected %-12.5g computed %-12.5g deviation %-10.3g %s\n",
                    cell.element_count, cell.quantity.c_str(), cell.expected, cell.computed,
                    cell.deviation, cell.pass ? "ok" : "FAIL");
    }
    std::cout << "table " << table << ": " << (report.pass ? "PASS" : "FAIL") << "\n";
    return report.pass ? 0 : 1;
}

int cmd_snapshots(const std::string& example, std::string times_text, int level, double alpha,
                  const std::string& scheme, const std::string& out_path) {
    const ExampleId id = parse_example(example);
    const ExactSolution& exact = exact_catalog(id);
    if (times_text.empty()) {
        // figure defaults: six equispaced times including 0 and T
        times_text = "";
        for (int k = 0; k <= 5; ++k) {
            times_text += (k ? "," : "") + std::to_string(exact.final_time * k / 5.0);
        }
    }
    const std::vector<double> times = parse_times(times_text);

    SimConfig config;
    config.geometry = exact.geometry;
    config.alpha = alpha;
    config.element_count = level;
    config.final_time = exact.final_time;
    config.scheme = (scheme == "linear") ? SchemeKind::LinearDE98 : SchemeKind::Newton;
    config.f_name = exact.f_name;
    config.g_name = exact.g_name;
    config.w_b = exact.w_b;
    config.initial = exact.initial;
    config.w0_name = exact.w0_name;
    config.snapshot_stride = 1;

    const Trajectory traj = run(config);
    if (traj.failure) {
        std::cerr << "run failed at step " << traj.failure->step << ": " << traj.failure->what
                  << "\n";
        return 1;
    }
    const double dt = config.dt();
    std::vector<SimState> picked;
    for (double t : times) {
        if (t < -1e-12 || t > exact.final_time + 1e-12) {
            throw ConfigInvalid("snapshot time " + std::to_string(t) + " is outside [0, T]");
        }
        const long n = std::lround(t / dt);
        if (std::abs(n * dt - t) > 0.5 * dt) {
            throw ConfigInvalid("snapshot time " + std::to_string(t) +
                                " does not land near a time level");
        }
        picked.push_back(traj.states.at(static_cast<std::size_t>(n)));
    }
    const std::string csv = snapshots_csv(picked, exact.has_field);
    if (out_path.empty()) {
        std::cout << csv;
    } else {
        write_or_die(out_path, csv);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite element curve shortening flow with orthogonal boundary contact"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    auto* run_cmd = app.add_subcommand("run", "execute one simulation from a config file");
    run_cmd->add_option("--config", config_path, "path to the key = value config file")
        ->required();
    run_cmd->add_option("--out", out_dir, "output directory (default: current)");

    std::string example;
    double alpha = 1.0;
    std::string scheme = "newton";
    std::string levels = "10,20,40,80";
    std::string dt_rule = "h2";
    std::string study_out = ".";
    auto* conv_cmd = app.add_subcommand("converge", "run a refinement study for one example");
    conv_cmd->add_option("--example", example, "semicircle | diameter | coupled")->required();
    conv_cmd->add_option("--alpha", alpha, "tangential motion parameter in (0, 1]");
    conv_cmd->add_option("--scheme", scheme, "newton | linear");
    conv_cmd->add_option("--levels", levels, "comma separated element counts");
    conv_cmd->add_option("--dt-rule", dt_rule, "h2 | ch:<c> | n:<N>");
    conv_cmd->add_option("--out", study_out, "output directory (default: current)");

    std::string table;
    double tol = -1.0;
    std::string compare_out = ".";
    auto* cmp_cmd = app.add_subcommand("compare", "compare against a reference table");
    cmp_cmd->add_option("--table", table, "t1l | t1r | t2l | t2r | t3 | t4")->required();
    cmp_cmd->add_option("--tol", tol, "relative tolerance override for error cells");
    cmp_cmd->add_option("--out", compare_out, "output directory (default: current)");

    std::string snap_example;
    std::string times;
    int snap_level = 40;
    double snap_alpha = 1.0;
    std::string snap_scheme = "newton";
    std::string snap_out;
    auto* snap_cmd = app.add_subcommand("snapshots", "emit curve and field polylines as CSV");
    snap_cmd->add_option("--example", snap_example, "semicircle | diameter | coupled")
        ->required();
    snap_cmd->add_option("--times", times, "comma separated snapshot times (default: 6 frames)");
    snap_cmd->add_option("--j", snap_level, "element count (default 40)");
    snap_cmd->add_option("--alpha", snap_alpha, "tangential motion parameter");
    snap_cmd->add_option("--scheme", snap_scheme, "newton | linear");
    snap_cmd->add_option("--out", snap_out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
        if (run_cmd->parsed()) {
            return cmd_run(config_path, out_dir);
        }
        if (conv_cmd->parsed()) {
            return cmd_converge(example, alpha, scheme, levels, dt_rule, study_out);
        }
        if (cmp_cmd->parsed()) {
            return cmd_compare(table, tol, compare_out);
        }
        if (snap_cmd->parsed()) {
            return cmd_snapshots(snap_example, times, snap_level, snap_alpha, snap_scheme,
                                 snap_out);
        }
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) {
            return app.exit(err); // --help
        }
        std::cerr << err.what() << "\n";
        return 2;
    } catch (const ConfigInvalid& err) {
        std::cerr << err.what() << "\n";
        return 2;
    } catch (const Error& err) {
        std::cerr << err.what() << "\n";
        return 1;
    }
    return 2;
}
