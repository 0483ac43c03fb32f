#include "cavrep/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavrep/errors.hpp"
#include "cavrep/mc.hpp"
#include "cavrep/optimizer.hpp"
#include "cavrep/run_config.hpp"

namespace cavrep::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string csv_cell(const ojson& v) {
    if (v.is_number_float()) return fmt(v.get<double>());
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    return v.get<std::string>();
}

// Rows share one column list; CSV and JSON are two views of the same table.
void emit_table(std::ostream& os, const std::vector<std::string>& columns,
                const std::vector<ojson>& rows, bool as_json) {
    if (as_json) {
        os << ojson(rows).dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const ojson& row : rows) {
        for (std::size_t i = 0; i < columns.size(); ++i)
            os << csv_cell(row.at(columns[i])) << (i + 1 < columns.size() ? "," : "\n");
    }
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::vector<std::string> overrides;
    bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON configuration file");
    cmd->add_option("--out", o.out_path, "output file (default: stdout)");
    cmd->add_option("--override", o.overrides,
                    "configuration override key.path=value (repeatable)");
    cmd->add_flag("--json", o.json, "emit JSON instead of text/CSV");
}

config::RunConfig load_config(const CommonOpts& o) {
    config::RunConfig rc = o.config_path.empty() ? config::RunConfig::defaults()
                                                 : config::load_run_config(o.config_path);
    for (const std::string& ov : o.overrides) config::apply_override(rc, ov);
    return rc;
}

class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot write output file: " + path);
            stream_ = &file_;
        }
    }
    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

ojson analysis_row(const rate::Analysis& a) {
    const rate::RepeaterConfig& c = a.config;
    ojson row;
    row["distance_km"] = c.l_total_km;
    row["cooperativity"] = c.link.cooperativity;
    row["scheme"] = gen::scheme_name(c.scheme);
    row["gate"] = gates::name(c.gate);
    row["architecture"] = rate::architecture_name(c.architecture);
    row["variant"] = states::variant_name(c.variant);
    row["n"] = c.n;
    row["j"] = c.j;
    row["qubits_per_station"] = c.qubits_per_station;
    row["window_s"] = c.window_s;
    row["eps_sq"] = c.eps_sq;
    row["p0"] = a.p0;
    row["p_swap"] = a.p_swap;
    row["tau_link_s"] = a.timing.tau_link_s;
    row["tau_swap_s"] = a.timing.tau_swap_total_s;
    row["distribution_rate_hz"] = a.distribution_rate_hz;
    row["final_fidelity"] = a.final_fidelity;
    row["secret_fraction"] = a.report.secret_fraction;
    row["secret_key_rate_hz"] = a.report.secret_key_rate_hz;
    row["normalized_rate_hz"] = a.report.normalized_rate_hz;
    row["viable"] = a.report.secret_key_rate_hz >= c.min_secret_rate_hz;
    return row;
}

const std::vector<std::string> kSweepColumns = {
    "distance_km", "cooperativity", "scheme", "gate", "architecture", "variant", "n", "j",
    "qubits_per_station", "window_s", "eps_sq", "p0", "p_swap", "tau_link_s", "tau_swap_s",
    "distribution_rate_hz", "final_fidelity", "secret_fraction", "secret_key_rate_hz",
    "normalized_rate_hz", "viable", "best"};

int run_rate(const config::RunConfig& rc, const CommonOpts& opts, std::ostream& out) {
    const rate::Analysis a = rate::evaluate(rc.repeater);
    OutputTarget target(opts.out_path, out);
    std::ostream& os = target.stream();
    if (opts.json) {
        ojson doc;
        doc["result"] = analysis_row(a);
        doc["result"]["distribution_time_s"] = a.timing.distribution_time_s;
        doc["result"]["stations"] = a.report.stations;
        doc["result"]["m_slots"] = a.m_slots;
        doc["result"]["probabilistic_swap"] = a.probabilistic_swap;
        os << doc.dump(2) << "\n";
        return 0;
    }
    const rate::RepeaterConfig& c = a.config;
    os << "scheme              " << gen::scheme_name(c.scheme) << "\n"
       << "gate                " << gates::name(c.gate) << "\n"
       << "architecture        " << rate::architecture_name(c.architecture) << "\n"
       << "variant             " << states::variant_name(c.variant) << "\n"
       << "distance_km         " << fmt(c.l_total_km) << "\n"
       << "elementary_link_km  " << fmt(c.l0_km()) << "\n"
       << "swap_levels         " << c.n << "\n"
       << "pumping_rounds      " << c.j << "\n"
       << "qubits_per_station  " << c.qubits_per_station << "\n"
       << "window_s            " << fmt(c.window_s) << "\n"
       << "eps_sq              " << fmt(c.eps_sq) << "\n"
       << "p0                  " << fmt(a.p0) << "\n"
       << "p_swap              " << fmt(a.p_swap) << "\n"
       << "tau_link_s          " << fmt(a.timing.tau_link_s) << "\n"
       << "tau_swap_s          " << fmt(a.timing.tau_swap_total_s) << "\n"
       << "distribution_time_s " << fmt(a.timing.distribution_time_s) << "\n"
       << "distribution_rate_hz " << fmt(a.distribution_rate_hz) << "\n"
       << "final_fidelity      " << fmt(a.final_fidelity) << "\n"
       << "secret_fraction     " << fmt(a.report.secret_fraction) << "\n"
       << "secret_key_rate_hz  " << fmt(a.report.secret_key_rate_hz) << "\n"
       << "normalized_rate_hz  " << fmt(a.report.normalized_rate_hz) << "\n"
       << "stations            " << a.report.stations << "\n";
    return 0;
}

int run_sweep(const config::RunConfig& rc, const CommonOpts& opts, const std::string& axis,
              bool all_cells, std::ostream& out) {
    std::vector<opt::OptimumRecord> records = opt::optimize_grid(rc.sweep);
    if (axis == "cooperativity") {
        std::stable_sort(records.begin(), records.end(),
                         [](const opt::OptimumRecord& a, const opt::OptimumRecord& b) {
                             if (a.cooperativity != b.cooperativity)
                                 return a.cooperativity < b.cooperativity;
                             return a.distance_km < b.distance_km;
                         });
    }
    std::vector<ojson> rows;
    for (const opt::OptimumRecord& rec : records) {
        if (all_cells || rc.all_cells) {
            for (const opt::CellResult& cell : rec.cells) {
                const rate::Analysis a = rate::evaluate(cell.config);
                ojson row = analysis_row(a);
                const rate::RepeaterConfig& b = rec.best_config;
                row["best"] = cell.config.n == b.n && cell.config.j == b.j &&
                              cell.config.architecture == b.architecture &&
                              cell.config.variant == b.variant;
                rows.push_back(std::move(row));
            }
        } else {
            ojson row = analysis_row(rec.best_analysis);
            row["best"] = true;
            rows.push_back(std::move(row));
        }
    }
    OutputTarget target(opts.out_path, out);
    emit_table(target.stream(), kSweepColumns, rows, opts.json);
    return 0;
}

int run_compare(const config::RunConfig& rc, const CommonOpts& opts, std::ostream& out) {
    const std::vector<opt::CompareRow> compare = opt::compare_schemes(rc.sweep);
    std::vector<std::string> columns = {"distance_km", "cooperativity", "rank"};
    for (const std::string& c : kSweepColumns)
        if (c != "distance_km" && c != "cooperativity" && c != "best") columns.push_back(c);
    std::vector<ojson> rows;
    for (const opt::CompareRow& cr : compare) {
        int rank = 1;
        for (const opt::OptimumRecord& rec : cr.ranked) {
            ojson row;
            row["distance_km"] = cr.distance_km;
            row["cooperativity"] = cr.cooperativity;
            row["rank"] = rank++;
            ojson detail = analysis_row(rec.best_analysis);
            for (const std::string& c : columns)
                if (!row.contains(c)) row[c] = detail.at(c);
            rows.push_back(std::move(row));
        }
    }
    OutputTarget target(opts.out_path, out);
    emit_table(target.stream(), columns, rows, opts.json);
    return 0;
}

int run_validate(const config::RunConfig& rc, const CommonOpts& opts,
                 std::optional<std::uint64_t> seed_override, std::ostream& out) {
    config::ValidateSpec spec = rc.validate;
    if (seed_override) spec.seed = *seed_override;

    std::vector<rate::RepeaterConfig> grid;
    for (gates::GateKind gate : spec.gate_kinds) {
        for (rate::Architecture arch : spec.architectures) {
            for (int n = 0; n <= spec.n_max; ++n) {
                if (arch == rate::Architecture::Sequential && n == 0) continue;
                for (int j = 0; j <= spec.j_max; ++j) {
                    if (j >= 1 && spec.qubits_per_station < 4) continue;
                    rate::RepeaterConfig cfg = rc.repeater;
                    cfg.n = n;
                    cfg.j = j;
                    cfg.architecture = arch;
                    cfg.gate = gate;
                    cfg.qubits_per_station = spec.qubits_per_station;
                    cfg.l_total_km = spec.distance_km;
                    cfg.link.cooperativity = spec.cooperativity;
                    grid.push_back(cfg);
                }
            }
        }
    }
    const std::vector<mc::ValidationRow> rows =
        mc::validation_rows(grid, spec.trials, spec.seed, spec.band_lo, spec.band_hi);

    const std::vector<std::string> columns = {"gate",    "architecture",  "n",
                                              "j",       "analytic_s",    "mc_mean_s",
                                              "mc_se_s", "ratio",         "within_band"};
    std::vector<ojson> table;
    int in_band = 0;
    for (const mc::ValidationRow& r : rows) {
        ojson row;
        row["gate"] = gates::name(r.config.gate);
        row["architecture"] = rate::architecture_name(r.config.architecture);
        row["n"] = r.config.n;
        row["j"] = r.config.j;
        row["analytic_s"] = r.analytic_s;
        row["mc_mean_s"] = r.mc_mean_s;
        row["mc_se_s"] = r.mc_std_error_s;
        row["ratio"] = r.ratio;
        row["within_band"] = r.within_band;
        table.push_back(std::move(row));
        if (r.within_band) ++in_band;
    }
    OutputTarget target(opts.out_path, out);
    emit_table(target.stream(), columns, table, opts.json);
    if (!opts.out_path.empty())
        out << "within band: " << in_band << "/" << rows.size() << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Secret-key distribution rates for cavity-based quantum repeater chains"};
    app.require_subcommand(1);

    CommonOpts rate_opts, sweep_opts, compare_opts, validate_opts;
    std::string axis = "distance";
    bool all_cells = false;
    std::uint64_t seed_value = 0;

    CLI::App* cmd_rate = app.add_subcommand("rate", "evaluate one repeater configuration");
    add_common(cmd_rate, rate_opts);

    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "optimize configurations over a parameter grid");
    add_common(cmd_sweep, sweep_opts);
    cmd_sweep->add_option("--axis", axis, "primary sweep axis")
        ->check(CLI::IsMember({"distance", "cooperativity"}));
    cmd_sweep->add_flag("--all-cells", all_cells, "emit every examined cell, not just winners");

    CLI::App* cmd_compare =
        app.add_subcommand("compare", "rank schemes including ion-trap and perfect-gate baselines");
    add_common(cmd_compare, compare_opts);

    CLI::App* cmd_validate =
        app.add_subcommand("validate", "Monte Carlo check of the analytic timing model");
    add_common(cmd_validate, validate_opts);
    CLI::Option* seed_opt =
        cmd_validate->add_option("--seed", seed_value, "Monte Carlo seed override");

    std::vector<const char*> argv;
    argv.push_back("cavrep");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_rate->parsed()) return run_rate(load_config(rate_opts), rate_opts, out);
        if (cmd_sweep->parsed())
            return run_sweep(load_config(sweep_opts), sweep_opts, axis, all_cells, out);
        if (cmd_compare->parsed())
            return run_compare(load_config(compare_opts), compare_opts, out);
        if (cmd_validate->parsed()) {
            std::optional<std::uint64_t> seed;
            if (seed_opt->count() > 0) seed = seed_value;
            return run_validate(load_config(validate_opts), validate_opts, seed, out);
        }
        throw InternalError("no subcommand dispatched");
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace cavrep::cli
