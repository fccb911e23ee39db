#include "blocklcs/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "blocklcs/block_alignment.hpp"
#include "blocklcs/blockmodel.hpp"
#include "blocklcs/bounds.hpp"
#include "blocklcs/errors.hpp"
#include "blocklcs/events.hpp"
#include "blocklcs/lcs.hpp"
#include "blocklcs/modification.hpp"
#include "blocklcs/optimizer.hpp"
#include "blocklcs/rng.hpp"

namespace blocklcs::cli {

using json = nlohmann::ordered_json;

namespace {

json config_json(const ExperimentConfig& c) {
    json j;
    j["command"] = c.command;
    if (!c.experiment.empty()) j["experiment"] = c.experiment;
    j["l"] = c.l;
    j["n"] = c.n;
    j["n_grid"] = c.n_grid;
    j["replicates"] = c.replicates;
    j["seed"] = c.seed;
    j["q0"] = c.q0 ? json(*c.q0) : json(nullptr);
    j["delta"] = c.delta;
    j["q"] = c.q ? json(*c.q) : json(nullptr);
    j["gamma"] = c.gamma ? json(*c.gamma) : json(nullptr);
    j["grid_step"] = c.grid_step;
    j["refine"] = c.refine;
    j["format"] = c.format;
    j["jobs"] = c.jobs;
    j["enum_guard"] = c.enum_guard;
    j["pair_budget"] = c.pair_budget;
    j["samples"] = c.samples;
    j["alignment_events"] = c.alignment_events;
    j["bootstrap"] = c.bootstrap;
    j["x"] = c.x;
    j["y"] = c.y;
    j["grow"] = c.grow ? json(*c.grow) : json(nullptr);
    j["shrink"] = c.shrink ? json(*c.shrink) : json(nullptr);
    j["show_alignment"] = c.show_alignment;
    return j;
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

template <typename T>
void read_field(const json& j, const char* key, std::optional<T>& out) {
    if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

json document(const ExperimentConfig& c) {
    json d;
    d["schema_version"] = kSchemaVersion;
    d["config"] = config_json(c);
    return d;
}

json nan_to_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

class CsvSink {
public:
    CsvSink(std::ostream& primary, const ExperimentConfig& c, const std::string& path)
        : primary_(primary), to_primary_(c.format == "csv") {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw IoError("cannot open CSV output '" + path + "'");
        }
    }
    void line(const std::string& s) {
        if (to_primary_) primary_ << s << '\n';
        if (file_.is_open()) file_ << s << '\n';
    }

private:
    std::ostream& primary_;
    bool to_primary_;
    std::ofstream file_;
};

void emit_json(std::ostream& out, const ExperimentConfig& c, const json& doc) {
    if (c.format == "json") out << doc.dump(2) << '\n';
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void validate(const ExperimentConfig& c) {
    if (c.format != "json" && c.format != "csv") throw InvalidParameter("format must be json or csv");
    if (c.l < 2) throw InvalidParameter("l must be >= 2");
}

BlockSequence bits_arg(const std::string& bits, const char* name) {
    if (bits.empty()) throw InvalidParameter(std::string("--") + name + " is required");
    return BlockSequence::from_bits(bits);
}

json alignment_json(const Alignment& a) {
    json arr = json::array();
    for (const auto& [i, j] : a.pairs) arr.push_back({i, j});
    return arr;
}

json decomposition_json(const BlockDecomposition& d) {
    json j;
    j["p"] = d.p ? json(*d.p) : json(nullptr);
    j["one_to_one_pairs"] = d.one_to_one_pairs;
    j["q1"] = d.q1;
    j["q2"] = d.q2;
    j["delta1"] = d.delta1;
    j["delta2"] = d.delta2;
    j["x_blocks"] = d.x_blocks;
    j["y_blocks"] = d.y_blocks;
    json classes;
    for (Side side : {Side::X, Side::Y}) {
        json arr = json::array();
        for (const auto& cls : d.classes(side)) arr.push_back({{"kind", to_string(cls.kind)}, {"partners", cls.partners}});
        classes[side == Side::X ? "x" : "y"] = arr;
    }
    j["classes"] = classes;
    return j;
}

json check_json(const StructureCheck& s) {
    json w = json::array();
    for (const auto& b : s.witness) w.push_back({{"side", b.side == Side::X ? "x" : "y"}, {"block", b.block}});
    return {{"ok", s.ok}, {"witness", w}};
}

int cmd_gen(const ExperimentConfig& c, std::ostream& out, const std::string& csv_path) {
    if (c.n < 1) throw InvalidParameter("n must be >= 1");
    CsvSink csv(out, c, csv_path);
    csv.line("replicate,role,seed,sequence");
    json doc = document(c);
    json seqs = json::array();
    for (std::size_t r = 0; r < c.replicates; ++r) {
        const ReplicateSeeds s = replicate_seeds(c.seed, r);
        for (auto [role, seed] : {std::pair{"x", s.x}, std::pair{"y", s.y}}) {
            const std::string text = to_text(sample_block_sequence(c.l, c.n, seed));
            csv.line(std::to_string(r) + ',' + role + ',' + std::to_string(seed) + ',' + text);
            seqs.push_back({{"replicate", r}, {"role", role}, {"seed", seed}, {"sequence", text}});
        }
    }
    doc["sequences"] = seqs;
    emit_json(out, c, doc);
    return kOk;
}

int cmd_lcs(const ExperimentConfig& c, std::ostream& out, const std::string& csv_path) {
    const BlockSequence x = bits_arg(c.x, "x");
    const BlockSequence y = bits_arg(c.y, "y");
    const std::size_t len = lcs_length_fast(c.x, c.y);
    CsvSink csv(out, c, csv_path);
    csv.line("lcs");
    csv.line(std::to_string(len));
    json doc = document(c);
    doc["lcs"] = len;
    if (c.show_alignment) doc["alignment"] = alignment_json(leftmost_optimal_alignment(c.x, c.y));
    (void)x;
    (void)y;
    emit_json(out, c, doc);
    return kOk;
}

int cmd_analyze(const ExperimentConfig& c, std::ostream& out, const std::string& csv_path) {
    const BlockSequence x = bits_arg(c.x, "x");
    const BlockSequence y = bits_arg(c.y, "y");
    const Alignment a = leftmost_optimal_alignment(c.x, c.y);
    const BlockDecomposition d = decompose(x, y, a, c.l);
    const StructureCheck adj = check_no_adjacent_leftout(d);
    const StructureCheck mm = check_no_many_to_many(d);

    CsvSink csv(out, c, csv_path);
    csv.line("key,value");
    std::istringstream report(to_report(d));
    for (std::string line; std::getline(report, line);) {
        const auto eq = line.find('=');
        csv.line(line.substr(0, eq) + ',' + line.substr(eq + 1));
    }
    csv.line("lcs," + std::to_string(a.score()));
    csv.line(std::string("no_adjacent_leftout,") + (adj.ok ? "true" : "false"));
    csv.line(std::string("no_many_to_many,") + (mm.ok ? "true" : "false"));

    json doc = document(c);
    doc["lcs"] = a.score();
    doc["decomposition"] = decomposition_json(d);
    doc["no_adjacent_leftout"] = check_json(adj);
    doc["no_many_to_many"] = check_json(mm);
    if (d.p) {
        try {
            const LowerBound lb = alignment_lower_bound(d);
            doc["lower_bound"] = {{"value", lb.value}, {"q", lb.q}, {"q_approximated", lb.q_approximated}};
        } catch (const UndefinedValue& e) {
            doc["lower_bound"] = {{"error", e.what()}};
        }
    }
    if (c.show_alignment) doc["alignment"] = alignment_json(a);
    emit_json(out, c, doc);
    return kOk;
}

int cmd_modify(const ExperimentConfig& c, std::ostream& out, const std::string& csv_path) {
    const BlockSequence x = bits_arg(c.x, "x");
    const BlockSequence y = bits_arg(c.y, "y");
    json doc = document(c);
    CsvSink csv(out, c, csv_path);
    if (c.grow || c.shrink) {
        if (!c.grow || !c.shrink) throw InvalidParameter("--grow and --shrink must be given together");
        const BlockSequence mod = apply_modification(x, c.l, *c.grow, *c.shrink);
        const std::string bits = materialize(mod);
        const long delta = static_cast<long>(lcs_length_fast(bits, c.y)) - static_cast<long>(lcs_length_fast(c.x, c.y));
        csv.line("grow,shrink,modified,delta_L");
        csv.line(std::to_string(*c.grow) + ',' + std::to_string(*c.shrink) + ',' + bits + ',' + std::to_string(delta));
        doc["modified"] = bits;
        doc["delta_L"] = delta;
        emit_json(out, c, doc);
        return kOk;
    }
    ConditionalOptions opts;
    opts.pair_budget = c.pair_budget;
    opts.samples = c.samples;
    opts.seed = c.seed;
    opts.jobs = c.jobs;
    const ConditionalEstimate est = conditional_expectation(x, y, c.l, opts);
    csv.line("E,stderr,exact,eligible_pairs,L_n");
    csv.line(fmt(est.value) + ',' + fmt(est.standard_error) + ',' + (est.exact ? "true" : "false") + ',' +
             std::to_string(est.eligible_pairs) + ',' + std::to_string(est.base_lcs));
    doc["expectation"] = est.value;
    doc["exact_value"] = est.exact_value ? json(est.exact_value->to_string()) : json(nullptr);
    doc["stderr"] = nan_to_null(est.standard_error);
    doc["exact"] = est.exact;
    doc["eligible_pairs"] = est.eligible_pairs;
    doc["L_n"] = est.base_lcs;
    if (est.exact) {
        json outcomes = json::array();
        for (const auto& o : enumerate_modifications(x, y, c.l, EnumerationMethod::Sweep, c.jobs))
            outcomes.push_back({o.grow_index, o.shrink_index, o.delta_L});
        doc["outcomes"] = outcomes;
    }
    emit_json(out, c, doc);
    return kOk;
}

int experiment_bias(const ExperimentConfig& c, std::ostream& out, const std::string& csv_path) {
    BiasConfig bc;
    bc.l = c.l;
    bc.n = c.n;
    bc.replicates = c.replicates;
    bc.seed = c.seed;
    bc.conditional.pair_budget = c.pair_budget;
    bc.conditional.samples = c.samples;
    bc.jobs = c.jobs;
    const BiasRun run = run_bias(bc);
    CsvSink csv(out, c, csv_path);
    csv.line(bias_csv_header());
    for (const auto& r : run.records) csv.line(to_csv_row(r));
    json doc = document(c);
    json nonpositive = json::array();
    for (const auto& r : run.records)
        if (r.status != "undefined-conditional" && !(r.expectation > 0.0)) nonpositive.push_back(r.replicate);
    doc["summary"] = {{"replicates", c.replicates},   {"defined", run.defined},
                      {"undefined", run.undefined},   {"positive", run.positive},
                      {"positive_fraction", run.positive_fraction}, {"mean_expectation", run.mean_expectation},
                      {"nonpositive_replicates", nonpositive}};
    emit_json(out, c, doc);
    return kOk;
}

int experiment_variance(const ExperimentConfig& c, std::ostream& out, const std::string& csv_path) {
    const VarianceReport rep = estimate_variance(c.l, c.n_grid, c.replicates, c.seed, c.jobs, c.bootstrap);
    CsvSink csv(out, c, csv_path);
    csv.line("n,seed,mean,variance,variance_over_n,variance_ci_lo,variance_ci_hi");
    json rows = json::array();
    for (const auto& r : rep.rows) {
        csv.line(std::to_string(r.n) + ',' + std::to_string(r.seed) + ',' + fmt(r.mean) + ',' + fmt(r.variance) + ',' +
                 fmt(r.variance_over_n) + ',' + fmt(r.variance_ci.lo) + ',' + fmt(r.variance_ci.hi));
        rows.push_back({{"n", r.n},
                        {"seed", r.seed},
                        {"mean", r.mean},
                        {"variance", r.variance},
                        {"variance_over_n", r.variance_over_n},
                        {"variance_ci", {r.variance_ci.lo, r.variance_ci.hi}}});
    }
    json doc = document(c);
    doc["rows"] = rows;
    doc["slope"] = rep.slope;
    doc["slope_ci"] = {rep.slope_ci.lo, rep.slope_ci.hi};
    doc["ratio_spread"] = nan_to_null(rep.ratio_spread);
    emit_json(out, c, doc);
    return kOk;
}

int experiment_gamma(const ExperimentConfig& c, std::ostream& out, const std::string& csv_path) {
    const GammaEstimate g = estimate_gamma(c.l, c.n, c.replicates, c.seed, c.jobs);
    CsvSink csv(out, c, csv_path);
    csv.line("replicate,L_n,ratio");
    for (std::size_t r = 0; r < g.ratios.size(); ++r)
        csv.line(std::to_string(r) + ',' + fmt(std::round(g.ratios[r] * static_cast<double>(c.n))) + ',' +
                 fmt(g.ratios[r]));
    json doc = document(c);
    const double bound = gamma_lower_bound(c.l);
    doc["mean"] = g.mean;
    doc["stderr"] = g.standard_error;
    doc["gamma_lower_bound"] = bound;
    doc["consistent"] = g.mean >= bound - 3.0 * g.standard_error;
    emit_json(out, c, doc);
    return kOk;
}

int experiment_events(const ExperimentConfig& c, std::ostream& out, const std::string& csv_path) {
    EventsConfig ec;
    ec.l = c.l;
    ec.n = c.n;
    ec.replicates = c.replicates;
    ec.seed = c.seed;
    ec.delta = c.delta;
    ec.q = c.q.value_or(-1.0);
    ec.alignment_events = c.alignment_events;
    ec.alignment.enumeration_guard = c.enum_guard;
    ec.jobs = c.jobs;
    const EventsRun run = run_events(ec);
    CsvSink csv(out, c, csv_path);
    csv.line("replicate,seed_x,seed_y,event,holds");
    for (const auto& r : run.rows)
        csv.line(std::to_string(r.replicate) + ',' + std::to_string(r.seed_x) + ',' + std::to_string(r.seed_y) + ',' +
                 r.event + ',' + (r.holds ? "1" : "0"));
    const double n = static_cast<double>(c.n);
    json reports = json::array();
    for (const auto& rep : run.reports) {
        json j;
        j["event"] = rep.event_name;
        j["parameters"] = rep.parameters;
        j["replicates"] = rep.replicates;
        j["holds"] = rep.holds;
        j["hold_frequency"] = rep.hold_frequency;
        j["failure_replicates"] = rep.failures;
        if (!rep.mode.empty()) j["mode"] = rep.mode;
        std::optional<BoundValue> tail;
        if (rep.event_name == "C") tail = event_C_tail(n, c.l);
        if (rep.event_name == "D") tail = event_D_tail(n, c.l, c.delta);
        if (rep.event_name == "G") tail = event_G_tail(n, c.l, c.delta);
        if (tail) {
            j["tail_bound"] = tail->available ? json(tail->value) : json(nullptr);
            j["tail_bound_log"] = tail->available ? json(tail->log_value) : json(nullptr);
            j["tail_available"] = tail->available;
        }
        reports.push_back(j);
    }
    json doc = document(c);
    doc["events"] = reports;
    emit_json(out, c, doc);
    return kOk;
}

json point_json(const FeasiblePoint& fp) { return {{"q", fp.q}, {"p", fp.p}}; }

int cmd_optimize(const ExperimentConfig& c, std::ostream& out, const std::string& csv_path) {
    MinimizeOptions opts;
    opts.grid_step = c.grid_step;
    opts.refine = c.refine;
    opts.jobs = c.jobs;
    const double q0 = c.q0.value_or(default_q0(c.l));
    const OptimizationResult r = minimize(c.l, q0, opts);
    const bool feasible = r.status != OptimizationStatus::Infeasible;

    CsvSink csv(out, c, csv_path);
    csv.line("key,value");
    csv.line("status," + std::string(to_string(r.status)));
    csv.line("q0," + fmt(q0));
    if (feasible) {
        csv.line("minimum," + fmt(r.minimum));
        csv.line("epsilon," + fmt(r.minimum / 2.0));
        csv.line("argmin_q," + fmt(r.argmin.q));
        for (std::size_t i = 0; i < 9; ++i)
            csv.line("argmin_p_" + std::to_string(c.l - 1 + static_cast<int>(i / 3)) + '_' +
                     std::to_string(c.l - 1 + static_cast<int>(i % 3)) + ',' + fmt(r.argmin.p[i / 3][i % 3]));
    }
    if (r.oracle_minimum) csv.line("oracle_minimum," + fmt(*r.oracle_minimum));
    csv.line("oracle_gap," + fmt(r.oracle_gap));

    json doc = document(c);
    json res;
    res["status"] = to_string(r.status);
    res["q0"] = q0;
    res["grid_step"] = r.grid_step;
    res["minimum"] = feasible ? json(r.minimum) : json(nullptr);
    res["epsilon"] = feasible ? json(r.minimum / 2.0) : json(nullptr);
    res["argmin"] = feasible ? point_json(r.argmin) : json(nullptr);
    res["oracle_minimum"] = r.oracle_minimum ? json(*r.oracle_minimum) : json(nullptr);
    res["oracle_argmin"] = r.oracle_argmin ? point_json(*r.oracle_argmin) : json(nullptr);
    res["refined_minimum"] = r.refined_minimum ? json(*r.refined_minimum) : json(nullptr);
    res["oracle_gap"] = r.oracle_gap;
    res["lattice_points"] = r.lattice_points;
    res["feasible_lattice_points"] = r.feasible_lattice_points;
    if (feasible)
        res["slacks"] = {{"q_lower", r.slacks.q_lower},     {"q_upper", r.slacks.q_upper},
                         {"row_short", r.slacks.row_short}, {"row_long", r.slacks.row_long},
                         {"min_entry", r.slacks.min_entry}, {"sum_error", r.slacks.sum_error},
                         {"entropy", r.slacks.entropy}};
    doc["result"] = res;
    emit_json(out, c, doc);
    if (!feasible) return kInfeasible;
    return r.minimum > 0.0 ? kOk : kNegativeResult;
}

int cmd_bounds(const ExperimentConfig& c, std::ostream& out, const std::string& csv_path) {
    const auto bounds = all_bounds(static_cast<double>(c.n), c.l, c.delta, c.gamma);
    CsvSink csv(out, c, csv_path);
    csv.line("name,value,log_value,available,formula");
    json arr = json::array();
    for (const auto& b : bounds) {
        csv.line(b.name + ',' + fmt(b.value) + ',' + fmt(b.log_value) + ',' + (b.available ? "true" : "false") + ",\"" +
                 b.formula + '"');
        arr.push_back({{"name", b.name},
                       {"parameters", b.parameters},
                       {"value", nan_to_null(b.value)},
                       {"log_value", b.available ? nan_to_null(b.log_value) : json(nullptr)},
                       {"available", b.available},
                       {"formula", b.formula}});
    }
    json doc = document(c);
    doc["bounds"] = arr;
    emit_json(out, c, doc);
    return kOk;
}

}  // namespace

std::string to_json(const ExperimentConfig& c) { return config_json(c).dump(2); }

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidParameter(std::string("config is not valid JSON: ") + e.what());
    }
    if (j.contains("config")) j = j.at("config");
    ExperimentConfig c;
    try {
        read_field(j, "command", c.command);
        read_field(j, "experiment", c.experiment);
        read_field(j, "l", c.l);
        read_field(j, "n", c.n);
        read_field(j, "n_grid", c.n_grid);
        read_field(j, "replicates", c.replicates);
        read_field(j, "seed", c.seed);
        read_field(j, "q0", c.q0);
        read_field(j, "delta", c.delta);
        read_field(j, "q", c.q);
        read_field(j, "gamma", c.gamma);
        read_field(j, "grid_step", c.grid_step);
        read_field(j, "refine", c.refine);
        read_field(j, "format", c.format);
        read_field(j, "jobs", c.jobs);
        read_field(j, "enum_guard", c.enum_guard);
        read_field(j, "pair_budget", c.pair_budget);
        read_field(j, "samples", c.samples);
        read_field(j, "alignment_events", c.alignment_events);
        read_field(j, "bootstrap", c.bootstrap);
        read_field(j, "x", c.x);
        read_field(j, "y", c.y);
        read_field(j, "grow", c.grow);
        read_field(j, "shrink", c.shrink);
        read_field(j, "show_alignment", c.show_alignment);
    } catch (const json::exception& e) {
        throw InvalidParameter(std::string("config field has the wrong type: ") + e.what());
    }
    if (c.command.empty()) throw InvalidParameter("config has no command");
    return c;
}

int execute(const ExperimentConfig& c, std::ostream& out, std::ostream& err, const std::string& csv_path) {
    try {
        validate(c);
        if (c.command == "gen") return cmd_gen(c, out, csv_path);
        if (c.command == "lcs") return cmd_lcs(c, out, csv_path);
        if (c.command == "analyze") return cmd_analyze(c, out, csv_path);
        if (c.command == "modify") return cmd_modify(c, out, csv_path);
        if (c.command == "optimize") return cmd_optimize(c, out, csv_path);
        if (c.command == "bounds") return cmd_bounds(c, out, csv_path);
        if (c.command == "experiment") {
            if (c.experiment == "bias") return experiment_bias(c, out, csv_path);
            if (c.experiment == "variance") return experiment_variance(c, out, csv_path);
            if (c.experiment == "gamma") return experiment_gamma(c, out, csv_path);
            if (c.experiment == "events") return experiment_events(c, out, csv_path);
            throw InvalidParameter("unknown experiment '" + c.experiment + "'");
        }
        throw InvalidParameter("unknown command '" + c.command + "'");
    } catch (const InvalidParameter& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const GuardExceeded& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvalidModification& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Block-model LCS workbench: simulation, alignment statistics and the bias optimization"};
    app.set_version_flag("--version", "blocklcs 1.0");
    ExperimentConfig c;
    std::string config_path, output_path, csv_path;
    app.add_option("--config", config_path, "Re-run the configuration echoed in an earlier JSON output");
    app.add_option("--output", output_path, "Write the main output to this file instead of stdout");
    app.add_option("--csv-output", csv_path, "Also write per-row CSV to this file");

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--jobs", c.jobs, "Worker threads (0 = all hardware threads)");
    };
    auto model = [&](CLI::App* sub) {
        sub->add_option("--l", c.l, "Mean block length l (lengths uniform on {l-1, l, l+1})");
        sub->add_option("--n", c.n, "Sequence length in bits");
        sub->add_option("--replicates", c.replicates, "Number of (X, Y) replicates");
        sub->add_option("--seed", c.seed, "Master seed");
    };
    auto pair = [&](CLI::App* sub) {
        sub->add_option("--x", c.x, "First bit string")->required();
        sub->add_option("--y", c.y, "Second bit string")->required();
    };

    auto* gen = app.add_subcommand("gen", "Write sampled block sequences, one 'first;lengths;n' line each");
    model(gen);
    common(gen);

    auto* lcs = app.add_subcommand("lcs", "LCS length of two bit strings");
    pair(lcs);
    lcs->add_flag("--alignment", c.show_alignment, "Include the leftmost optimal alignment");
    common(lcs);

    auto* analyze = app.add_subcommand("analyze", "Block decomposition of the leftmost optimal alignment");
    pair(analyze);
    analyze->add_option("--l", c.l, "Mean block length l");
    analyze->add_flag("--alignment", c.show_alignment, "Include the alignment pairs");
    common(analyze);

    auto* modify = app.add_subcommand("modify", "Block modification of x and its effect on the LCS");
    pair(modify);
    modify->add_option("--l", c.l, "Mean block length l");
    modify->add_option("--grow", c.grow, "Index of the (l-1)-block to grow");
    modify->add_option("--shrink", c.shrink, "Index of the (l+1)-block to shrink");
    modify->add_option("--pair-budget", c.pair_budget, "Enumerate exactly up to this many pairs");
    modify->add_option("--samples", c.samples, "Sample count above the budget");
    modify->add_option("--seed", c.seed, "Seed for sampling above the budget");
    common(modify);

    auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiments");
    experiment->require_subcommand(1);
    auto* bias = experiment->add_subcommand("bias", "Exact conditional expectation of the modification");
    model(bias);
    bias->add_option("--pair-budget", c.pair_budget, "Enumerate exactly up to this many pairs");
    bias->add_option("--samples", c.samples, "Sample count above the budget");
    common(bias);
    auto* variance = experiment->add_subcommand("variance", "VAR[L_n] over an n grid");
    model(variance);
    variance->add_option("--n-grid", c.n_grid, "Comma-separated sequence lengths")->delimiter(',');
    variance->add_option("--bootstrap", c.bootstrap, "Bootstrap resamples");
    common(variance);
    auto* gamma = experiment->add_subcommand("gamma", "Mean of L_n/n");
    model(gamma);
    common(gamma);
    auto* events = experiment->add_subcommand("events", "Frequencies of the events C, D, G (and F, J)");
    model(events);
    events->add_option("--delta", c.delta, "delta for D, G and J");
    events->add_option("--q", c.q, "Threshold of F (default (4/9)/(l-1) + 0.02)");
    events->add_flag("--alignment-events", c.alignment_events, "Also evaluate F and J");
    events->add_option("--enum-guard", c.enum_guard, "Enumerate all optimal alignments up to this n");
    common(events);

    auto* optimize = app.add_subcommand("optimize", "Minimize the bias bound under the entropy condition");
    optimize->add_option("--l", c.l, "Mean block length l");
    optimize->add_option("--q0", c.q0, "Left-out bound q0 (default (4/9)/(l-1))");
    optimize->add_option("--grid-step", c.grid_step, "Lattice step of the grid oracle");
    bool no_refine = false;
    optimize->add_flag("--no-refine", no_refine, "Skip the Nelder-Mead refinement");
    common(optimize);

    auto* bounds = app.add_subcommand("bounds", "Closed-form bounds");
    bounds->add_option("--l", c.l, "Mean block length l");
    bounds->add_option("--n", c.n, "Sequence length");
    bounds->add_option("--delta", c.delta, "delta");
    bounds->add_option("--gamma", c.gamma, "gamma_l estimate for the left-out bound");
    common(bounds);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            err << "config error: cannot read '" << config_path << "'\n";
            return kConfigError;
        }
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            c = config_from_json(buf.str());
        } catch (const Error& e) {
            err << "config error: " << e.what() << '\n';
            return kConfigError;
        }
    } else {
        const auto subs = app.get_subcommands();
        if (subs.empty()) {
            err << app.help();
            return kConfigError;
        }
        c.command = subs.front()->get_name();
        if (c.command == "experiment") c.experiment = experiment->get_subcommands().front()->get_name();
        if (c.command == "optimize") c.refine = !no_refine;
    }

    if (output_path.empty()) return execute(c, out, err, csv_path);
    std::ofstream file(output_path);
    if (!file) {
        err << "error: cannot open output '" << output_path << "'\n";
        return kRuntimeError;
    }
    return execute(c, file, err, csv_path);
}

}  // namespace blocklcs::cli
