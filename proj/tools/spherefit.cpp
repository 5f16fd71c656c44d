// spherefit command line: fit, cv, simulate, diagnose, quadrature.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spherefit/designs.hpp"
#include "spherefit/errors.hpp"
#include "spherefit/estimator.hpp"
#include "spherefit/experiments.hpp"
#include "spherefit/kernels.hpp"
#include "spherefit/metrics.hpp"
#include "spherefit/model_selection.hpp"
#include "spherefit/noise.hpp"
#include "spherefit/point_io.hpp"
#include "spherefit/quadrature.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace spherefit;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PointsOptions {
    std::string points;
    std::string sampler;
    int n = 0;
    int t = -1;
    int k = -1;
    std::uint64_t seed = 1;
    std::string data_dir;

    void add(CLI::App* app) {
        auto* p = app->add_option("--points", points, "point file: x y z [value] per line");
        auto* s = app->add_option("--sampler", sampler, "random | tdesign | rotation")
                      ->check(CLI::IsMember({"random", "tdesign", "rotation"}));
        p->excludes(s);
        app->add_option("--n", n, "random sample size");
        app->add_option("--t", t, "t-design strength");
        app->add_option("--k", k, "number of extra rotations of the 120-point base design");
        app->add_option("--seed", seed, "random seed");
        app->add_option("--data-dir", data_dir, "design directory root (default $SPHEREFIT_DATA_DIR or data/)");
    }

    fs::path dir() const { return data_dir.empty() ? default_data_dir() : fs::path(data_dir); }

    // Sampler flags are checked here, before anything is read or computed.
    void validate() const {
        if (points.empty() && sampler.empty()) throw UsageError("give --points or --sampler");
        if (sampler == "random" && n < 1) throw UsageError("--sampler random needs --n > 0");
        if (sampler == "tdesign" && t < 1) throw UsageError("--sampler tdesign needs --t");
        if (sampler == "rotation" && k < 0) throw UsageError("--sampler rotation needs --k");
    }

    PointTable load() const {
        if (!points.empty()) {
            auto table = read_point_table(points);
            table.coords = PointSet(table.coords).coords();
            return table;
        }
        PointSet set = [&] {
            if (sampler == "random") return sample_random(static_cast<std::size_t>(n), seed);
            if (sampler == "tdesign") return load_tdesign(design_file(dir(), t), t);
            return rotated_design(load_tdesign(rotation_base_file(dir()), 15), k);
        }();
        PointTable table;
        table.coords = set.coords();
        return table;
    }
};

struct QuadOptions {
    std::string degree = "auto";
    std::string cache;

    void add(CLI::App* app, const std::string& flag = "--quad-degree") {
        app->add_option(flag, degree, "quadrature degree s or 'auto' (floor(1/mesh norm), then descend)");
        app->add_option("--quad-cache", cache, "read the rule from this file if present, else write it there");
    }

    QuadratureRule rule(const PointSet& points) const {
        if (!cache.empty() && fs::exists(cache)) {
            auto r = read_rule(cache);
            if (r.points.coords() != points.coords())
                throw Error("cached rule in " + cache + " was built for different points");
            return r;
        }
        QuadratureRule r = degree == "auto" ? auto_rule(points, default_degree_hint(points))
                                            : compute_weights(points, parse_degree());
        if (!cache.empty()) write_rule(cache, r);
        return r;
    }

    int parse_degree() const {
        try {
            std::size_t used = 0;
            const int s = std::stoi(degree, &used);
            if (used != degree.size() || s < 0) throw std::invalid_argument(degree);
            return s;
        } catch (const std::exception&) {
            throw UsageError("degree must be 'auto' or a nonnegative integer, got '" + degree + "'");
        }
    }
};

std::vector<double> parse_grid_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("bad grid value '" + item + "'");
        }
    }
    if (out.empty()) throw UsageError("empty --grid");
    return out;
}

LabeledData training_data(const PointTable& table, double delta, double truncation, std::uint64_t seed) {
    PointSet points(table.coords);
    Vector clean = target_function(points);
    if (table.values) return LabeledData(std::move(points), *table.values);
    Vector y = clean;
    if (delta > 0.0) y += gen_noise({delta, truncation, seed, 2}, points.size());
    return LabeledData(std::move(points), std::move(y), std::move(clean));
}

std::optional<FilterSpec> filter_spec(const std::string& filter, std::optional<double> param, std::optional<int> steps) {
    if (filter == "ki") return std::nullopt;
    const auto family = filter_from_name(filter);
    if (steps) {
        if (family != FilterFamily::landweber) throw UsageError("--param-l applies to landweber only");
        return FilterSpec::landweber_steps(*steps);
    }
    if (!param) throw UsageError("--filter " + filter + " needs --param");
    return FilterSpec::make(family, *param);
}

void print_diag(const ConditioningReport& d) {
    if (d.computed()) std::printf("  cnkm %.6g\n", d.cnkm);
    if (d.ill_conditioned) std::printf("  warning: system is ill-conditioned\n");
}

int run_fit(const PointsOptions& po, const QuadOptions& qo, const std::string& kernel_name_, const std::string& filter,
            std::optional<double> param, std::optional<int> steps, double delta, double truncation,
            const std::string& eval_points, const std::string& out, const std::string& model_out) {
    po.validate();
    if (!out.empty() && eval_points.empty()) throw UsageError("--out needs --eval-points");
    const auto spec = filter_spec(filter, param, steps);
    const auto kernel = kernel_from_name(kernel_name_);
    const auto data = training_data(po.load(), delta, truncation, po.seed);

    FittedModel model = [&] {
        if (!spec) return fit_ki(data, kernel);
        return fit_wsf(data, kernel, qo.rule(data.points), *spec);
    }();
    std::printf("fit %s on %zu points", model.method_tag.c_str(), data.size());
    if (!std::isnan(model.param)) std::printf(", param %.6g", model.param);
    std::printf("\n");
    print_diag(model.diagnostics);
    if (!model_out.empty()) write_model(model_out, model);

    if (!eval_points.empty()) {
        if (out.empty()) throw UsageError("--eval-points needs --out");
        const auto table = read_point_table(eval_points);
        const PointSet queries(table.coords);
        const Vector truth = table.values ? *table.values : target_function(queries);
        const Vector pred = evaluate(model, queries);
        write_predictions(out, queries.coords(), truth, pred);
        std::printf("  %zu predictions -> %s (rmse %.6g)\n", queries.size(), out.c_str(), rmse(pred, truth));
    }
    return 0;
}

int run_cv(const PointsOptions& po, const QuadOptions& qo, const std::string& kernel_name_, const std::string& filter,
           const std::string& grid_text, const std::string& val_points, double split, double delta, double truncation,
           const std::string& out) {
    po.validate();
    if (val_points.empty() == !(split > 0.0)) throw UsageError("give exactly one of --val-points or --split");
    const auto family = filter_from_name(filter);
    const auto kernel = kernel_from_name(kernel_name_);
    const auto all = training_data(po.load(), delta, truncation, po.seed);

    std::optional<LabeledData> train, val;
    if (!val_points.empty()) {
        train = all;
        val = training_data(read_point_table(val_points), delta, truncation, po.seed + 1);
    } else {
        auto parts = split_data(all, split, po.seed);
        train = std::move(parts.first);
        val = std::move(parts.second);
    }
    const ParameterGrid grid = grid_text == "auto" ? ParameterGrid::corollary(family, train->size())
                                                   : ParameterGrid::explicit_values(family, parse_grid_list(grid_text));
    const WsfSystem system(kernel, qo.rule(train->points));
    const auto val_rule = auto_rule(val->points, default_degree_hint(val->points));
    const auto cv = select_parameter(system, train->values, val->points.coords(), val->values, val_rule.weights, grid);

    std::printf("cv %s: %zu training, %zu validation points, validation rule degree %d\n", filter.c_str(),
                cv.train_size, cv.val_size, val_rule.degree_s);
    std::printf("  chosen param %.6g (candidate %zu of %zu)\n", cv.chosen_lambda, cv.chosen_index + 1,
                cv.candidates.size());
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) throw Error("cannot write " + out);
        f << "param,weighted_score,chosen\n";
        for (std::size_t i = 0; i < cv.candidates.size(); ++i) {
            f << format_real(cv.candidates[i]) << ','
              << (std::isnan(cv.weighted_scores[i]) ? std::string() : format_real(cv.weighted_scores[i])) << ','
              << (i == cv.chosen_index ? 1 : 0) << '\n';
        }
    }
    return 0;
}

struct SimOptions {
    std::string scenario;
    std::string sampler;
    std::vector<double> deltas;
    std::vector<std::string> filters;
    int trials = -1;
    int threads = 1;
    std::uint64_t seed = 1;
    int test_size = -1;
    int validation_t = -1;
    std::string grid = "auto";
    std::string quad_degree = "auto";
    std::string out;
    std::string predictions;
    std::string data_dir;
    bool timing = false;
    bool no_ki = false;
    bool verbose = false;
    // real data
    std::string train_csv;
    std::string test_csv;
    std::string value_column = "value";
    double split = 0.8;
    double truncation = -1.0;
    bool clamp_zero = false;
    int folds = 5;
};

int run_simulate(const SimOptions& so) {
    if (so.out.empty()) throw UsageError("--out is required");
    std::vector<FilterFamily> families;
    for (const auto& f : so.filters) families.push_back(filter_from_name(f));
    const std::vector<double> grid = so.grid == "auto" ? std::vector<double>{} : parse_grid_list(so.grid);

    std::vector<ExperimentRecord> rows;
    if (so.scenario == "real") {
        if (so.train_csv.empty()) throw UsageError("--scenario real needs --train-csv");
        if (so.deltas.size() != 1) throw UsageError("--scenario real needs exactly one --delta");
        RealDataConfig c;
        c.train_csv = so.train_csv;
        c.test_csv = so.test_csv;
        c.value_column = so.value_column;
        c.split = so.split;
        c.delta = so.deltas.front();
        c.truncation = so.truncation;
        c.clamp_zero = so.clamp_zero;
        c.folds = so.folds;
        if (so.trials > 0) c.trials = so.trials;
        c.seed = so.seed;
        if (!families.empty()) c.families = families;
        c.include_ki = !so.no_ki;
        c.grid = grid;
        c.prediction_prefix = so.predictions;
        c.record_timing = so.timing;
        rows = run_real_data(c);
    } else {
        auto c = default_config(so.scenario);
        if (!so.sampler.empty()) {
            const auto s = sampler_from_name(so.sampler);
            std::erase_if(c.plans, [&](const SamplePlan& p) { return p.sampler != s; });
            if (c.plans.empty()) throw UsageError(so.scenario + " has no " + so.sampler + " configurations");
        }
        if (!so.deltas.empty()) c.deltas = so.deltas;
        if (!families.empty()) c.families = families;
        if (so.no_ki) c.include_ki = false;
        if (so.trials > 0) c.trials = so.trials;
        if (so.test_size > 0) c.test_size = static_cast<std::size_t>(so.test_size);
        if (so.truncation >= 0.0) c.truncation = so.truncation;
        if (so.validation_t > 0) c.validation_t = so.validation_t;
        c.seed = so.seed;
        c.threads = so.threads;
        c.grid = grid;
        if (so.quad_degree != "auto") c.quad_degree = QuadOptions{so.quad_degree, ""}.parse_degree();
        c.data_dir = so.data_dir;
        c.prediction_prefix = so.predictions;
        c.record_timing = so.timing;
        c.verbose = so.verbose;
        rows = run_scenario(c);
    }
    write_records(so.out, rows);
    std::size_t skipped = 0;
    for (const auto& r : rows) skipped += r.method == "skipped";
    std::printf("%s: %zu rows -> %s\n", so.scenario.c_str(), rows.size(), so.out.c_str());
    for (const auto& r : rows) {
        if (r.trial != -1 || r.method == "skipped") continue;
        if (so.scenario == "sim1") continue;
        std::printf("  %-8s n=%-5zu delta=%-5g %-18s rmse %.4g\n", r.sampler.c_str(), r.n_train, r.delta,
                    r.method.c_str(), r.rmse);
    }
    if (skipped > 0) std::printf("  %zu configuration(s) skipped\n", skipped);
    return 0;
}

int run_diagnose(const PointsOptions& po, const QuadOptions& qo, const std::string& kernel_name_,
                 const std::vector<std::string>& filters, const std::vector<double>& params, const std::string& out) {
    po.validate();
    const auto kernel = kernel_from_name(kernel_name_);
    const PointSet points(po.load().coords);
    const auto stats = geometry_stats(points);
    json report;
    report["n"] = points.size();
    report["mesh_norm"] = stats.mesh_norm;
    report["separation_radius"] = stats.separation_radius;
    report["mesh_ratio"] = stats.mesh_ratio;
    std::printf("%zu points: mesh norm %.6g, separation radius %.6g, mesh ratio %.4g\n", points.size(),
                stats.mesh_norm, stats.separation_radius, stats.mesh_ratio);

    const auto rule = qo.rule(points);
    report["quad_degree"] = rule.degree_s;
    report["clamped_weights"] = rule.clamped_count;
    report["exactness_residual"] = verify_exactness(rule, rule.degree_s);
    std::printf("quadrature degree %d, %d clamped weights, exactness residual %.3g\n", rule.degree_s,
                rule.clamped_count, report["exactness_residual"].get<double>());

    if (points.size() > kDiagnosticsLimit)
        std::printf("note: %zu points, eigen diagnostics may take a while\n", points.size());
    const auto ki = conditioning(kernel_matrix(kernel, points));
    report["ki_cnkm"] = ki.cnkm;
    std::printf("kernel matrix: cnkm %.6g, sigma_min %.6g, sigma_max %.6g\n", ki.cnkm, ki.sigma_min, ki.sigma_max);

    const WsfSystem system(kernel, rule);
    report["kappa"] = system.kappa();
    std::printf("weighted matrix: kappa %.6g\n", system.kappa());
    json filt = json::array();
    for (const auto& f : filters) {
        const auto family = filter_from_name(f);
        std::vector<double> values = params;
        if (values.empty()) {
            for (double r : ParameterGrid::corollary(family, points.size()).resolve(system.kappa())) values.push_back(r);
        }
        for (double p : values) {
            const auto spec = FilterSpec::make(family, p);
            const auto d = system.diagnostics(spec);
            filt.push_back({{"filter", f}, {"param", p}, {"cnkm", d.cnkm}});
            std::printf("  %-9s param %-12.6g cnkm %.6g\n", f.c_str(), p, d.cnkm);
        }
    }
    report["filters"] = filt;
    if (!out.empty()) {
        std::ofstream o(out);
        if (!o) throw Error("cannot write " + out);
        o << report.dump(2) << '\n';
    }
    return 0;
}

int run_quadrature(const PointsOptions& po, const QuadOptions& qo, const std::string& out) {
    po.validate();
    if (out.empty()) throw UsageError("--out is required");
    const PointSet points(po.load().coords);
    QuadOptions q = qo;
    q.cache.clear();
    const auto rule = q.rule(points);
    write_rule(out, rule);
    std::printf("degree %d on %zu points, %d clamped weights, exactness residual %.3g -> %s\n", rule.degree_s,
                points.size(), rule.clamped_count, verify_exactness(rule, rule.degree_s), out.c_str());
    return 0;
}

// Flattens a JSON config into command line arguments placed right after the
// subcommand; anything given on the real command line wins.
std::vector<std::string> merge_config(CLI::App& app, std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end() || it + 1 == args.end()) return args;
    const std::string path = *(it + 1);
    args.erase(it, it + 2);
    for (const auto& a : args)
        if (a == "-h" || a == "--help") return args;

    auto sub_pos = std::find_if(args.begin() + 1, args.end(), [&](const std::string& a) {
        return app.get_subcommand_ptr(a) != nullptr;
    });
    if (sub_pos == args.end()) throw UsageError("--config needs a subcommand");
    CLI::App* sub = app.get_subcommand(*sub_pos);

    std::ifstream in(path);
    if (!in) throw Error("cannot read config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what(), 0);
    }
    if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
    json flat = json::object();
    for (auto& [key, value] : doc.items())
        if (!value.is_object()) flat[key] = value;
    if (doc.contains(sub->get_name()) && doc[sub->get_name()].is_object())
        for (auto& [key, value] : doc[sub->get_name()].items()) flat[key] = value;

    std::vector<std::string> extra;
    for (auto& [key, value] : flat.items()) {
        const std::string flag = "--" + key;
        if (sub->get_option_no_throw(flag) == nullptr) throw UsageError("config key '" + key + "' is not a flag of " + sub->get_name());
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        if (value.is_boolean()) {
            if (value.get<bool>()) extra.push_back(flag);
        } else if (value.is_array()) {
            for (const auto& v : value) {
                extra.push_back(flag);
                extra.push_back(text(v));
            }
        } else {
            extra.push_back(flag);
            extra.push_back(text(value));
        }
    }
    args.insert(sub_pos + 1, extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted spectral filter fitting on the sphere", "spherefit"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with flag values; command line flags override it");

    std::string kernel = "wendland_4_1";
    std::string filter = "tikhonov";
    std::optional<double> param;
    std::optional<int> param_l;
    double delta = 0.0;
    double truncation = 2.5;
    std::string eval_points, out, model_out, grid = "auto", val_points;
    double split = 0.0;

    PointsOptions fit_po, cv_po, diag_po, quad_po;
    QuadOptions fit_qo, cv_qo, diag_qo, quad_qo;

    auto* fit = app.add_subcommand("fit", "fit KI or a WSF estimator and optionally evaluate it");
    fit_po.add(fit);
    fit_qo.add(fit);
    fit->add_option("--kernel", kernel, "kernel name")->check(CLI::IsMember(kernel_names()));
    fit->add_option("--filter", filter, "ki | tikhonov | landweber | cutoff")
        ->check(CLI::IsMember({"ki", "tikhonov", "landweber", "cutoff"}));
    fit->add_option("--param", param, "filter parameter (mu, 1/l or nu)");
    fit->add_option("--param-l", param_l, "landweber step count")->check(CLI::PositiveNumber);
    fit->add_option("--delta", delta, "noise level added to synthetic targets when the points carry no values");
    fit->add_option("--truncation", truncation, "noise truncation bound");
    fit->add_option("--eval-points", eval_points, "query point file");
    fit->add_option("--out", out, "prediction CSV (x,y,z,truth,prediction)");
    fit->add_option("--model-out", model_out, "write the fitted centers and coefficients");

    std::string cv_filter = "tikhonov";
    auto* cv = app.add_subcommand("cv", "choose a filter parameter by weighted validation");
    cv_po.add(cv);
    cv_qo.add(cv);
    cv->add_option("--kernel", kernel, "kernel name")->check(CLI::IsMember(kernel_names()));
    cv->add_option("--filter", cv_filter, "tikhonov | landweber | cutoff")
        ->check(CLI::IsMember({"tikhonov", "landweber", "cutoff"}));
    cv->add_option("--grid", grid, "'auto' or a comma separated list of parameters");
    auto* vp = cv->add_option("--val-points", val_points, "validation point file");
    auto* sp = cv->add_option("--split", split, "training fraction for a seeded split")->check(CLI::Range(0.0, 1.0));
    vp->excludes(sp);
    cv->add_option("--delta", delta, "noise level for synthetic targets");
    cv->add_option("--truncation", truncation, "noise truncation bound");
    cv->add_option("--out", out, "score table CSV");

    SimOptions so;
    auto* sim = app.add_subcommand("simulate", "run a simulation scenario or the real-data pipeline");
    sim->add_option("--scenario", so.scenario, "sim1 .. sim6 or real")->required()->check(
        CLI::IsMember({"sim1", "sim2", "sim3", "sim4", "sim5", "sim6", "real"}));
    sim->add_option("--sampler", so.sampler, "keep only configurations of this sampler")
        ->check(CLI::IsMember({"random", "tdesign", "rotation"}));
    sim->add_option("--delta", so.deltas, "noise levels (repeatable)");
    sim->add_option("--filter", so.filters, "filter families (repeatable)")
        ->check(CLI::IsMember({"tikhonov", "landweber", "cutoff"}));
    sim->add_flag("--no-ki", so.no_ki, "skip kernel interpolation rows");
    sim->add_option("--trials", so.trials, "trials per configuration")->check(CLI::PositiveNumber);
    sim->add_option("--threads", so.threads, "worker threads")->check(CLI::PositiveNumber);
    sim->add_option("--seed", so.seed, "base seed; trial i uses seed + i");
    sim->add_option("--test-size", so.test_size, "number of test points")->check(CLI::PositiveNumber);
    sim->add_option("--validation-t", so.validation_t, "strength of the validation t-design")->check(CLI::PositiveNumber);
    sim->add_option("--grid", so.grid, "'auto' or a comma separated list of parameters");
    sim->add_option("--quad-degree", so.quad_degree, "quadrature degree hint or 'auto'");
    sim->add_option("--truncation", so.truncation, "noise truncation bound");
    sim->add_option("--out", so.out, "results CSV");
    sim->add_option("--predictions", so.predictions, "prefix for prediction dumps (sim6, real)");
    sim->add_option("--data-dir", so.data_dir, "design directory root");
    sim->add_flag("--timing", so.timing, "record wall-clock times (output is then not reproducible)");
    sim->add_flag("-v,--verbose", so.verbose, "progress on stderr");
    sim->add_option("--train-csv", so.train_csv, "real data: lat_deg,lon_deg,<value> CSV");
    sim->add_option("--test-csv", so.test_csv, "real data: separate test CSV");
    sim->add_option("--value-column", so.value_column, "real data: value column name");
    sim->add_option("--split", so.split, "real data: training fraction when no test CSV")->check(CLI::Range(0.0, 1.0));
    sim->add_flag("--clamp-zero", so.clamp_zero, "real data: clamp predictions at zero");
    sim->add_option("--folds", so.folds, "real data: CV folds")->check(CLI::Range(2, 1000));

    std::vector<std::string> diag_filters{"tikhonov", "landweber", "cutoff"};
    std::vector<double> diag_params;
    auto* diag = app.add_subcommand("diagnose", "geometry, quadrature and conditioning report");
    diag_po.add(diag);
    diag_qo.add(diag);
    diag->add_option("--kernel", kernel, "kernel name")->check(CLI::IsMember(kernel_names()));
    diag->add_option("--filter", diag_filters, "filter families (repeatable)")
        ->check(CLI::IsMember({"tikhonov", "landweber", "cutoff"}));
    diag->add_option("--param", diag_params, "parameters (repeatable, default: auto grid)");
    diag->add_option("--out", out, "JSON report");

    auto* quad = app.add_subcommand("quadrature", "compute a positive quadrature rule");
    quad_po.add(quad);
    quad_qo.add(quad, "--degree");
    quad->add_option("--out", out, "rule file (x y z w rows, '# degree=' header)");

    std::vector<std::string> args(argv, argv + argc);
    try {
        args = merge_config(app, args);
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        if (*fit) return run_fit(fit_po, fit_qo, kernel, filter, param, param_l, delta, truncation, eval_points, out, model_out);
        if (*cv) return run_cv(cv_po, cv_qo, kernel, cv_filter, grid, val_points, split, delta, truncation, out);
        if (*sim) return run_simulate(so);
        if (*diag) return run_diagnose(diag_po, diag_qo, kernel, diag_filters, diag_params, out);
        if (*quad) return run_quadrature(quad_po, quad_qo, out);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
