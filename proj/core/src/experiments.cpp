#include "spherefit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "spherefit/designs.hpp"
#include "spherefit/errors.hpp"
#include "spherefit/estimator.hpp"
#include "spherefit/kernels.hpp"
#include "spherefit/metrics.hpp"
#include "spherefit/model_selection.hpp"
#include "spherefit/noise.hpp"
#include "spherefit/quadrature.hpp"
#include "spherefit/random.hpp"
#include "spherefit/real_data.hpp"

namespace spherefit {

std::string sampler_name(Sampler s) {
    switch (s) {
        case Sampler::random:
            return "random";
        case Sampler::tdesign:
            return "tdesign";
        case Sampler::rotation:
            return "rotation";
    }
    return "unknown";
}

Sampler sampler_from_name(std::string_view name) {
    if (name == "random") return Sampler::random;
    if (name == "tdesign") return Sampler::tdesign;
    if (name == "rotation") return Sampler::rotation;
    throw Error("unknown sampler '" + std::string(name) + "'");
}

TestSet make_testset(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error("test set must not be empty");
    RandomStream rng(seed, 3);
    Matrix x(3, static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        Eigen::Vector3d v;
        do {
            for (int r = 0; r < 3; ++r) v[r] = rng.uniform(-1.0, 1.0);
        } while (v.squaredNorm() == 0.0);
        x.col(j) = v / v.norm();
    }
    PointSet points(std::move(x));
    Vector truth = target_function(points);
    return TestSet{std::move(points), std::move(truth)};
}

std::vector<std::string> scenario_names() { return {"sim1", "sim2", "sim3", "sim4", "sim5", "sim6"}; }

ScenarioConfig default_config(const std::string& scenario) {
    ScenarioConfig c;
    c.scenario = scenario;
    const std::vector<int> ts{7, 15, 31, 47};
    auto add_tdesigns = [&] {
        for (int t : ts) c.plans.push_back({Sampler::tdesign, t});
    };
    auto add_randoms = [&] {
        for (int t : ts) c.plans.push_back({Sampler::random, static_cast<int>(shipped_design_size(default_data_dir(), t))});
    };
    if (scenario == "sim1") {
        c.plans = {{Sampler::rotation, 9}, {Sampler::tdesign, 47}, {Sampler::random, 1130}};
        c.deltas = {0.5};
    } else if (scenario == "sim2") {
        c.plans = {{Sampler::tdesign, 47}, {Sampler::random, 1130}};
        c.deltas = {0.3, 0.1, 0.01};
    } else if (scenario == "sim3") {
        c.plans = {{Sampler::tdesign, 47}, {Sampler::random, 1130}};
        c.deltas = {0.5};
        c.include_ki = false;
        c.validation_t = 47;
    } else if (scenario == "sim4") {
        add_tdesigns();
        add_randoms();
        for (int k : {0, 1, 4, 9}) c.plans.push_back({Sampler::rotation, k});
        c.deltas = {0.1, 0.3, 0.5};
    } else if (scenario == "sim5") {
        add_tdesigns();
        c.deltas = {0.1, 0.3, 0.5};
        c.validation_t = 47;
    } else if (scenario == "sim6") {
        c.plans = {{Sampler::tdesign, 47}};
        c.deltas = {0.1, 0.3, 0.5};
        c.trials = 1;
        c.test_size = 6000;
    } else {
        throw Error("unknown scenario '" + scenario + "'");
    }
    return c;
}

std::vector<ExperimentRecord> with_averages(std::vector<ExperimentRecord> rows) {
    using Key = std::tuple<std::string, std::string, std::size_t, double, std::string>;
    std::vector<Key> order;
    std::map<Key, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].trial < 0) continue;
        Key k{rows[i].scenario, rows[i].sampler, rows[i].n_train, rows[i].delta, rows[i].method};
        auto [it, fresh] = groups.try_emplace(k);
        if (fresh) order.push_back(k);
        it->second.push_back(i);
    }
    auto mean = [&](const std::vector<std::size_t>& idx, double ExperimentRecord::*field) {
        double s = 0.0;
        for (auto i : idx) s += rows[i].*field;
        return s / static_cast<double>(idx.size());
    };
    std::vector<ExperimentRecord> out = rows;
    for (const auto& key : order) {
        const auto& idx = groups[key];
        std::map<int, int> per_trial;
        for (auto i : idx) ++per_trial[rows[i].trial];
        const bool sweep = std::any_of(per_trial.begin(), per_trial.end(), [](auto& p) { return p.second > 1; });
        std::vector<std::vector<std::size_t>> parts;
        if (sweep) {
            std::vector<double> params;
            std::map<double, std::vector<std::size_t>> by_param;
            for (auto i : idx) {
                auto [it, fresh] = by_param.try_emplace(rows[i].param);
                if (fresh) params.push_back(rows[i].param);
                it->second.push_back(i);
            }
            for (double p : params) parts.push_back(by_param[p]);
        } else {
            parts.push_back(idx);
        }
        for (const auto& part : parts) {
            ExperimentRecord avg = rows[part.front()];
            avg.trial = -1;
            const bool same_param = std::all_of(part.begin(), part.end(), [&](auto i) {
                return rows[i].param == avg.param || (std::isnan(rows[i].param) && std::isnan(avg.param));
            });
            if (!same_param) avg.param = std::nan("");
            avg.rmse = mean(part, &ExperimentRecord::rmse);
            avg.sup_err = mean(part, &ExperimentRecord::sup_err);
            avg.cnkm = mean(part, &ExperimentRecord::cnkm);
            avg.stability_err = mean(part, &ExperimentRecord::stability_err);
            avg.fitting_err = mean(part, &ExperimentRecord::fitting_err);
            std::int64_t wall = 0;
            for (auto i : part) wall += rows[i].wall_ms;
            avg.wall_ms = wall / static_cast<std::int64_t>(part.size());
            out.push_back(std::move(avg));
        }
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

// Training inputs with everything that does not depend on the noise.
struct Geometry {
    explicit Geometry(PointSet p) : points(std::move(p)) {}
    PointSet points;
    Vector clean;
    std::unique_ptr<WsfSystem> system;
    Matrix phi;
    Matrix k_test;
    Matrix k_val;
    std::once_flag phi_eig_once;
    double ki_cnkm = std::nan("");
};

struct Validation {
    PointSet points;
    Vector clean;
    Vector weights;
};

class Harness {
public:
    explicit Harness(const ScenarioConfig& config)
        : config_(config),
          data_dir_(config.data_dir.empty() ? default_data_dir() : config.data_dir),
          test_(make_testset(config.test_size, config.seed)),
          kernel_(KernelSpec::wendland_4_1()) {
        if (config.trials < 1) throw Error("need at least one trial");
        if (needs_validation()) {
            auto pts = load_tdesign(design_file(data_dir_, config.validation_t), config.validation_t);
            auto rule = auto_rule(pts, default_degree_hint(pts));
            validation_ = Validation{pts, target_function(pts), rule.weights};
            log("validation design t=" + std::to_string(config.validation_t) + " (" +
                std::to_string(pts.size()) + " points, degree " + std::to_string(rule.degree_s) + ")");
        }
    }

    std::vector<ExperimentRecord> run() {
        struct Cell {
            SamplePlan plan;
            double delta;
        };
        std::vector<Cell> cells;
        for (const auto& plan : config_.plans)
            for (double d : config_.deltas) cells.push_back({plan, d});
        std::vector<std::vector<ExperimentRecord>> results(cells.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < cells.size(); i = next++) {
                results[i] = run_cell(cells[i].plan, cells[i].delta);
            }
        };
        const int threads = std::max(1, std::min<int>(config_.threads, static_cast<int>(cells.size())));
        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        std::vector<ExperimentRecord> out;
        for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
        return out;
    }

private:
    bool needs_validation() const { return config_.scenario != "sim1"; }

    void log(const std::string& msg) const {
        if (!config_.verbose) return;
        std::lock_guard lock(log_mutex_);
        std::cerr << "[" << config_.scenario << "] " << msg << '\n';
    }

    std::string key_of(const SamplePlan& plan, int trial) const {
        std::string key = sampler_name(plan.sampler) + ":" + std::to_string(plan.size);
        if (plan.sampler == Sampler::random) key += ":" + std::to_string(trial);
        return key;
    }

    PointSet training_points(const SamplePlan& plan, int trial) const {
        switch (plan.sampler) {
            case Sampler::tdesign:
                return load_tdesign(design_file(data_dir_, plan.size), plan.size);
            case Sampler::rotation: {
                const auto base = load_tdesign(rotation_base_file(data_dir_), 15);
                return rotated_design(base, plan.size);
            }
            case Sampler::random:
                if (plan.size < 1) throw Error("random sampler needs a positive size");
                return sample_random(static_cast<std::size_t>(plan.size), config_.seed + static_cast<std::uint64_t>(trial));
        }
        throw Error("unknown sampler");
    }

    std::shared_ptr<Geometry> geometry(const SamplePlan& plan, int trial) {
        const std::string key = key_of(plan, trial);
        std::shared_ptr<Geometry> g;
        std::shared_ptr<std::once_flag> once;
        {
            std::lock_guard lock(cache_mutex_);
            auto& slot = cache_[key];
            if (!slot.first) {
                slot.first = std::make_shared<std::once_flag>();
            }
            once = slot.first;
        }
        std::call_once(*once, [&] {
            auto geo = std::make_shared<Geometry>(training_points(plan, trial));
            geo->clean = target_function(geo->points);
            const int hint = config_.quad_degree >= 0 ? config_.quad_degree : default_degree_hint(geo->points);
            auto rule = auto_rule(geo->points, hint);
            log(key + ": " + std::to_string(geo->points.size()) + " points, quadrature degree " +
                std::to_string(rule.degree_s) + ", clamped " + std::to_string(rule.clamped_count));
            geo->system = std::make_unique<WsfSystem>(kernel_, std::move(rule));
            geo->phi = kernel_matrix(kernel_, geo->points);
            geo->k_test = cross_kernel_matrix(kernel_, test_.points, geo->points);
            if (validation_) geo->k_val = cross_kernel_matrix(kernel_, validation_->points, geo->points);
            std::lock_guard lock(cache_mutex_);
            cache_[key].second = geo;
        });
        std::lock_guard lock(cache_mutex_);
        g = cache_[key].second;
        if (!g) throw Error("training geometry unavailable for " + key);
        return g;
    }

    double ki_cnkm(Geometry& g) const {
        std::call_once(g.phi_eig_once, [&] {
            if (g.points.size() <= kDiagnosticsLimit) g.ki_cnkm = conditioning(g.phi).cnkm;
        });
        return g.ki_cnkm;
    }

    ParameterGrid grid_for(FilterFamily family, std::size_t n) const {
        if (!config_.grid.empty()) return ParameterGrid::explicit_values(family, config_.grid);
        return ParameterGrid::corollary(family, n);
    }

    ParameterGrid sweep_for(FilterFamily family) const {
        if (!config_.grid.empty()) return ParameterGrid::explicit_values(family, config_.grid);
        if (family == FilterFamily::landweber)
            return ParameterGrid::geometric(family, 1.0, 1e-3, config_.sweep_points, false);
        return ParameterGrid::geometric(family, 1.0, 1e-4, config_.sweep_points, true);
    }

    ExperimentRecord base_record(const SamplePlan& plan, const Geometry& g, double delta, int trial) const {
        ExperimentRecord r;
        r.scenario = config_.scenario;
        r.sampler = sampler_name(plan.sampler);
        r.n_train = g.points.size();
        r.delta = delta;
        r.trial = trial;
        return r;
    }

    std::int64_t wall(Clock::time_point start) const { return config_.record_timing ? elapsed_ms(start) : 0; }

    Vector noisy_training(const Geometry& g, double delta, int trial) const {
        const std::uint64_t seed = config_.seed + static_cast<std::uint64_t>(trial);
        return g.clean + gen_noise({delta, config_.truncation, seed, 2}, g.points.size());
    }

    Vector noisy_validation(double delta, int trial) const {
        const std::uint64_t seed = config_.seed + static_cast<std::uint64_t>(trial);
        return validation_->clean + gen_noise({delta, config_.truncation, seed, 4}, validation_->points.size());
    }

    std::vector<ExperimentRecord> run_cell(const SamplePlan& plan, double delta) {
        const auto start = Clock::now();
        std::vector<ExperimentRecord> rows;
        try {
            if (config_.scenario == "sim1") {
                rows = sweep_cell(plan, delta);
            } else {
                rows = cv_cell(plan, delta);
            }
        } catch (const Error& e) {
            log(sampler_name(plan.sampler) + ":" + std::to_string(plan.size) + " skipped: " + e.what());
            ExperimentRecord r;
            r.scenario = config_.scenario;
            r.sampler = sampler_name(plan.sampler);
            r.delta = delta;
            r.method = "skipped";
            return {r};
        }
        log(sampler_name(plan.sampler) + ":" + std::to_string(plan.size) + " delta=" + format_delta(delta) +
            " done in " + std::to_string(elapsed_ms(start)) + " ms");
        return with_averages(std::move(rows));
    }

    static std::string format_delta(double d) {
        std::ostringstream s;
        s << d;
        return s.str();
    }

    // Parameter sweep with the stability / fitting split (noise-free companion fit).
    std::vector<ExperimentRecord> sweep_cell(const SamplePlan& plan, double delta) {
        std::vector<ExperimentRecord> rows;
        const int trials = config_.trials;
        for (int trial = 0; trial < trials; ++trial) {
            auto g = geometry(plan, trial);
            const WsfSystem& sys = *g->system;
            const Vector y = noisy_training(*g, delta, trial);

            if (config_.include_ki) {
                const auto start = Clock::now();
                const Vector a = solve_spd(g->phi, y, 0.0).x;
                const Vector a0 = solve_spd(g->phi, g->clean, 0.0).x;
                const Vector f = g->k_test * a;
                const Vector f0 = g->k_test * a0;
                auto r = base_record(plan, *g, delta, trial);
                r.method = "ki";
                r.rmse = rmse(f, test_.truth);
                r.sup_err = sup_err(f, test_.truth);
                r.cnkm = ki_cnkm(*g);
                r.stability_err = rmse(f, f0);
                r.fitting_err = rmse(f0, test_.truth);
                r.wall_ms = wall(start);
                rows.push_back(r);
            }
            for (auto family : config_.families) {
                const auto params = sweep_for(family).resolve(sys.kappa());
                const auto noisy = candidate_coefficients(sys, y, family, params);
                const auto clean = candidate_coefficients(sys, g->clean, family, params);
                for (std::size_t i = 0; i < params.size(); ++i) {
                    if (!noisy[i] || !clean[i]) continue;
                    const auto start = Clock::now();
                    const auto spec = FilterSpec::make(family, params[i]);
                    const Vector f = g->k_test * *noisy[i];
                    const Vector f0 = g->k_test * *clean[i];
                    auto r = base_record(plan, *g, delta, trial);
                    r.method = filter_name(family);
                    r.param = params[i];
                    r.rmse = rmse(f, test_.truth);
                    r.sup_err = sup_err(f, test_.truth);
                    r.cnkm = sys.diagnostics(spec).cnkm;
                    r.stability_err = rmse(f, f0);
                    r.fitting_err = rmse(f0, test_.truth);
                    r.wall_ms = wall(start);
                    rows.push_back(r);
                }
            }
        }
        return rows;
    }

    std::vector<ExperimentRecord> cv_cell(const SamplePlan& plan, double delta) {
        std::vector<ExperimentRecord> rows;
        const bool sim3 = config_.scenario == "sim3";
        const bool sim5 = config_.scenario == "sim5";
        const bool sim6 = config_.scenario == "sim6";
        for (int trial = 0; trial < config_.trials; ++trial) {
            auto g = geometry(plan, trial);
            const WsfSystem& sys = *g->system;
            const Vector y = noisy_training(*g, delta, trial);
            const Vector yv = noisy_validation(delta, trial);

            if (config_.include_ki) {
                const auto start = Clock::now();
                const Vector a = solve_spd(g->phi, y, 0.0).x;
                const Vector f = g->k_test * a;
                auto r = base_record(plan, *g, delta, trial);
                r.method = "ki";
                r.rmse = rmse(f, test_.truth);
                r.sup_err = sup_err(f, test_.truth);
                r.cnkm = ki_cnkm(*g);
                r.wall_ms = wall(start);
                rows.push_back(r);
                if (sim6) dump(plan, delta, "ki", f);
            }
            for (auto family : config_.families) {
                const auto start = Clock::now();
                std::vector<std::optional<Vector>> coeffs;
                const auto cv = select_parameter_precomputed(sys, y, g->k_val, yv, validation_->weights,
                                                             grid_for(family, g->points.size()), &coeffs);
                const Vector f = g->k_test * *coeffs[cv.chosen_index];
                auto r = base_record(plan, *g, delta, trial);
                r.method = filter_name(family);
                r.param = cv.chosen_lambda;
                r.rmse = rmse(f, test_.truth);
                r.sup_err = sup_err(f, test_.truth);
                r.cnkm = sys.diagnostics(FilterSpec::make(family, cv.chosen_lambda)).cnkm;
                r.wall_ms = wall(start);
                rows.push_back(r);
                if (sim6) dump(plan, delta, filter_name(family), f);

                if (sim3) {
                    // best candidate measured on the test set itself
                    std::size_t best = cv.chosen_index;
                    double best_rmse = r.rmse;
                    for (std::size_t i = 0; i < coeffs.size(); ++i) {
                        if (!coeffs[i]) continue;
                        const double e = rmse(g->k_test * *coeffs[i], test_.truth);
                        if (e < best_rmse) {
                            best_rmse = e;
                            best = i;
                        }
                    }
                    const Vector fo = g->k_test * *coeffs[best];
                    auto o = base_record(plan, *g, delta, trial);
                    o.method = filter_name(family) + "_oracle";
                    o.param = cv.candidates[best];
                    o.rmse = best_rmse;
                    o.sup_err = sup_err(fo, test_.truth);
                    o.cnkm = sys.diagnostics(FilterSpec::make(family, cv.candidates[best])).cnkm;
                    rows.push_back(o);
                }
                if (sim5 && family == FilterFamily::tikhonov) {
                    auto b = base_record(plan, *g, delta, trial);
                    b.method = "tikhonov_bound";
                    b.param = cv.chosen_lambda;
                    b.sup_err = sup_bound(delta, cv.chosen_lambda, g->points.size());
                    rows.push_back(b);
                }
            }
            if (sim6 && trial == 0 && !config_.prediction_prefix.empty()) {
                write_predictions(prefix_path(plan, delta, "train"), g->points.coords(), g->clean, y);
            }
        }
        return rows;
    }

    // C (lambda^{-(1+eps)/2} |D|^{-1/2} + lambda^{3/4 - eps/2}) with the constants quoted for each noise level.
    static double sup_bound(double delta, double lambda, std::size_t n) {
        constexpr double eps = 1e-5;
        double c = 2.0;
        if (delta <= 0.1 + 1e-12) {
            c = 0.6;
        } else if (delta <= 0.3 + 1e-12) {
            c = 1.4;
        }
        return c * (std::pow(lambda, -(1.0 + eps) / 2.0) / std::sqrt(static_cast<double>(n)) +
                    std::pow(lambda, 0.75 - eps / 2.0));
    }

    std::filesystem::path prefix_path(const SamplePlan& plan, double delta, const std::string& method) const {
        std::string name = config_.prediction_prefix.filename().string();
        name += "_" + sampler_name(plan.sampler) + std::to_string(plan.size) + "_delta" + format_delta(delta) + "_" +
                method + ".csv";
        return config_.prediction_prefix.parent_path() / name;
    }

    void dump(const SamplePlan& plan, double delta, const std::string& method, const Vector& f) const {
        if (config_.prediction_prefix.empty()) return;
        write_predictions(prefix_path(plan, delta, method), test_.points.coords(), test_.truth, f);
    }

    const ScenarioConfig& config_;
    std::filesystem::path data_dir_;
    TestSet test_;
    KernelSpec kernel_;
    std::optional<Validation> validation_;
    std::mutex cache_mutex_;
    std::map<std::string, std::pair<std::shared_ptr<std::once_flag>, std::shared_ptr<Geometry>>> cache_;
    mutable std::mutex log_mutex_;
};

}  // namespace

std::vector<ExperimentRecord> run_scenario(const ScenarioConfig& config) {
    const auto names = scenario_names();
    if (std::find(names.begin(), names.end(), config.scenario) == names.end())
        throw Error("unknown scenario '" + config.scenario + "'");
    if (config.plans.empty() || config.deltas.empty()) throw Error("scenario needs at least one plan and noise level");
    Harness harness(config);
    return harness.run();
}

std::vector<ExperimentRecord> run_real_data(const RealDataConfig& config) {
    if (config.trials < 1) throw Error("need at least one trial");
    const auto all = ingest_latlon_csv(config.train_csv, config.value_column);
    std::optional<LabeledData> train_set;
    std::optional<LabeledData> test_set;
    if (config.test_csv.empty()) {
        auto [tr, te] = split_data(all, config.split, config.seed);
        train_set = std::move(tr);
        test_set = std::move(te);
    } else {
        train_set = all;
        test_set = ingest_latlon_csv(config.test_csv, config.value_column);
    }
    const double bound = config.truncation >= 0.0 ? config.truncation : 5.0 * config.delta;
    const KernelSpec kernel = KernelSpec::wendland_4_1();
    WsfSystem system(kernel, auto_rule(train_set->points, default_degree_hint(train_set->points)));
    const Matrix k_test = cross_kernel_matrix(kernel, test_set->points, train_set->points);
    const Matrix phi = kernel_matrix(kernel, train_set->points);

    auto finish = [&](Vector f) {
        if (config.clamp_zero) f = f.cwiseMax(0.0);
        return f;
    };
    auto dump = [&](const std::string& method, const Vector& f) {
        if (config.prediction_prefix.empty()) return;
        auto path = config.prediction_prefix.parent_path() /
                    (config.prediction_prefix.filename().string() + "_" + method + ".csv");
        write_predictions(path, test_set->points.coords(), test_set->values, f);
    };

    std::vector<ExperimentRecord> rows;
    for (int trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(trial);
        const Vector y = train_set->values + gen_noise({config.delta, bound, seed, 2}, train_set->size());
        const LabeledData noisy(train_set->points, y);
        auto base = [&] {
            ExperimentRecord r;
            r.scenario = "real";
            r.sampler = "latlon";
            r.n_train = train_set->size();
            r.delta = config.delta;
            r.trial = trial;
            return r;
        };
        if (config.include_ki) {
            const auto start = Clock::now();
            const Vector f = finish(k_test * solve_spd(phi, y, 0.0).x);
            auto r = base();
            r.method = "ki";
            r.rmse = rmse(f, test_set->values);
            r.sup_err = sup_err(f, test_set->values);
            r.wall_ms = config.record_timing ? elapsed_ms(start) : 0;
            rows.push_back(r);
            if (trial == 0) dump("ki", f);
        }
        for (auto family : config.families) {
            const auto start = Clock::now();
            const auto grid = config.grid.empty() ? ParameterGrid::corollary(family, train_set->size())
                                                  : ParameterGrid::explicit_values(family, config.grid);
            const auto cv = kfold_select(noisy, kernel, grid, config.folds, seed);
            // refit on the whole training part, resolving the chosen relative value on its own system
            const auto params = grid.resolve(grid.kappa_relative ? system.kappa() : 1.0);
            const double lambda = params[std::min(cv.chosen_index, params.size() - 1)];
            const Vector f = finish(k_test * system.coefficients(FilterSpec::make(family, lambda), y));
            auto r = base();
            r.method = filter_name(family);
            r.param = lambda;
            r.rmse = rmse(f, test_set->values);
            r.sup_err = sup_err(f, test_set->values);
            r.wall_ms = config.record_timing ? elapsed_ms(start) : 0;
            rows.push_back(r);
            if (trial == 0) dump(filter_name(family), f);
        }
    }
    return with_averages(std::move(rows));
}

}  // namespace spherefit
