// gnf: strategic network creation with greedy routing over metric spaces.
//
// Subcommands: validate, build, check, dynamics, scenario, gadget, bench.
// Exit codes: 0 success / true verdict, 1 false verdict, 2 usage or input error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "gnf/dynamics.hpp"
#include "gnf/equilibria.hpp"
#include "gnf/io.hpp"
#include "gnf/one_two.hpp"
#include "gnf/scenarios.hpp"
#include "gnf/theta.hpp"
#include "gnf/tree.hpp"

using namespace gnf;

namespace {

struct GlobalOpts {
    std::string instance_path;
    std::string profile_path;
    std::string output_path;
    std::string alpha_override;
    std::string z_mode = "lexicographic";
    std::string z_value;
    double tol = 1e-9;
    int exact_limit = kDefaultExactLimit;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string format = "json";
};

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("GNF_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

template <class S>
ZPolicyT<S> make_z_policy(const GlobalOpts& opts, const S& alpha, int n) {
    if (opts.z_mode == "lexicographic") {
        if (!opts.z_value.empty()) {
            throw InputError("bad_usage", "--z-value requires --z-mode numeric");
        }
        return ZPolicyT<S>::lex();
    }
    if (opts.z_mode != "numeric") {
        throw InputError("bad_usage", "--z-mode must be lexicographic or numeric");
    }
    if (opts.z_value.empty()) return ZPolicyT<S>::default_numeric(alpha, n);
    ZPolicyT<S> z;
    if constexpr (scalar_traits<S>::exact) {
        z = ZPolicyT<S>::numeric(Rat::parse(opts.z_value));
    } else {
        z = ZPolicyT<S>::numeric(std::stod(opts.z_value));
    }
    if (!(z.z > scalar_from_int<S>(0))) {
        throw InputError("bad_usage", "numeric Z must be positive");
    }
    return z;
}

void emit(const GlobalOpts& opts, const json& j) {
    if (opts.output_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        write_json_file(opts.output_path, j);
    }
}

Instance load_instance_with_overrides(const GlobalOpts& opts) {
    Instance inst = load_instance(opts.instance_path);
    if (!opts.alpha_override.empty()) {
        try {
            if (inst.exact()) {
                inst.alpha_rat = Rat::parse(opts.alpha_override);
                inst.alpha_double = inst.alpha_rat.to_double();
            } else {
                inst.alpha_double = std::stod(opts.alpha_override);
            }
        } catch (const std::exception&) {
            throw InputError("bad_usage", "cannot parse --alpha '" + opts.alpha_override + "'");
        }
        if (!(inst.alpha_double > 0.0)) throw InputError("bad_usage", "alpha must be positive");
    }
    return inst;
}

StrategyProfile load_profile_checked(const GlobalOpts& opts, int n) {
    StrategyProfile s = load_profile(opts.profile_path);
    if (s.n() != n) {
        throw InputError("dimension_mismatch",
                         "profile has " + std::to_string(s.n()) + " agents, instance has " +
                             std::to_string(n));
    }
    try {
        s.validate(n);
    } catch (const std::invalid_argument& e) {
        throw InputError("bad_profile", e.what());
    }
    return s;
}

const RatMetric& require_exact(const Instance& inst, const char* what) {
    if (!inst.exact()) {
        throw InputError("bad_kind", std::string(what) + " needs an exact (non-euclidean) metric");
    }
    return std::get<RatMetric>(inst.metric);
}

// ---- validate ---------------------------------------------------------------

int cmd_validate(const GlobalOpts& opts) {
    Instance inst = load_instance_with_overrides(opts);
    MetricValidation report =
        std::visit([](const auto& m) { return validate_metric(m); }, inst.metric);
    json j;
    j["ok"] = report.ok;
    json violations = json::array();
    for (const auto& v : report.violations) {
        json e;
        e["detail"] = v.detail;
        if (v.u >= 0) e["u"] = v.u;
        if (v.v >= 0) e["v"] = v.v;
        if (v.w >= 0) e["w"] = v.w;
        violations.push_back(e);
    }
    j["violations"] = violations;
    emit(opts, j);
    return report.ok ? 0 : 1;
}

// ---- build ------------------------------------------------------------------

struct BuildOpts {
    std::string what;
    int k = 8;
    double rotation = 0.0;
    std::string mode = "exact";
};

int cmd_build(const GlobalOpts& opts, const BuildOpts& build) {
    Instance inst = load_instance_with_overrides(opts);
    StrategyProfile profile;
    if (build.what == "complete") {
        profile = complete_graph_profile(inst.size());
    } else if (build.what == "theta") {
        if (inst.exact()) {
            throw InputError("bad_kind", "theta construction needs a euclidean instance");
        }
        const auto& m = std::get<EuclidMetric>(inst.metric);
        profile = theta_graph(m.points, ConeSystem{build.k, build.rotation});
    } else if (build.what == "gt") {
        const RatMetric& m = require_exact(inst, "gt");
        if (m.kind() != MetricKind::tree || !m.tree) {
            throw InputError("bad_kind", "gt needs a tree instance");
        }
        profile = canonical_gt(*m.tree);
    } else {
        const RatMetric& m = require_exact(inst, build.what.c_str());
        SolveMode mode = build.mode == "greedy" ? SolveMode::greedy : SolveMode::exact;
        int limit = opts.exact_limit > 20 ? opts.exact_limit : 20;
        if (build.what == "maxdsg") {
            profile = max_dsg(m);
        } else if (build.what == "mindsg") {
            profile = min_dsg(m, mode, limit);
        } else if (build.what == "bdsg") {
            profile = bdsg(m, inst.alpha_rat, mode, limit);
        } else if (build.what == "logapprox") {
            profile = log_approx_ne(m, inst.alpha_rat);
        } else {
            throw InputError("bad_usage", "unknown build target '" + build.what + "'");
        }
    }
    emit(opts, profile_to_json(profile));
    return 0;
}

// ---- check ------------------------------------------------------------------

template <class S>
int check_on(const GlobalOpts& opts, const std::string& what, const MetricSpaceT<S>& m,
             const S& alpha, const StrategyProfile& s) {
    auto z = make_z_policy<S>(opts, alpha, m.size());
    if (what == "ge") {
        auto report = is_greedy_equilibrium(m, s, alpha, z);
        emit(opts, equilibrium_report_to_json(report, "ge"));
        return report.verdict ? 0 : 1;
    }
    if (what == "ne") {
        auto report = is_nash_equilibrium(m, s, alpha, z, opts.exact_limit);
        emit(opts, equilibrium_report_to_json(report, "ne"));
        return report.verdict ? 0 : 1;
    }
    if (what == "approx") {
        auto zq = (z.mode == ZPolicyT<S>::Mode::numeric)
                      ? z
                      : ZPolicyT<S>::default_numeric(alpha, m.size());
        auto report = approx_factor(m, s, alpha, zq, opts.exact_limit);
        if (opts.format == "csv") {
            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!opts.output_path.empty()) {
                file.open(opts.output_path);
                out = &file;
            }
            (*out) << "agent,beta,at_best_response,unreachable\n";
            for (size_t u = 0; u < report.beta.size(); ++u) {
                double b = scalar_traits<S>::to_double(report.beta[u]);
                (*out) << u << ',' << b << ',' << (std::abs(b - 1.0) <= opts.tol ? 1 : 0)
                       << ',' << (report.unreachable[u] ? 1 : 0) << "\n";
            }
            return 0;
        }
        json j;
        j["check"] = "approx";
        json per = json::array();
        for (size_t u = 0; u < report.beta.size(); ++u) {
            json e;
            if constexpr (scalar_traits<S>::exact) {
                e["beta"] = report.beta[u].str();
                e["beta_value"] = scalar_traits<S>::to_double(report.beta[u]);
            } else {
                e["beta"] = report.beta[u];
            }
            // an agent already playing a best response has beta exactly 1;
            // the flag uses the configured float tolerance
            e["at_best_response"] =
                std::abs(scalar_traits<S>::to_double(report.beta[u]) - 1.0) <= opts.tol;
            e["unreachable"] = static_cast<bool>(report.unreachable[u]);
            per.push_back(e);
        }
        j["per_agent"] = per;
        j["beta_max"] = scalar_traits<S>::to_double(report.beta_max);
        emit(opts, j);
        return 0;
    }
    throw InputError("bad_usage", "unknown check '" + what + "'");
}

int cmd_check(const GlobalOpts& opts, const std::string& what) {
    Instance inst = load_instance_with_overrides(opts);
    StrategyProfile s = load_profile_checked(opts, inst.size());
    if (inst.exact()) {
        return check_on<Rat>(opts, what, std::get<RatMetric>(inst.metric), inst.alpha_rat, s);
    }
    return check_on<double>(opts, what, std::get<EuclidMetric>(inst.metric), inst.alpha_double, s);
}

// ---- dynamics ---------------------------------------------------------------

struct DynamicsOpts {
    std::string mode = "improving";
    std::string schedule = "roundrobin";
    std::string move_rule = "first";
    std::vector<int> order;
    int steps = 1000;
};

template <class S>
int dynamics_on(const GlobalOpts& opts, const DynamicsOpts& dyn, const MetricSpaceT<S>& m,
                const S& alpha, const StrategyProfile& s0) {
    auto z = make_z_policy<S>(opts, alpha, m.size());
    ActivationSchedule schedule;
    if (dyn.schedule == "roundrobin") {
        schedule = ActivationSchedule::round_robin();
    } else if (dyn.schedule == "random") {
        schedule = ActivationSchedule::random(opts.seed);
    } else if (dyn.schedule == "explicit") {
        schedule = ActivationSchedule::explicit_order(dyn.order);
    } else {
        throw InputError("bad_usage", "unknown schedule '" + dyn.schedule + "'");
    }
    SingleMoveRule rule;
    if (dyn.move_rule == "first") {
        rule = SingleMoveRule::first_improving;
    } else if (dyn.move_rule == "best") {
        rule = SingleMoveRule::best_improving;
    } else {
        throw InputError("bad_usage", "unknown move rule '" + dyn.move_rule + "'");
    }
    DynamicsTraceT<S> trace;
    if (dyn.mode == "improving") {
        trace = run_improving_dynamics(m, s0, alpha, z, schedule, MoveSource::single_moves,
                                       dyn.steps, {}, rule);
    } else if (dyn.mode == "best") {
        trace = run_best_response_dynamics(m, s0, alpha, z, schedule, dyn.steps,
                                           opts.exact_limit);
    } else {
        throw InputError("bad_usage", "unknown dynamics mode '" + dyn.mode + "'");
    }
    // JSON lines: one record per applied step, then a status record.
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!opts.output_path.empty()) {
        file.open(opts.output_path);
        out = &file;
    }
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& st = trace.steps[i];
        json j;
        j["step"] = i;
        j["agent"] = st.agent;
        if (st.move) j["move"] = st.move->str();
        j["strategy"] = st.strategy;
        j["cost_before"] = cost_breakdown_to_json(st.before);
        j["cost_after"] = cost_breakdown_to_json(st.after);
        (*out) << j.dump() << "\n";
    }
    json tail;
    switch (trace.status) {
        case DynamicsStatus::converged: tail["status"] = "converged"; break;
        case DynamicsStatus::cycle_detected: tail["status"] = "cycle_detected"; break;
        case DynamicsStatus::step_limit: tail["status"] = "step_limit"; break;
    }
    if (trace.status == DynamicsStatus::cycle_detected) {
        tail["cycle_start"] = trace.cycle_start;
        tail["cycle_length"] = trace.cycle_length;
    }
    tail["final"] = profile_to_json(trace.final_profile);
    (*out) << tail.dump() << "\n";
    return 0;
}

int cmd_dynamics(const GlobalOpts& opts, const DynamicsOpts& dyn) {
    Instance inst = load_instance_with_overrides(opts);
    StrategyProfile s0 = opts.profile_path.empty()
                             ? StrategyProfile(inst.size())
                             : load_profile_checked(opts, inst.size());
    if (inst.exact()) {
        return dynamics_on<Rat>(opts, dyn, std::get<RatMetric>(inst.metric), inst.alpha_rat, s0);
    }
    return dynamics_on<double>(opts, dyn, std::get<EuclidMetric>(inst.metric), inst.alpha_double,
                               s0);
}

// ---- scenario ---------------------------------------------------------------

struct ScenarioOpts {
    std::string id;
    std::string epsilon = "1/1000";
    int n = 6;
    std::string alpha = "2";
    int k = 8;
    double alpha_epsilon = 0.5;
    bool quick = false;
};

int cmd_scenario_run(const GlobalOpts& opts, const ScenarioOpts& sopts) {
    ScenarioParams params;
    params.epsilon = Rat::parse(sopts.epsilon);
    params.n = sopts.n;
    params.alpha = Rat::parse(sopts.alpha);
    params.k = sopts.k;
    params.alpha_epsilon = sopts.alpha_epsilon;
    params.threads = resolve_threads(opts.threads);
    params.quick = sopts.quick;
    ScenarioReport report = run_scenario(sopts.id, params);
    emit(opts, scenario_report_to_json(report));
    return report.pass() ? 0 : 1;
}

// ---- gadget -----------------------------------------------------------------

SetCoverProblem load_setcover(const std::string& path) {
    json j = load_json_file(path);
    SetCoverProblem p;
    p.n_elements = j.at("elements").get<int>();
    for (const auto& set : j.at("sets")) {
        std::vector<int> members;
        for (const auto& e : set) members.push_back(e.get<int>());
        p.sets.push_back(members);
    }
    return p;
}

int cmd_gadget(const GlobalOpts& opts, const std::string& what, const std::string& sets_path,
               const std::string& graph_path, int k) {
    json out;
    if (what == "tree-setcover") {
        if (sets_path.empty()) throw InputError("bad_usage", "tree-setcover needs --sets");
        auto g = tree_setcover_gadget(load_setcover(sets_path));
        out["instance"] = instance_to_json(g.metric, g.alpha);
        out["profile"] = profile_to_json(g.background);
        out["deviator"] = g.deviator;
    } else if (what == "euclid-setcover") {
        if (sets_path.empty()) throw InputError("bad_usage", "euclid-setcover needs --sets");
        auto g = euclid_setcover_gadget(load_setcover(sets_path));
        out["instance"] = instance_to_json(g.metric, g.alpha);
        out["profile"] = profile_to_json(g.background);
        out["deviator"] = g.deviator;
    } else if (what == "dominating-set") {
        if (graph_path.empty()) throw InputError("bad_usage", "dominating-set needs --graph");
        json gj = load_json_file(graph_path);
        SimpleGraph graph;
        graph.n = gj.at("n").get<int>();
        for (const auto& e : gj.at("edges")) {
            graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        }
        auto g = dominating_set_gadget(graph);
        out["instance"] = instance_to_json(g.metric, g.alpha);
        out["profile"] = profile_to_json(g.profile);
        out["deviator"] = g.deviator;
    } else if (what == "theta-small-k") {
        auto sc = small_k_counterexample(k <= 5 ? k : 5);
        out["instance"] = instance_to_json(metric_from_points(sc.points), 1.0);
        out["copies"] = sc.copies;
        json pairs = json::array();
        for (auto [u, w] : sc.pairs) pairs.push_back({u, w});
        out["pairs"] = pairs;
    } else if (what == "theta-lower") {
        auto sc = lower_bound_instance(k >= 6 ? k : 8);
        out["instance"] = instance_to_json(metric_from_points(sc.points), sc.alpha);
        out["rotation"] = sc.cones.rotation;
        out["k"] = sc.cones.k;
        out["deviator"] = sc.u;
        out["deviation"] = sc.alt;
        out["target_factor"] = sc.target_factor;
    } else {
        throw InputError("bad_usage", "unknown gadget '" + what + "'");
    }
    emit(opts, out);
    return 0;
}

// ---- bench ------------------------------------------------------------------

int cmd_bench(const GlobalOpts& opts) {
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!opts.output_path.empty()) {
        file.open(opts.output_path);
        out = &file;
    }
    (*out) << "operation,n,param,millis\n";
    auto time_ms = [](const std::function<void()>& fn) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    std::mt19937_64 rng(opts.seed ? opts.seed : 99);
    for (int n : {50, 100, 200}) {
        std::vector<Vec2> pts;
        std::uniform_real_distribution<double> coord(0.0, 100.0);
        for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
        StrategyProfile theta;
        double build_ms = time_ms([&] { theta = theta_graph(pts, ConeSystem{8, 0.0}); });
        (*out) << "theta_graph," << n << ",k=8," << build_ms << "\n";
        auto m = metric_from_points(pts);
        auto g = build_network(m, theta);
        double route_ms = time_ms([&] { (void)all_pairs_greedy(g); });
        (*out) << "all_pairs_greedy," << n << ",theta8," << route_ms << "\n";
    }
    for (int n : {8, 12, 16}) {
        std::vector<std::pair<int, int>> ones;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() & 1) ones.push_back({u, v});
        auto m = metric_from_one_two(n, ones);
        StrategyProfile s = max_dsg(m);
        auto z = ZPolicyT<Rat>::lex();
        double br_ms = time_ms([&] { (void)best_response_exact(m, s, 0, Rat(1), z, n); });
        (*out) << "best_response_exact," << n << ",alpha=1," << br_ms << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strategic network creation with greedy routing"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the global flags after a subcommand too

    GlobalOpts opts;
    app.add_option("--alpha", opts.alpha_override, "override the instance's edge price");
    app.add_option("--z-mode", opts.z_mode, "lexicographic|numeric")->capture_default_str();
    app.add_option("--z-value", opts.z_value, "numeric Z (defaults to 1e6*(1+alpha)*n)");
    app.add_option("--tol", opts.tol, "float tolerance")->capture_default_str();
    app.add_option("--exact-limit", opts.exact_limit, "agent cap for exact searches")
        ->capture_default_str();
    app.add_option("--seed", opts.seed, "random seed");
    app.add_option("--threads", opts.threads, "worker threads (0: GNF_THREADS or hardware)");
    app.add_option("--format", opts.format, "json|csv")->capture_default_str();
    app.add_option("-o,--output", opts.output_path, "write output to a file");

    auto* validate = app.add_subcommand("validate", "check metric axioms of an instance");
    validate->add_option("--instance", opts.instance_path, "instance JSON")->required();

    BuildOpts build_opts;
    auto* build = app.add_subcommand("build", "construct a strategy profile");
    build->add_option("what", build_opts.what, "maxdsg|mindsg|bdsg|logapprox|gt|theta|complete")
        ->required();
    build->add_option("--instance", opts.instance_path, "instance JSON")->required();
    build->add_option("--k", build_opts.k, "cone count for theta");
    build->add_option("--rotation", build_opts.rotation, "global cone rotation (radians)");
    build->add_option("--mode", build_opts.mode, "exact|greedy (mindsg/bdsg)");

    std::string check_what;
    auto* check = app.add_subcommand("check", "equilibrium verdicts");
    check->add_option("what", check_what, "ne|ge|approx")->required();
    check->add_option("--instance", opts.instance_path, "instance JSON")->required();
    check->add_option("--profile", opts.profile_path, "profile JSON")->required();

    DynamicsOpts dyn_opts;
    auto* dynamics = app.add_subcommand("dynamics", "run response dynamics");
    dynamics->add_option("--instance", opts.instance_path, "instance JSON")->required();
    dynamics->add_option("--profile", opts.profile_path, "start profile (default: empty)");
    dynamics->add_option("--mode", dyn_opts.mode, "improving|best")->capture_default_str();
    dynamics->add_option("--schedule", dyn_opts.schedule, "roundrobin|random|explicit")
        ->capture_default_str();
    dynamics->add_option("--move-rule", dyn_opts.move_rule,
                         "first|best improving single move")
        ->capture_default_str();
    dynamics->add_option("--order", dyn_opts.order, "agent order for explicit schedules");
    dynamics->add_option("--steps", dyn_opts.steps, "activation limit")->capture_default_str();

    ScenarioOpts scenario_opts;
    auto* scenario = app.add_subcommand("scenario", "run a named scenario");
    auto* scenario_run = scenario->add_subcommand("run", "run one scenario");
    scenario_run->add_option("id", scenario_opts.id, "scenario id")->required();
    scenario_run->add_option("--epsilon", scenario_opts.epsilon, "gadget epsilon");
    scenario_run->add_option("--n", scenario_opts.n, "instance size parameter");
    scenario_run->add_option("--alpha", scenario_opts.alpha, "edge price parameter");
    scenario_run->add_option("--k", scenario_opts.k, "cone count parameter");
    scenario_run->add_option("--alpha-epsilon", scenario_opts.alpha_epsilon,
                             "epsilon in the lower-bound factor");
    scenario_run->add_flag("--quick", scenario_opts.quick, "sampled instead of exhaustive");
    auto* scenario_list = scenario->add_subcommand("list", "list scenario ids");

    std::string gadget_what, gadget_sets, gadget_graph;
    int gadget_k = 8;
    auto* gadget = app.add_subcommand("gadget", "emit a reduction gadget instance");
    gadget
        ->add_option("what", gadget_what,
                     "tree-setcover|euclid-setcover|dominating-set|theta-small-k|theta-lower")
        ->required();
    gadget->add_option("--sets", gadget_sets, "set cover JSON ({\"elements\": n, \"sets\": ...})");
    gadget->add_option("--graph", gadget_graph, "graph JSON ({\"n\": n, \"edges\": ...})");
    gadget->add_option("--k", gadget_k, "cone count for theta gadgets");

    auto* bench = app.add_subcommand("bench", "timing CSV for core operations");
    (void)bench;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(opts);
        if (app.got_subcommand(build)) return cmd_build(opts, build_opts);
        if (app.got_subcommand(check)) return cmd_check(opts, check_what);
        if (app.got_subcommand(dynamics)) return cmd_dynamics(opts, dyn_opts);
        if (app.got_subcommand(scenario)) {
            if (scenario->got_subcommand(scenario_list)) {
                json ids = json::array();
                for (const auto& id : scenario_ids()) ids.push_back(id);
                emit(opts, ids);
                return 0;
            }
            if (scenario->got_subcommand(scenario_run)) {
                return cmd_scenario_run(opts, scenario_opts);
            }
            throw InputError("bad_usage", "scenario needs 'run <id>' or 'list'");
        }
        if (app.got_subcommand(gadget)) {
            return cmd_gadget(opts, gadget_what, gadget_sets, gadget_graph, gadget_k);
        }
        if (app.got_subcommand(bench)) return cmd_bench(opts);
    } catch (const InputError& e) {
        json err;
        err["error"]["code"] = e.code();
        err["error"]["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const ExactLimitError& e) {
        json err;
        err["error"]["code"] = "exact_limit";
        err["error"]["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    } catch (const std::exception& e) {
        json err;
        err["error"]["code"] = "bad_argument";
        err["error"]["message"] = e.what();
        std::cerr << err.dump(2) << "\n";
        return 2;
    }
    return 2;
}
