// odl: end-to-end driver for the overlapping-clustering dictionary pipeline.
//
// Subcommands: gen, graph, cluster, recover, refine, pipeline, sweep, eval.
// Config is a flat key=value file; every key has a mirroring flag that
// overrides it.  All randomness derives from the single seed via labeled
// streams, so a (config, seed) pair reproduces a run bit for bit.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "odl/cluster.hpp"
#include "odl/conngraph.hpp"
#include "odl/eval.hpp"
#include "odl/io.hpp"
#include "odl/model.hpp"
#include "odl/recover.hpp"
#include "odl/refine.hpp"
#include "odl/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ExperimentConfig {
    odl::GenConfig gen;
    long long p = 1000;          // clustering sample count
    double tau = 0.5;            // edge threshold
    int T = 0;                   // 0 = use default_params
    long long rounds = 0;        // 0 = use default_params
    int ell = 3;
    bool trimming = false;
    int trim_T = 0;              // 0 = same T as admission
    std::string method = "avg";  // avg | svd | both
    int subsample = 500;         // sign-labeling cap per cluster
    // refine
    int refine_q = 0;            // 0 = ceil(10 m ln^2 m)
    int refine_rounds = 10;
    double target_error = 1e-6;
    bool fast_graph = false;     // exact code-based graph (noiseless shortcut)
    std::string preset;          // "" or "theorem1"
    std::string outdir = "out";
    std::string stages = "gen,graph,cluster,recover,refine,eval";
};

long long theorem1_samples(int m, int k) {
    return static_cast<long long>(
        std::ceil(static_cast<double>(m) * m / (static_cast<double>(k) * k) * std::log(m)));
}

int default_refine_q(int m) {
    const double lm = std::log(static_cast<double>(m));
    return static_cast<int>(std::ceil(10.0 * m * lm * lm));
}

void apply_preset(ExperimentConfig& cfg) {
    if (cfg.preset.empty()) return;
    if (cfg.preset != "theorem1")
        throw std::runtime_error("unknown preset: " + cfg.preset);
    if (cfg.refine_q == 0) cfg.refine_q = default_refine_q(cfg.gen.m);
    cfg.p = theorem1_samples(cfg.gen.m, cfg.gen.k) +
            static_cast<long long>(cfg.refine_q) * cfg.refine_rounds;
}

ExperimentConfig read_experiment(const std::string& path) {
    ExperimentConfig cfg;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::istringstream text(buf.str());
    std::string line, gen_part;
    for (; std::getline(text, line);) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error("malformed config line: " + line);
        const std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "p") cfg.p = std::stoll(val);
        else if (key == "tau") cfg.tau = std::stod(val);
        else if (key == "T") cfg.T = std::stoi(val);
        else if (key == "rounds") cfg.rounds = std::stoll(val);
        else if (key == "ell") cfg.ell = std::stoi(val);
        else if (key == "trimming") cfg.trimming = val == "1" || val == "true";
        else if (key == "trim_T") cfg.trim_T = std::stoi(val);
        else if (key == "method") cfg.method = val;
        else if (key == "subsample") cfg.subsample = std::stoi(val);
        else if (key == "refine_q") cfg.refine_q = std::stoi(val);
        else if (key == "refine_rounds") cfg.refine_rounds = std::stoi(val);
        else if (key == "target_error") cfg.target_error = std::stod(val);
        else if (key == "fast_graph") cfg.fast_graph = val == "1" || val == "true";
        else if (key == "preset") cfg.preset = val;
        else if (key == "outdir") cfg.outdir = val;
        else if (key == "stages") cfg.stages = val;
        else gen_part += line + "\n";  // GenConfig keys
    }
    cfg.gen = odl::parse_genconfig_text(gen_part);
    return cfg;
}

void write_experiment(const std::string& path, const ExperimentConfig& cfg) {
    odl::write_genconfig(path, cfg.gen);
    std::ofstream out(path, std::ios::app);
    out.precision(17);
    out << "p=" << cfg.p << "\ntau=" << cfg.tau << "\nT=" << cfg.T
        << "\nrounds=" << cfg.rounds << "\nell=" << cfg.ell
        << "\ntrimming=" << (cfg.trimming ? 1 : 0) << "\ntrim_T=" << cfg.trim_T
        << "\nmethod=" << cfg.method << "\nsubsample=" << cfg.subsample
        << "\nrefine_q=" << cfg.refine_q << "\nrefine_rounds=" << cfg.refine_rounds
        << "\ntarget_error=" << cfg.target_error << "\nfast_graph=" << (cfg.fast_graph ? 1 : 0)
        << "\nstages=" << cfg.stages << "\n";
}

int worker_cap() {
    if (const char* env = std::getenv("ODL_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

struct StageTimer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

// Shared pipeline state, assembled stage by stage.
struct PipelineState {
    odl::Dictionary dict;
    odl::SampleSet samples;
    std::optional<odl::ConnectionGraph> graph;
    std::optional<odl::OverlapClustering> clustering;
    std::optional<odl::Dictionary> avg_estimate;
    std::optional<odl::SvdRecovery> svd;
    std::optional<odl::RefineResult> refined;
    json report;
};

bool has_stage(const std::string& stages, const std::string& name) {
    std::istringstream in(stages);
    std::string tok;
    while (std::getline(in, tok, ','))
        if (tok == name) return true;
    return false;
}

void stage_gen(const ExperimentConfig& cfg, PipelineState& st, bool write_files) {
    StageTimer timer;
    st.dict = odl::gen_random_dictionary(cfg.gen.n, cfg.gen.m, std::nullopt, cfg.gen.seed);
    st.samples = odl::generate_samples(st.dict, cfg.gen, cfg.p);
    const int q_overlap = odl::max_pairwise_support_overlap(st.samples);
    if (write_files) {
        fs::create_directories(cfg.outdir);
        odl::write_matrix(cfg.outdir + "/A.mat", st.dict.columns);
        odl::write_matrix(cfg.outdir + "/samples.mat", st.samples.samples);
        odl::write_codes(cfg.outdir + "/codes.txt", st.samples.ground_truth);
        write_experiment(cfg.outdir + "/run.cfg", cfg);
    }
    st.report["gen"] = {{"mu", st.dict.mu}, {"max_support_overlap", q_overlap},
                        {"p", cfg.p}, {"seconds", timer.seconds()}};
    std::cout << "gen: mu=" << st.dict.mu << " Q=" << q_overlap << " p=" << cfg.p << "\n";
}

void stage_graph(const ExperimentConfig& cfg, PipelineState& st, bool write_files) {
    StageTimer timer;
    if (cfg.fast_graph)
        st.graph = odl::build_graph_from_code(st.dict, st.samples, cfg.tau);
    else
        st.graph = odl::build_graph(st.samples, cfg.tau);
    if (write_files) odl::write_graph(cfg.outdir + "/graph.txt", *st.graph);
    st.report["graph"] = {{"edges", st.graph->edge_count()}, {"tau", cfg.tau},
                          {"seconds", timer.seconds()}};
    std::cout << "graph: edges=" << st.graph->edge_count() << "\n";
}

void stage_cluster(const ExperimentConfig& cfg, PipelineState& st, bool write_files) {
    StageTimer timer;
    odl::ClusterParams params =
        odl::default_params(st.graph->p, cfg.gen.k, cfg.gen.m, cfg.ell);
    if (cfg.T > 0) params.T = cfg.T;
    if (cfg.rounds > 0) params.rounds = cfg.rounds;
    params.trimming = cfg.trimming;
    const std::uint64_t seed = odl::Rng(cfg.gen.seed).stream("clusterseed").next_u64();
    st.clustering = cfg.ell == 3 ? odl::overlapping_cluster(*st.graph, params, seed)
                                 : odl::overlapping_cluster_l(*st.graph, params, seed);
    if (cfg.trimming && cfg.trim_T > params.T) {
        // re-trim at the decoupled threshold
        for (auto& cl : st.clustering->clusters) {
            auto trimmed = odl::trim_candidate_set(*st.graph, cl, cfg.trim_T);
            if (!trimmed.empty()) cl = std::move(trimmed);
        }
    }
    if (write_files) odl::write_clustering(cfg.outdir + "/clustering.txt", *st.clustering);
    json cluster_report = {{"clusters", st.clustering->clusters.size()},
                           {"T", params.T}, {"rounds", params.rounds}, {"ell", cfg.ell},
                           {"trimming", cfg.trimming}, {"seconds", timer.seconds()}};
    if (st.samples.has_ground_truth()) {
        const odl::OverlapClustering oracle = odl::oracle_clustering(st.samples);
        const odl::ClusterScore score = odl::clustering_score(oracle, *st.clustering);
        cluster_report["exact"] = score.exact;
        cluster_report["missed"] = score.missed;
        cluster_report["spurious"] = score.spurious;
        cluster_report["exact_match"] =
            score.exact == static_cast<int>(oracle.clusters.size()) && score.spurious == 0;
    }
    st.report["cluster"] = cluster_report;
    std::cout << "cluster: found=" << st.clustering->clusters.size() << "\n";
}

void stage_recover(const ExperimentConfig& cfg, PipelineState& st, bool write_files) {
    StageTimer timer;
    json rec;
    if (cfg.method == "avg" || cfg.method == "both") {
        std::vector<odl::SignSplitStats> stats;
        const auto signed_clusters =
            odl::find_relative_signs(st.samples, *st.clustering, cfg.subsample, &stats);
        st.avg_estimate = odl::average_recover(st.samples, signed_clusters);
        int unlabeled = 0;
        for (const auto& s : stats) unlabeled += s.unlabeled;
        rec["avg"] = {{"columns", st.avg_estimate->m}, {"unlabeled_members", unlabeled}};
        if (st.samples.has_ground_truth())
            rec["avg"]["sign_accuracy"] = odl::sign_accuracy(st.samples, signed_clusters);
        if (write_files) odl::write_matrix(cfg.outdir + "/Ahat_avg.mat", st.avg_estimate->columns);
    }
    if (cfg.method == "svd" || cfg.method == "both") {
        std::string diag;
        st.svd = odl::svd_recover(st.samples, *st.clustering, 1e-9, 10000,
                                  odl::Rng(cfg.gen.seed).stream("svdseed").next_u64(), &diag);
        rec["svd"] = {{"columns", st.svd->estimate.m}, {"zeta", st.svd->zeta}};
        if (write_files) {
            odl::write_matrix(cfg.outdir + "/Ahat_svd.mat", st.svd->estimate.columns);
            std::ofstream(cfg.outdir + "/svd_diag.jsonl") << diag;
        }
    }
    rec["seconds"] = timer.seconds();
    st.report["recover"] = rec;
    std::cout << "recover: method=" << cfg.method << "\n";
}

void stage_refine(const ExperimentConfig& cfg, PipelineState& st, bool write_files) {
    StageTimer timer;
    const odl::Dictionary* b0 = nullptr;
    if (st.avg_estimate) b0 = &*st.avg_estimate;
    else if (st.svd) b0 = &st.svd->estimate;
    if (!b0) throw std::runtime_error("refine requires a recover output or a provided B0");

    odl::RefineConfig rcfg;
    rcfg.tau = cfg.tau;
    rcfg.q = cfg.refine_q > 0 ? cfg.refine_q : default_refine_q(cfg.gen.m);
    rcfg.rounds = cfg.refine_rounds;
    rcfg.target_error = cfg.target_error;
    rcfg.seed = cfg.gen.seed;
    // fresh pool, disjoint from the clustering samples by stream label
    odl::GenConfig pool_cfg = cfg.gen;
    pool_cfg.seed = odl::Rng(cfg.gen.seed).stream("refinepool").next_u64();
    const long long pool_p = static_cast<long long>(rcfg.q) * std::max(1, rcfg.rounds);
    const odl::SampleSet pool = odl::generate_samples(st.dict, pool_cfg, pool_p);
    st.refined = odl::refine(*b0, pool, rcfg, &st.dict);
    if (write_files) {
        odl::write_matrix(cfg.outdir + "/Ahat_refined.mat", st.refined->estimate.columns);
        std::ofstream(cfg.outdir + "/refine_trace.jsonl")
            << odl::trace_json_lines(st.refined->trace);
    }
    json rounds_report = json::array();
    for (const auto& row : st.refined->trace) {
        json r = {{"round", row.round}, {"changed_norm", row.changed_norm}};
        if (row.max_err) r["max_err"] = *row.max_err;
        rounds_report.push_back(r);
    }
    st.report["refine"] = {{"rounds", st.refined->trace.size()},
                           {"q", rcfg.q},
                           {"trace", rounds_report},
                           {"seconds", timer.seconds()}};
    std::cout << "refine: rounds=" << st.refined->trace.size() << "\n";
}

void stage_eval(const ExperimentConfig& cfg, PipelineState& st, bool /*write_files*/) {
    StageTimer timer;
    json ev;
    auto eval_estimate = [&](const char* name, const odl::Dictionary& est) {
        if (est.m != st.dict.m) {
            ev[name] = {{"aligned", false}, {"columns", est.m}};
            return;
        }
        const odl::Alignment al = odl::align_dictionaries(st.dict, est);
        ev[name] = {{"aligned", true}, {"max_err", al.max_err},
                    {"mean_err", std::accumulate(al.per_column_err.begin(),
                                                 al.per_column_err.end(), 0.0) / est.m}};
    };
    if (st.avg_estimate) eval_estimate("avg", *st.avg_estimate);
    if (st.svd) eval_estimate("svd", st.svd->estimate);
    if (st.refined) eval_estimate("refined", st.refined->estimate);
    ev["seconds"] = timer.seconds();
    st.report["eval"] = ev;
    std::cout << "eval: " << ev.dump() << "\n";
}

// Runs the requested stages in dependency order; returns the report.
// Any stage failure is recorded with its stage tag and stops the run.
json run_pipeline(ExperimentConfig cfg, bool write_files, bool* failed) {
    apply_preset(cfg);
    PipelineState st;
    st.report["config"] = json::parse(R"({})");
    {
        std::ostringstream cfgtext;
        cfgtext << "n=" << cfg.gen.n << " m=" << cfg.gen.m << " k=" << cfg.gen.k
                << " p=" << cfg.p << " sigma=" << cfg.gen.noise_sigma
                << " seed=" << cfg.gen.seed << " tau=" << cfg.tau << " ell=" << cfg.ell;
        st.report["config"] = {{"summary", cfgtext.str()}, {"seed", cfg.gen.seed}};
    }
    *failed = false;
    const std::pair<std::string, void (*)(const ExperimentConfig&, PipelineState&, bool)>
        stages[] = {{"gen", stage_gen},       {"graph", stage_graph},
                    {"cluster", stage_cluster}, {"recover", stage_recover},
                    {"refine", stage_refine},   {"eval", stage_eval}};
    for (const auto& [name, fn] : stages) {
        if (!has_stage(cfg.stages, name)) continue;
        try {
            fn(cfg, st, write_files);
        } catch (const std::exception& e) {
            st.report["failure"] = {{"stage", name}, {"message", e.what()}};
            std::cerr << "stage " << name << " failed: " << e.what() << "\n";
            *failed = true;
            break;
        }
    }
    if (write_files) {
        fs::create_directories(cfg.outdir);
        std::ofstream(cfg.outdir + "/report.json") << st.report.dump(2) << "\n";
    }
    return st.report;
}

int cmd_sweep(ExperimentConfig base, const std::string& axis,
              const std::vector<std::string>& values, const std::string& csv_path) {
    static const std::vector<std::string> axes = {"k", "p", "sigma", "tau", "T", "ell"};
    if (std::find(axes.begin(), axes.end(), axis) == axes.end())
        throw std::runtime_error("sweep axis must be one of k,p,sigma,tau,T,ell");
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot open " + csv_path);
    csv << "axis,value,seed,exact_match,avg_max_err,refined_max_err,error\n";
    std::mutex mu;
    std::vector<std::string> rows(values.size());
    bool any_failed = false;
    auto run_cell = [&](std::size_t idx) {
        ExperimentConfig cfg = base;
        const std::string& value = values[idx];
        if (axis == "k") cfg.gen.k = std::stoi(value);
        else if (axis == "p") cfg.p = std::stoll(value);
        else if (axis == "sigma") cfg.gen.noise_sigma = std::stod(value);
        else if (axis == "tau") cfg.tau = std::stod(value);
        else if (axis == "T") cfg.T = std::stoi(value);
        else if (axis == "ell") cfg.ell = std::stoi(value);
        cfg.gen.seed = base.gen.seed + idx;  // fixed seed offset per cell
        cfg.outdir = base.outdir + "/cell_" + axis + "_" + value;
        bool failed = false;
        json report = run_pipeline(cfg, true, &failed);
        std::ostringstream row;
        row << axis << ',' << value << ',' << cfg.gen.seed << ',';
        if (report.contains("cluster") && report["cluster"].contains("exact_match"))
            row << (report["cluster"]["exact_match"].get<bool>() ? 1 : 0);
        row << ',';
        if (report.contains("eval") && report["eval"].contains("avg"))
            row << report["eval"]["avg"].value("max_err", -1.0);
        row << ',';
        if (report.contains("eval") && report["eval"].contains("refined"))
            row << report["eval"]["refined"].value("max_err", -1.0);
        row << ',';
        if (failed) row << report["failure"]["stage"].get<std::string>();
        std::scoped_lock lock(mu);
        rows[idx] = row.str();
        any_failed = any_failed || failed;  // recorded, not fatal to the sweep
    };
    const int cap = worker_cap();
    for (std::size_t begin = 0; begin < values.size(); begin += cap) {
        std::vector<std::thread> pool;
        for (std::size_t i = begin; i < std::min(values.size(), begin + cap); ++i)
            pool.emplace_back(run_cell, i);
        for (auto& t : pool) t.join();
    }
    for (const auto& row : rows) csv << row << "\n";
    std::cout << "sweep: " << values.size() << " cells -> " << csv_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"overlapping-clustering dictionary learning pipeline"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--n", cfg.gen.n, "signal dimension");
        sub->add_option("--m", cfg.gen.m, "dictionary columns");
        sub->add_option("--k", cfg.gen.k, "sparsity");
        sub->add_option("--C", cfg.gen.C, "value magnitude cap");
        sub->add_option("--sigma", cfg.gen.noise_sigma, "noise sigma");
        sub->add_option("--seed", cfg.gen.seed, "root seed");
        sub->add_option("--block-size", cfg.gen.block_size, "correlated block size");
        sub->add_option("--moment-inflation", cfg.gen.moment_inflation,
                        "pairwise co-occurrence inflation factor");
        sub->add_option("--value-dist", [&cfg](const std::vector<std::string>& v) {
            cfg.gen.value_dist = v[0] == "rademacher" ? odl::ValueDist::rademacher
                                                      : odl::ValueDist::uniform_signed;
            return true;
        }, "rademacher|uniform_signed");
        sub->add_option("--support-dist", [&cfg](const std::vector<std::string>& v) {
            cfg.gen.support_dist = v[0] == "correlated_blocks"
                                       ? odl::SupportDist::correlated_blocks
                                       : odl::SupportDist::uniform_k_subset;
            return true;
        }, "uniform_k_subset|correlated_blocks");
        sub->add_option("--p", cfg.p, "clustering sample count");
        sub->add_option("--tau", cfg.tau, "edge / support threshold");
        sub->add_option("--T", cfg.T, "triplet admission threshold (0 = default)");
        sub->add_option("--rounds", cfg.rounds, "clustering rounds (0 = default)");
        sub->add_option("--ell", cfg.ell, "tuple order (3 = pair algorithm)");
        sub->add_flag("--trimming", cfg.trimming, "trim candidate sets");
        sub->add_option("--trim-T", cfg.trim_T, "decoupled trim threshold (0 = admission T)");
        sub->add_option("--method", cfg.method, "recover method: avg|svd|both");
        sub->add_option("--subsample", cfg.subsample, "sign-labeling cap per cluster");
        sub->add_option("--refine-q", cfg.refine_q, "refine batch size (0 = 10 m ln^2 m)");
        sub->add_option("--refine-rounds", cfg.refine_rounds, "refine rounds");
        sub->add_option("--target-error", cfg.target_error, "refine stop threshold");
        sub->add_flag("--fast-graph", cfg.fast_graph, "exact code-based graph (noiseless)");
        sub->add_option("--preset", cfg.preset, "parameter preset (theorem1)");
        sub->add_option("--outdir", cfg.outdir, "output directory");
        sub->add_option("--stages", cfg.stages, "comma-separated stage subset");
    };

    auto* c_gen = app.add_subcommand("gen", "generate dictionary + samples");
    auto* c_graph = app.add_subcommand("graph", "generate and build the connection graph");
    auto* c_cluster = app.add_subcommand("cluster", "run overlapping clustering");
    auto* c_recover = app.add_subcommand("recover", "recover dictionary from clusters");
    auto* c_refine = app.add_subcommand("refine", "iterative refinement of an estimate");
    auto* c_pipeline = app.add_subcommand("pipeline", "run all stages");
    auto* c_sweep = app.add_subcommand("sweep", "pipeline across an axis of values");
    auto* c_eval = app.add_subcommand("eval", "align an estimate file against a reference");
    for (auto* sub : {c_gen, c_graph, c_cluster, c_recover, c_refine, c_pipeline, c_sweep})
        add_common(sub);

    std::string sweep_axis = "p", sweep_csv = "sweep.csv";
    std::vector<std::string> sweep_values;
    c_sweep->add_option("--axis", sweep_axis, "k|p|sigma|tau|T|ell")->required();
    c_sweep->add_option("--values", sweep_values, "axis values (empty: header-only CSV)")
        ->delimiter(',');
    c_sweep->add_option("--csv", sweep_csv, "output CSV path");

    std::string eval_ref, eval_est;
    c_eval->add_option("--ref", eval_ref, "reference dictionary (DLMAT001)")->required();
    c_eval->add_option("--est", eval_est, "estimate (DLMAT001)")->required();

    // config file loads first so explicit flags override its values
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        std::string path;
        if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
        else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
        if (!path.empty()) {
            try {
                cfg = read_experiment(path);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 1;
            }
        }
    }
    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(c_eval)) {
            odl::Dictionary ref, est;
            ref.columns = odl::read_matrix(eval_ref);
            est.columns = odl::read_matrix(eval_est);
            ref.n = est.n = static_cast<int>(ref.columns.rows());
            ref.m = est.m = static_cast<int>(ref.columns.cols());
            const odl::Alignment al = odl::align_dictionaries(ref, est);
            json out = {{"max_err", al.max_err}, {"per_column_err", al.per_column_err}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (app.got_subcommand(c_gen)) cfg.stages = "gen";
        else if (app.got_subcommand(c_graph)) cfg.stages = "gen,graph";
        else if (app.got_subcommand(c_cluster)) cfg.stages = "gen,graph,cluster";
        else if (app.got_subcommand(c_recover)) cfg.stages = "gen,graph,cluster,recover";
        else if (app.got_subcommand(c_refine))
            cfg.stages = "gen,graph,cluster,recover,refine";
        if (app.got_subcommand(c_sweep)) return cmd_sweep(cfg, sweep_axis, sweep_values, sweep_csv);
        bool failed = false;
        run_pipeline(cfg, true, &failed);
        return failed ? 1 : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
