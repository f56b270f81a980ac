#include "snncost/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "snncost/io.hpp"
#include "snncost/rng.hpp"

namespace snncost {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::uint64_t kStreamSynapses = 0x53594e;  // matches run_sweep
constexpr std::uint64_t kStreamReference = 0x524153;
constexpr std::uint64_t kStreamGroundTruth = 0x4754;

struct SamplerFlags {
    std::uint64_t steps_eq = 10000;
    std::uint64_t interval = 10;
    std::size_t count = 1000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--steps-eq", steps_eq, "Burn-in Monte Carlo moves");
        cmd->add_option("--interval", interval, "Moves between retained samples")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--count", count, "Number of samples")->check(CLI::PositiveNumber);
    }

    SamplerParams params(std::uint64_t seed) const {
        return SamplerParams{steps_eq, interval, count, seed};
    }
};

// Every command records enough to rerun itself byte-for-byte.
void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<std::string>& argv, const json& parameters,
                    const std::vector<std::string>& input_files,
                    const std::vector<std::string>& output_files) {
    json m;
    m["tool"] = kToolVersion;
    m["command"] = command;
    m["argv"] = argv;
    m["parameters"] = parameters;
    json inputs = json::object();
    for (const auto& f : input_files) inputs[f] = digest_file(f);
    m["inputs"] = inputs;
    m["outputs"] = output_files;
    write_text_file(path, m.dump(2) + "\n");
}

DeploymentConfiguration build_config(const ExperimentConfig& cfg, int k) {
    return map_sequential(partition_fixed_size(cfg.snn, k), cfg.machine);
}

IsingModel ground_truth_model(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    IsingModel model = IsingModel::zeros(n);
    for (std::size_t i = 0; i < n; ++i) model.set_h(i, -0.6 + 0.8 * rng.uniform01());
    const double scale = n > 1 ? 2.0 / static_cast<double>(n) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            model.set_coupling(i, j, scale * rng.uniform01());
        }
    }
    return model;
}

void run_one_sweep(const ExperimentConfig& cfg, const IsingModel& model,
                   const SamplerFlags& sampler, AblationMode mode,
                   const SpikeRaster& reference, double dt, std::uint64_t seed,
                   const std::string& out_dir, std::vector<std::string>& outputs) {
    SweepInputs in;
    in.snn = cfg.snn;
    in.machine = cfg.machine;
    in.model = model;
    in.sampler = sampler.params(0);
    in.constants = cfg.constants;
    in.mode = mode;
    in.reference_raster = reference;
    in.dt = dt;
    in.weights = cfg.weights;
    in.master_seed = seed;
    in.sample_dir = out_dir + "/samples";
    fs::create_directories(out_dir);
    const SweepResult result = run_sweep(in);

    const std::string csv_path = out_dir + "/sweep.csv";
    const std::string summary_path = out_dir + "/summary.csv";
    write_sweep_csv(csv_path, result.rows);
    write_sweep_summary(summary_path, result,
                        {{"mode", to_string(mode)},
                         {"seed", std::to_string(seed)},
                         {"steps_eq", std::to_string(sampler.steps_eq)},
                         {"sample_interval", std::to_string(sampler.interval)},
                         {"sample_count", std::to_string(sampler.count)},
                         {"dt", fmt_double(dt)},
                         {"cost_ic", fmt_double(cfg.constants.intra_core)},
                         {"cost_scdc", fmt_double(cfg.constants.same_chip)},
                         {"cost_dc", fmt_double(cfg.constants.inter_chip)},
                         {"w_intra", fmt_double(cfg.weights.intra)},
                         {"w_samechip", fmt_double(cfg.weights.same_chip)},
                         {"w_interchip", fmt_double(cfg.weights.inter_chip)}});
    outputs.push_back(csv_path);
    outputs.push_back(summary_path);
}

int dispatch(const std::vector<std::string>& args);

int cmd_replay(const std::string& manifest_path) {
    const json m = json::parse(read_text_file(manifest_path));
    std::vector<std::string> argv = m.at("argv").get<std::vector<std::string>>();
    return dispatch(argv);
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Ising-model-based communication cost estimation for SNN deployment sweeps"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    // fit -------------------------------------------------------------
    auto* fit = app.add_subcommand("fit", "Fit model parameters from a spike raster");
    std::string fit_raster, fit_out;
    std::size_t fit_n = 0;
    double fit_horizon = 0.0, fit_dt = 1.0;
    fit->add_option("--raster", fit_raster, "Spike raster file")->required();
    fit->add_option("--n", fit_n, "Neuron count")->required()->check(CLI::PositiveNumber);
    fit->add_option("--horizon", fit_horizon, "Observation horizon (ms)")
        ->required()
        ->check(CLI::PositiveNumber);
    fit->add_option("--dt", fit_dt, "Bin width (ms)")->check(CLI::PositiveNumber);
    fit->add_option("--out", fit_out, "Output model file")->required();

    // sample ----------------------------------------------------------
    auto* smp = app.add_subcommand("sample", "Draw Metropolis samples from a model file");
    std::string smp_model, smp_out;
    std::uint64_t smp_seed = 0;
    SamplerFlags smp_flags;
    smp->add_option("--model", smp_model, "Model file")->required();
    smp_flags.attach(smp);
    smp->add_option("--seed", smp_seed, "RNG seed");
    smp->add_option("--out", smp_out, "Output states file")->required();

    // cost ------------------------------------------------------------
    auto* cost = app.add_subcommand("cost", "Predict the cost of one deployment configuration");
    std::string cost_model, cost_states, cost_config, cost_weighting = "montecarlo",
                cost_out = ".";
    int cost_k = 0;
    std::uint64_t cost_seed = 0;
    bool cost_csv = false;
    SamplerFlags cost_flags;
    std::optional<double> cost_ic, cost_scdc, cost_dc;
    cost->add_option("--model", cost_model, "Model file (sampled on the fly)");
    cost->add_option("--states", cost_states, "Precomputed states file");
    cost->add_option("--config", cost_config, "Network/machine config file")->required();
    cost->add_option("--k", cost_k, "Fixed slice size")->required()->check(CLI::PositiveNumber);
    cost->add_option("--weighting", cost_weighting,
                     "montecarlo | boltzmann_reweight | uniform_one");
    cost->add_option("--cost-ic", cost_ic, "Intra-core unit cost");
    cost->add_option("--cost-scdc", cost_scdc, "Same-chip inter-core unit cost");
    cost->add_option("--cost-dc", cost_dc, "Inter-chip unit cost");
    cost_flags.attach(cost);
    cost->add_option("--seed", cost_seed, "RNG seed");
    cost->add_flag("--csv", cost_csv, "Machine-readable output");
    cost->add_option("--out", cost_out, "Directory for the run manifest");

    // sweep -----------------------------------------------------------
    auto* swp = app.add_subcommand("sweep", "Sweep every fixed-size deployment configuration");
    std::string swp_config, swp_model, swp_raster, swp_mode = "full", swp_out;
    double swp_horizon = 0.0, swp_dt = 1.0;
    std::uint64_t swp_seed = 0;
    SamplerFlags swp_flags{100000, 1000, 200};
    swp->add_option("--config", swp_config, "Network/machine config file")->required();
    swp->add_option("--model", swp_model, "Fitted model file")->required();
    swp->add_option("--raster", swp_raster, "Reference raster for profiling")->required();
    swp->add_option("--horizon", swp_horizon, "Reference raster horizon (ms)")
        ->required()
        ->check(CLI::PositiveNumber);
    swp->add_option("--dt", swp_dt, "Bin width (ms)")->check(CLI::PositiveNumber);
    swp->add_option("--mode", swp_mode, "full | random_samples | uniform_pm | random_model");
    swp_flags.attach(swp);
    swp->add_option("--seed", swp_seed, "Master seed");
    swp->add_option("--out", swp_out, "Output directory")->required();

    // synth -----------------------------------------------------------
    auto* syn = app.add_subcommand("synth", "Generate a synthetic spike raster");
    std::string syn_model, syn_out;
    std::size_t syn_n = 0, syn_bins = 0;
    double syn_rate = 0.3, syn_horizon = 0.0, syn_dt = 1.0;
    std::uint64_t syn_seed = 0;
    SamplerFlags syn_flags;
    syn->add_option("--model", syn_model, "Model file (one Metropolis sample per bin)");
    syn->add_option("--bins", syn_bins, "Bin count for model-driven generation");
    syn->add_option("--n", syn_n, "Neuron count for Bernoulli generation");
    syn->add_option("--rate", syn_rate, "Per-bin spike probability")
        ->check(CLI::Range(0.0, 1.0));
    syn->add_option("--horizon", syn_horizon, "Horizon (ms) for Bernoulli generation");
    syn->add_option("--dt", syn_dt, "Bin width (ms)")->check(CLI::PositiveNumber);
    syn_flags.attach(syn);
    syn->add_option("--seed", syn_seed, "RNG seed");
    syn->add_option("--out", syn_out, "Output raster file")->required();

    // profile ---------------------------------------------------------
    auto* prof = app.add_subcommand("profile", "Profile a raster against one configuration");
    std::string prof_raster, prof_config, prof_out = ".";
    int prof_k = 0;
    double prof_horizon = 0.0, prof_dt = 1.0;
    std::uint64_t prof_seed = 0;
    std::optional<double> prof_wi, prof_ws, prof_wd;
    prof->add_option("--raster", prof_raster, "Spike raster file")->required();
    prof->add_option("--config", prof_config, "Network/machine config file")->required();
    prof->add_option("--k", prof_k, "Fixed slice size")->required()->check(CLI::PositiveNumber);
    prof->add_option("--horizon", prof_horizon, "Raster horizon (ms)")
        ->required()
        ->check(CLI::PositiveNumber);
    prof->add_option("--dt", prof_dt, "Bin width (ms)")->check(CLI::PositiveNumber);
    prof->add_option("--w-intra", prof_wi, "Intra-core packet weight");
    prof->add_option("--w-samechip", prof_ws, "Same-chip packet weight");
    prof->add_option("--w-interchip", prof_wd, "Inter-chip packet weight");
    prof->add_option("--seed", prof_seed, "Seed for synapse instantiation");
    prof->add_option("--out", prof_out, "Directory for the run manifest");

    // eval ------------------------------------------------------------
    auto* ev = app.add_subcommand(
        "eval", "End-to-end evaluation: raster -> fit -> sweeps in all four ablation modes");
    std::string ev_config, ev_out, ev_source = "bernoulli";
    std::size_t ev_bins = 2000;
    double ev_rate = 0.3, ev_dt = 1.0;
    std::uint64_t ev_seed = 0;
    SamplerFlags ev_flags{100000, 1000, 200};
    ev->add_option("--config", ev_config, "Network/machine config file")->required();
    ev->add_option("--source", ev_source, "Reference raster source: bernoulli | model");
    ev->add_option("--bins", ev_bins, "Reference raster bin count")->check(CLI::PositiveNumber);
    ev->add_option("--rate", ev_rate, "Bernoulli per-bin spike probability")
        ->check(CLI::Range(0.0, 1.0));
    ev->add_option("--dt", ev_dt, "Bin width (ms)")->check(CLI::PositiveNumber);
    ev_flags.attach(ev);
    ev->add_option("--seed", ev_seed, "Master seed");
    ev->add_option("--out", ev_out, "Output directory")->required();

    // replay ----------------------------------------------------------
    auto* rep = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
    std::string rep_manifest;
    rep->add_option("manifest", rep_manifest, "Manifest file")->required();

    std::vector<const char*> argv;
    argv.push_back("snncost");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (fit->parsed()) {
        const SpikeRaster raster = load_raster(fit_raster, fit_n, fit_horizon);
        write_model(fit_out, fit_model(raster, fit_dt));
        write_manifest(fit_out + ".manifest.json", "fit", args,
                       {{"n", fit_n}, {"horizon", fit_horizon}, {"dt", fit_dt}}, {fit_raster},
                       {fit_out});
        return 0;
    }

    if (smp->parsed()) {
        const IsingModel model = read_model(smp_model);
        write_states(smp_out, sample(model, smp_flags.params(smp_seed)));
        write_manifest(smp_out + ".manifest.json", "sample", args,
                       {{"seed", smp_seed},
                        {"steps_eq", smp_flags.steps_eq},
                        {"interval", smp_flags.interval},
                        {"count", smp_flags.count}},
                       {smp_model}, {smp_out});
        return 0;
    }

    if (cost->parsed()) {
        if (cost_model.empty() == cost_states.empty()) {
            throw std::runtime_error("cost: give exactly one of --model and --states");
        }
        const ExperimentConfig cfg = load_config(cost_config);
        CostConstants constants = cfg.constants;
        if (cost_ic) constants.intra_core = *cost_ic;
        if (cost_scdc) constants.same_chip = *cost_scdc;
        if (cost_dc) constants.inter_chip = *cost_dc;
        const WeightingMode mode = parse_weighting_mode(cost_weighting);
        const DeploymentConfiguration config = build_config(cfg, cost_k);

        const std::size_t n = static_cast<std::size_t>(cfg.snn.total_neurons());
        IsingModel model = IsingModel::zeros(n);
        std::vector<SpikeState> states;
        std::vector<std::string> input_files{cost_config};
        if (!cost_model.empty()) {
            model = read_model(cost_model);
            states = sample(model, cost_flags.params(cost_seed));
            input_files.push_back(cost_model);
        } else {
            states = read_states(cost_states);
            input_files.push_back(cost_states);
            if (mode == WeightingMode::boltzmann_reweight) {
                throw std::runtime_error(
                    "cost: boltzmann_reweight over a states file needs --model for the energies");
            }
        }
        const double value = expected_cost(config, states, model, cfg.snn, constants, mode);
        if (cost_csv) {
            std::cout << "predicted_cost,slices,chips_in_use,weighting\n"
                      << fmt_double(value) << "," << config.slices().size() << ","
                      << config.chips_in_use() << "," << to_string(mode) << "\n";
        } else {
            std::cout << "predicted_cost " << fmt_double(value) << "\n"
                      << "slices " << config.slices().size() << "\n"
                      << "chips_in_use " << config.chips_in_use() << "\n"
                      << "weighting " << to_string(mode) << "\n";
        }
        fs::create_directories(cost_out);
        write_manifest(cost_out + "/cost.manifest.json", "cost", args,
                       {{"k", cost_k},
                        {"weighting", to_string(mode)},
                        {"seed", cost_seed},
                        {"cost_ic", constants.intra_core},
                        {"cost_scdc", constants.same_chip},
                        {"cost_dc", constants.inter_chip}},
                       input_files, {});
        return 0;
    }

    if (swp->parsed()) {
        const ExperimentConfig cfg = load_config(swp_config);
        const IsingModel model = read_model(swp_model);
        const SpikeRaster reference =
            load_raster(swp_raster, static_cast<std::size_t>(cfg.snn.total_neurons()), swp_horizon);
        std::vector<std::string> outputs;
        run_one_sweep(cfg, model, swp_flags, parse_ablation_mode(swp_mode), reference, swp_dt,
                      swp_seed, swp_out, outputs);
        write_manifest(swp_out + "/sweep.manifest.json", "sweep", args,
                       {{"mode", swp_mode},
                        {"seed", swp_seed},
                        {"horizon", swp_horizon},
                        {"dt", swp_dt},
                        {"steps_eq", swp_flags.steps_eq},
                        {"interval", swp_flags.interval},
                        {"count", swp_flags.count}},
                       {swp_config, swp_model, swp_raster}, outputs);
        return 0;
    }

    if (syn->parsed()) {
        SpikeRaster raster;
        std::vector<std::string> input_files;
        if (!syn_model.empty()) {
            if (syn_bins == 0) throw std::runtime_error("synth: --model needs --bins");
            raster = synth_raster_from_model(read_model(syn_model), syn_bins,
                                             syn_flags.params(syn_seed), syn_dt);
            input_files.push_back(syn_model);
        } else {
            if (syn_n == 0 || syn_horizon <= 0.0) {
                throw std::runtime_error("synth: Bernoulli generation needs --n and --horizon");
            }
            raster = synth_raster_bernoulli(syn_n, syn_horizon, syn_dt, syn_rate, syn_seed);
        }
        write_raster(syn_out, raster);
        write_manifest(syn_out + ".manifest.json", "synth", args,
                       {{"seed", syn_seed},
                        {"dt", syn_dt},
                        {"bins", syn_bins},
                        {"n", syn_n},
                        {"rate", syn_rate},
                        {"horizon", syn_horizon}},
                       input_files, {syn_out});
        return 0;
    }

    if (prof->parsed()) {
        const ExperimentConfig cfg = load_config(prof_config);
        PacketWeights weights = cfg.weights;
        if (prof_wi) weights.intra = *prof_wi;
        if (prof_ws) weights.same_chip = *prof_ws;
        if (prof_wd) weights.inter_chip = *prof_wd;
        const std::size_t n = static_cast<std::size_t>(cfg.snn.total_neurons());
        const SpikeRaster raster = load_raster(prof_raster, n, prof_horizon);
        const DeploymentConfiguration config = build_config(cfg, prof_k);
        const SynapseList synapses =
            instantiate_synapses(cfg.snn, derive_seed(prof_seed, kStreamSynapses));
        const CostBreakdown result = profile(raster, synapses, config, prof_dt, weights);
        std::cout << "config_id,k,energy_chips,energy_packets,time_packets\n"
                  << prof_k << "," << prof_k << "," << fmt_double(result.energy_chips) << ","
                  << fmt_double(result.energy_packets) << "," << fmt_double(result.time_packets)
                  << "\n";
        fs::create_directories(prof_out);
        write_manifest(prof_out + "/profile.manifest.json", "profile", args,
                       {{"k", prof_k},
                        {"seed", prof_seed},
                        {"horizon", prof_horizon},
                        {"dt", prof_dt},
                        {"w_intra", weights.intra},
                        {"w_samechip", weights.same_chip},
                        {"w_interchip", weights.inter_chip}},
                       {prof_config, prof_raster}, {});
        return 0;
    }

    if (ev->parsed()) {
        const ExperimentConfig cfg = load_config(ev_config);
        const std::size_t n = static_cast<std::size_t>(cfg.snn.total_neurons());
        fs::create_directories(ev_out);
        std::vector<std::string> outputs;

        SpikeRaster reference;
        if (ev_source == "bernoulli") {
            reference = synth_raster_bernoulli(n, static_cast<double>(ev_bins) * ev_dt, ev_dt,
                                               ev_rate, derive_seed(ev_seed, kStreamReference));
        } else if (ev_source == "model") {
            const IsingModel truth = ground_truth_model(n, derive_seed(ev_seed, kStreamGroundTruth));
            SamplerParams p{10000, 10, ev_bins, derive_seed(ev_seed, kStreamReference)};
            reference = synth_raster_from_model(truth, ev_bins, p, ev_dt);
            const std::string truth_path = ev_out + "/ground_truth.model";
            write_model(truth_path, truth);
            outputs.push_back(truth_path);
        } else {
            throw std::runtime_error("eval: unknown --source '" + ev_source +
                                     "' (valid: bernoulli, model)");
        }
        const std::string raster_path = ev_out + "/reference.raster";
        write_raster(raster_path, reference);
        outputs.push_back(raster_path);

        const IsingModel fitted = fit_model(reference, ev_dt);
        const std::string model_path = ev_out + "/fitted.model";
        write_model(model_path, fitted);
        outputs.push_back(model_path);

        for (AblationMode mode : {AblationMode::full, AblationMode::random_samples,
                                  AblationMode::uniform_pm, AblationMode::random_model}) {
            run_one_sweep(cfg, fitted, ev_flags, mode, reference, ev_dt, ev_seed,
                          ev_out + "/" + to_string(mode), outputs);
        }
        write_manifest(ev_out + "/eval.manifest.json", "eval", args,
                       {{"seed", ev_seed},
                        {"source", ev_source},
                        {"bins", ev_bins},
                        {"rate", ev_rate},
                        {"dt", ev_dt},
                        {"steps_eq", ev_flags.steps_eq},
                        {"interval", ev_flags.interval},
                        {"count", ev_flags.count}},
                       {ev_config}, outputs);
        return 0;
    }

    if (rep->parsed()) {
        return cmd_replay(rep_manifest);
    }

    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace snncost
