#include "snncost/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "snncost/io.hpp"
#include "snncost/rng.hpp"

namespace snncost {

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("pearson: length mismatch (" + std::to_string(xs.size()) +
                                    " vs " + std::to_string(ys.size()) + ")");
    }
    if (xs.size() < 2) throw std::invalid_argument("pearson: need at least 2 points");
    const auto count = static_cast<double>(xs.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= count;
    mean_y /= count;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::domain_error("pearson: undefined for a zero-variance series");
    }
    return sxy / std::sqrt(sxx * syy);
}

AblationMode parse_ablation_mode(const std::string& name) {
    if (name == "full") return AblationMode::full;
    if (name == "random_samples") return AblationMode::random_samples;
    if (name == "uniform_pm") return AblationMode::uniform_pm;
    if (name == "random_model") return AblationMode::random_model;
    throw std::invalid_argument("unknown ablation mode '" + name +
                                "' (valid: full, random_samples, uniform_pm, random_model)");
}

std::string to_string(AblationMode mode) {
    switch (mode) {
        case AblationMode::full: return "full";
        case AblationMode::random_samples: return "random_samples";
        case AblationMode::uniform_pm: return "uniform_pm";
        case AblationMode::random_model: return "random_model";
    }
    return "?";
}

std::vector<ConfigCandidate> generate_all_configs(const SnnDescription& snn,
                                                  const MachineDescription& machine) {
    std::vector<ConfigCandidate> out;
    for (int k : enumerate_fixed_sizes(snn)) {
        ConfigCandidate cand;
        cand.k = k;
        try {
            cand.config = map_sequential(partition_fixed_size(snn, k), machine);
        } catch (const std::exception& e) {
            cand.reason = e.what();
        }
        out.push_back(std::move(cand));
    }
    return out;
}

namespace {

// Sub-stream tags under the per-k seed.
constexpr std::uint64_t kStreamSampler = 1;
constexpr std::uint64_t kStreamRandomStates = 2;
constexpr std::uint64_t kStreamRandomModel = 3;

IsingModel random_model_like(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    IsingModel model = IsingModel::zeros(n);
    for (std::size_t i = 0; i < n; ++i) model.set_h(i, rng.uniform01());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) model.set_coupling(i, j, rng.uniform01());
    }
    return model;
}

std::string sample_file_name(const std::string& dir, int k) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "k%04d.states", k);
    return dir + "/" + buf;
}

} // namespace

SweepResult run_sweep(const SweepInputs& inputs) {
    const std::size_t n = static_cast<std::size_t>(inputs.snn.total_neurons());
    if (inputs.model.n() != n && (inputs.mode == AblationMode::full ||
                                  inputs.mode == AblationMode::random_samples ||
                                  inputs.mode == AblationMode::uniform_pm)) {
        throw std::invalid_argument("model n=" + std::to_string(inputs.model.n()) +
                                    " does not match network neuron count " + std::to_string(n));
    }
    validate_sampler_params(inputs.sampler);
    if (!inputs.sample_dir.empty()) {
        std::filesystem::create_directories(inputs.sample_dir);
    }

    const auto candidates = generate_all_configs(inputs.snn, inputs.machine);
    const SynapseList synapses =
        instantiate_synapses(inputs.snn, derive_seed(inputs.master_seed, 0x53594e)); // "SYN"

    SweepResult result;
    result.rows.resize(candidates.size());

    const auto count = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t idx = 0; idx < count; ++idx) {
        const auto& cand = candidates[static_cast<std::size_t>(idx)];
        SweepRow& row = result.rows[static_cast<std::size_t>(idx)];
        row.k = cand.k;
        if (!cand.config) {
            row.status = "skipped:" + cand.reason;
            continue;
        }
        const DeploymentConfiguration& config = *cand.config;
        row.slices = static_cast<int>(config.slices().size());
        row.chips_in_use = config.chips_in_use();

        const std::uint64_t seed_k = derive_seed(inputs.master_seed, static_cast<std::uint64_t>(cand.k));

        std::vector<SpikeState> samples;
        const IsingModel* weighting_model = &inputs.model;
        IsingModel local_model = IsingModel::zeros(0);
        WeightingMode weighting = WeightingMode::montecarlo;
        switch (inputs.mode) {
            case AblationMode::full:
            case AblationMode::uniform_pm: {
                SamplerParams p = inputs.sampler;
                p.seed = derive_seed(seed_k, kStreamSampler);
                samples = sample(inputs.model, p);
                weighting = inputs.mode == AblationMode::full ? WeightingMode::montecarlo
                                                              : WeightingMode::uniform_one;
                break;
            }
            case AblationMode::random_samples:
            case AblationMode::random_model: {
                Rng rng(derive_seed(seed_k, kStreamRandomStates));
                samples.reserve(inputs.sampler.sample_count);
                for (std::size_t c = 0; c < inputs.sampler.sample_count; ++c) {
                    samples.push_back(random_state(n, rng));
                }
                if (inputs.mode == AblationMode::random_model) {
                    local_model = random_model_like(n, derive_seed(seed_k, kStreamRandomModel));
                    weighting_model = &local_model;
                }
                weighting = WeightingMode::boltzmann_reweight;
                break;
            }
        }

        if (!inputs.sample_dir.empty()) {
            write_states(sample_file_name(inputs.sample_dir, cand.k), samples);
        }

        row.predicted_cost = expected_cost(config, samples, *weighting_model, inputs.snn,
                                           inputs.constants, weighting);
        row.reference = profile(inputs.reference_raster, synapses, config, inputs.dt, inputs.weights);
    }

    std::vector<double> predicted, e_chips, e_packets, t_packets;
    for (const auto& row : result.rows) {
        if (row.status != "ok") continue;
        predicted.push_back(row.predicted_cost);
        e_chips.push_back(row.reference.energy_chips);
        e_packets.push_back(row.reference.energy_packets);
        t_packets.push_back(row.reference.time_packets);
    }
    auto corr = [&](const std::vector<double>& ys) {
        try {
            return pearson(predicted, ys);
        } catch (const std::exception&) {
            return std::nan("");
        }
    };
    result.correlations = {{"energy_chips", corr(e_chips)},
                           {"energy_packets", corr(e_packets)},
                           {"time_packets", corr(t_packets)}};
    return result;
}

} // namespace snncost
