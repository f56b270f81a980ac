#include "snncost/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "snncost/rng.hpp"

namespace snncost {

SpikeRaster synth_raster_bernoulli(std::size_t n, double horizon_ms, double dt, double rate,
                                   std::uint64_t seed) {
    if (rate < 0.0 || rate > 1.0) {
        throw std::invalid_argument("rate must lie in [0,1], got " + std::to_string(rate));
    }
    SpikeRaster raster;
    raster.n = n;
    raster.horizon_ms = horizon_ms;
    const auto bins = static_cast<std::size_t>(std::ceil(horizon_ms / dt));
    Rng rng(seed);
    for (std::size_t t = 0; t < bins; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            if (rng.uniform01() < rate) {
                raster.events.push_back({static_cast<int>(i), static_cast<double>(t) * dt});
            }
        }
    }
    return raster;
}

SpikeRaster synth_raster_from_model(const IsingModel& model, std::size_t bins,
                                    const SamplerParams& params, double dt) {
    if (bins < 1) throw std::invalid_argument("bins must be >= 1");
    SamplerParams p = params;
    p.sample_count = bins;
    const auto states = sample(model, p);
    SpikeRaster raster;
    raster.n = model.n();
    raster.horizon_ms = static_cast<double>(bins) * dt;
    for (std::size_t t = 0; t < bins; ++t) {
        for (std::size_t i = 0; i < model.n(); ++i) {
            if (states[t][i] > 0) {
                raster.events.push_back({static_cast<int>(i), static_cast<double>(t) * dt});
            }
        }
    }
    return raster;
}

SynapseList instantiate_synapses(const SnnDescription& snn, std::uint64_t seed) {
    const int n = snn.total_neurons();
    SynapseList list;
    list.seed = seed;
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (rng.uniform01() < snn.connection_probability) list.edges.emplace_back(i, j);
        }
    }
    return list;
}

namespace {

struct ProfileScratch {
    std::size_t n = 0;
    std::size_t bins = 0;
    std::vector<std::vector<int>> spikers;  // per bin
    std::vector<int> edge_offset;           // CSR over pre neuron
    std::vector<int> edge_target;
    std::vector<int> chip_of;               // per neuron
    int chips_touched = 0;
};

ProfileScratch prepare(const SpikeRaster& raster, const SynapseList& synapses,
                       const DeploymentConfiguration& config, double dt) {
    if (static_cast<int>(raster.n) != config.total_neurons()) {
        throw std::invalid_argument("raster neuron count " + std::to_string(raster.n) +
                                    " does not match deployed neuron count " +
                                    std::to_string(config.total_neurons()));
    }
    ProfileScratch s;
    s.n = raster.n;
    const BinnedRaster binned = bin_raster(raster, dt);
    s.bins = binned.bins;
    s.spikers.resize(s.bins);
    for (std::size_t t = 0; t < s.bins; ++t) {
        for (std::size_t i = 0; i < s.n; ++i) {
            if (binned.emitted(t, i)) s.spikers[t].push_back(static_cast<int>(i));
        }
    }

    s.edge_offset.assign(s.n + 1, 0);
    for (const auto& [pre, post] : synapses.edges) {
        (void)post;
        if (pre < 0 || static_cast<std::size_t>(pre) >= s.n) {
            throw std::invalid_argument("synapse pre neuron " + std::to_string(pre) +
                                        " outside raster range");
        }
        s.edge_offset[static_cast<std::size_t>(pre) + 1] += 1;
    }
    for (std::size_t i = 0; i < s.n; ++i) s.edge_offset[i + 1] += s.edge_offset[i];
    s.edge_target.resize(synapses.edges.size());
    std::vector<int> cursor(s.edge_offset.begin(), s.edge_offset.end() - 1);
    for (const auto& [pre, post] : synapses.edges) {
        s.edge_target[static_cast<std::size_t>(cursor[static_cast<std::size_t>(pre)]++)] = post;
    }

    s.chip_of.resize(s.n);
    for (std::size_t i = 0; i < s.n; ++i) s.chip_of[i] = config.loc_chip(static_cast<int>(i));
    s.chips_touched = static_cast<int>(config.occupancy().cores_in_use_per_chip.size());
    return s;
}

// Packet classification for one bin: weighted energy plus the bin's
// congestion contribution (max per-chip outgoing inter-chip count).
void profile_bin(const ProfileScratch& s, const DeploymentConfiguration& config,
                 const PacketWeights& weights, std::size_t t, double& energy_out,
                 double& time_out) {
    std::vector<int> outgoing(static_cast<std::size_t>(s.chips_touched), 0);
    double e = 0.0;
    for (int pre : s.spikers[t]) {
        const auto [pre_chip, pre_core] = config.loc_core(pre);
        const int begin = s.edge_offset[static_cast<std::size_t>(pre)];
        const int end = s.edge_offset[static_cast<std::size_t>(pre) + 1];
        for (int e_idx = begin; e_idx < end; ++e_idx) {
            const int post = s.edge_target[static_cast<std::size_t>(e_idx)];
            const auto [post_chip, post_core] = config.loc_core(post);
            if (post_chip != pre_chip) {
                e += weights.inter_chip;
                outgoing[static_cast<std::size_t>(pre_chip)] += 1;
            } else if (post_core != pre_core) {
                e += weights.same_chip;
            } else {
                e += weights.intra;
            }
        }
    }
    energy_out = e;
    time_out = outgoing.empty() ? 0.0 : *std::max_element(outgoing.begin(), outgoing.end());
}

CostBreakdown finish(const ProfileScratch& s, const DeploymentConfiguration& config,
                     const std::vector<double>& energy_per_bin,
                     const std::vector<double>& time_per_bin) {
    CostBreakdown out;
    out.energy_chips = static_cast<double>(config.chips_in_use()) * static_cast<double>(s.bins);
    for (std::size_t t = 0; t < s.bins; ++t) {
        out.energy_packets += energy_per_bin[t];
        out.time_packets += time_per_bin[t];
    }
    return out;
}

} // namespace

CostBreakdown profile(const SpikeRaster& raster, const SynapseList& synapses,
                      const DeploymentConfiguration& config, double dt,
                      const PacketWeights& weights) {
    const ProfileScratch s = prepare(raster, synapses, config, dt);
    std::vector<double> energy_per_bin(s.bins, 0.0), time_per_bin(s.bins, 0.0);
    const auto bins = static_cast<std::int64_t>(s.bins);
#pragma omp parallel for schedule(static)
    for (std::int64_t t = 0; t < bins; ++t) {
        profile_bin(s, config, weights, static_cast<std::size_t>(t),
                    energy_per_bin[static_cast<std::size_t>(t)],
                    time_per_bin[static_cast<std::size_t>(t)]);
    }
    return finish(s, config, energy_per_bin, time_per_bin);
}

namespace serial {

CostBreakdown profile(const SpikeRaster& raster, const SynapseList& synapses,
                      const DeploymentConfiguration& config, double dt,
                      const PacketWeights& weights) {
    const ProfileScratch s = prepare(raster, synapses, config, dt);
    std::vector<double> energy_per_bin(s.bins, 0.0), time_per_bin(s.bins, 0.0);
    for (std::size_t t = 0; t < s.bins; ++t) {
        profile_bin(s, config, weights, t, energy_per_bin[t], time_per_bin[t]);
    }
    return finish(s, config, energy_per_bin, time_per_bin);
}

} // namespace serial

} // namespace snncost
