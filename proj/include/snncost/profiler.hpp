#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "snncost/deployment.hpp"
#include "snncost/ising.hpp"
#include "snncost/raster.hpp"

namespace snncost {

// Concrete directed synapse instantiation of an SnnDescription.
struct SynapseList {
    std::vector<std::pair<int, int>> edges; // (pre, post), no self-connections
    std::uint64_t seed = 0;
};

// Per-packet-class weights for the profiler, on the same scale as the
// predictor's cost constants.
struct PacketWeights {
    double intra = 0.1;
    double same_chip = 0.2;
    double inter_chip = 1.0;
};

// Synthetic stand-in for hardware profiling output; all values are
// unitless proxies.
struct CostBreakdown {
    double energy_chips = 0.0;   // chips-in-use x bins
    double energy_packets = 0.0; // class-weighted packet count
    double time_packets = 0.0;   // sum over bins of max per-chip outgoing inter-chip packets
};

SpikeRaster synth_raster_bernoulli(std::size_t n, double horizon_ms, double dt, double rate,
                                   std::uint64_t seed);

// One Metropolis sample per time bin; spikes recorded for s_i = +1.
SpikeRaster synth_raster_from_model(const IsingModel& model, std::size_t bins,
                                    const SamplerParams& params, double dt = 1.0);

SynapseList instantiate_synapses(const SnnDescription& snn, std::uint64_t seed);

CostBreakdown profile(const SpikeRaster& raster, const SynapseList& synapses,
                      const DeploymentConfiguration& config, double dt,
                      const PacketWeights& weights);

namespace serial {
CostBreakdown profile(const SpikeRaster& raster, const SynapseList& synapses,
                      const DeploymentConfiguration& config, double dt,
                      const PacketWeights& weights);
} // namespace serial

} // namespace snncost
