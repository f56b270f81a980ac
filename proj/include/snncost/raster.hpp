#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "snncost/ising.hpp"

namespace snncost {

struct SpikeEvent {
    int neuron;
    double time_ms;
};

// Raw spike data: unordered (neuron, time) events over [0, horizon_ms).
struct SpikeRaster {
    std::size_t n = 0;
    double horizon_ms = 0.0;
    std::vector<SpikeEvent> events;
};

// Time-binned raster: cell (t, i) is set iff neuron i has at least one
// event in [t*dt, (t+1)*dt).
struct BinnedRaster {
    std::size_t n = 0;
    std::size_t bins = 0;
    double dt = 1.0;
    std::vector<std::uint8_t> cells; // bins x n, row-major

    bool emitted(std::size_t t, std::size_t i) const { return cells[t * n + i] != 0; }
};

struct ObservedMoments {
    std::vector<double> rate;        // per-neuron emission ratio, length n
    std::vector<double> coincidence; // n*n pairwise joint emission ratio
};

BinnedRaster bin_raster(const SpikeRaster& raster, double dt);

double observed_rate(const BinnedRaster& binned, std::size_t i);
double observed_coincidence(const BinnedRaster& binned, std::size_t i, std::size_t j);

// Single pass over the binned raster; coincidence[i][i] == rate[i].
ObservedMoments compute_moments(const BinnedRaster& binned);

// Moment-setting fit: H_i = observed rate, J_ij = observed coincidence for
// i != j, diagonal forced to zero.
IsingModel fit_model(const SpikeRaster& raster, double dt = 1.0);
IsingModel model_from_moments(const ObservedMoments& moments);

} // namespace snncost
