#include "snncost/raster.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace snncost {

BinnedRaster bin_raster(const SpikeRaster& raster, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("bin width dt must be > 0");
    BinnedRaster binned;
    binned.n = raster.n;
    binned.dt = dt;
    binned.bins = static_cast<std::size_t>(std::ceil(raster.horizon_ms / dt));
    binned.cells.assign(binned.bins * binned.n, 0);
    for (const auto& ev : raster.events) {
        auto t = static_cast<std::size_t>(ev.time_ms / dt);
        if (t >= binned.bins) t = binned.bins - 1; // guard float edge at horizon
        binned.cells[t * binned.n + static_cast<std::size_t>(ev.neuron)] = 1;
    }
    return binned;
}

namespace {

void check_index(const BinnedRaster& binned, std::size_t i) {
    if (i >= binned.n) {
        throw std::out_of_range("neuron index " + std::to_string(i) + " out of range for n=" +
                                std::to_string(binned.n));
    }
}

} // namespace

double observed_rate(const BinnedRaster& binned, std::size_t i) {
    check_index(binned, i);
    if (binned.bins == 0) return 0.0;
    std::size_t count = 0;
    for (std::size_t t = 0; t < binned.bins; ++t) count += binned.cells[t * binned.n + i];
    return static_cast<double>(count) / static_cast<double>(binned.bins);
}

double observed_coincidence(const BinnedRaster& binned, std::size_t i, std::size_t j) {
    check_index(binned, i);
    check_index(binned, j);
    if (binned.bins == 0) return 0.0;
    std::size_t count = 0;
    for (std::size_t t = 0; t < binned.bins; ++t) {
        count += binned.cells[t * binned.n + i] & binned.cells[t * binned.n + j];
    }
    return static_cast<double>(count) / static_cast<double>(binned.bins);
}

ObservedMoments compute_moments(const BinnedRaster& binned) {
    const std::size_t n = binned.n;
    ObservedMoments m;
    m.rate.assign(n, 0.0);
    m.coincidence.assign(n * n, 0.0);
    if (binned.bins == 0) return m;

    // Integer counts divided once at the end, so the ratios match
    // observed_rate / observed_coincidence bit-for-bit.
    std::vector<std::size_t> rate_count(n, 0);
    std::vector<std::size_t> joint_count(n * n, 0);
    std::vector<std::size_t> spikers;
    for (std::size_t t = 0; t < binned.bins; ++t) {
        spikers.clear();
        const std::uint8_t* row = binned.cells.data() + t * n;
        for (std::size_t i = 0; i < n; ++i) {
            if (row[i]) spikers.push_back(i);
        }
        for (std::size_t a = 0; a < spikers.size(); ++a) {
            rate_count[spikers[a]] += 1;
            for (std::size_t b = a + 1; b < spikers.size(); ++b) {
                joint_count[spikers[a] * n + spikers[b]] += 1;
                joint_count[spikers[b] * n + spikers[a]] += 1;
            }
        }
    }
    const auto bins = static_cast<double>(binned.bins);
    for (std::size_t i = 0; i < n; ++i) m.rate[i] = static_cast<double>(rate_count[i]) / bins;
    for (std::size_t c = 0; c < n * n; ++c) {
        m.coincidence[c] = static_cast<double>(joint_count[c]) / bins;
    }
    for (std::size_t i = 0; i < n; ++i) m.coincidence[i * n + i] = m.rate[i];
    return m;
}

IsingModel model_from_moments(const ObservedMoments& moments) {
    const std::size_t n = moments.rate.size();
    std::vector<double> j = moments.coincidence;
    for (std::size_t i = 0; i < n; ++i) j[i * n + i] = 0.0;
    return IsingModel(moments.rate, std::move(j));
}

IsingModel fit_model(const SpikeRaster& raster, double dt) {
    return model_from_moments(compute_moments(bin_raster(raster, dt)));
}

} // namespace snncost
