// Compares the OpenMP kernels against their serial reference
// implementations on a desk-scale workload and reports timings. Both
// paths must agree exactly; a mismatch is a bug, not noise.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "snncost/cost.hpp"
#include "snncost/profiler.hpp"
#include "snncost/rng.hpp"

using namespace snncost;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_ms(F&& f, int reps) {
    const double t0 = now_ms();
    for (int r = 0; r < reps; ++r) f();
    return (now_ms() - t0) / reps;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled (serial build)\n");
#endif

    SnnDescription snn{{{"exc", 120}, {"inh", 30}}, 0.02};
    MachineDescription machine{20, 18, 256};
    const std::size_t n = static_cast<std::size_t>(snn.total_neurons());
    const auto config = map_sequential(partition_fixed_size(snn, 8), machine);

    IsingModel model = IsingModel::zeros(n);
    Rng mr(7);
    for (std::size_t i = 0; i < n; ++i) model.set_h(i, mr.uniform01() - 0.5);

    Rng rng(42);
    std::vector<SpikeState> samples;
    for (int s = 0; s < 5000; ++s) samples.push_back(random_state(n, rng));

    CostConstants constants;
    const auto mode = WeightingMode::boltzmann_reweight;
    double parallel_value = 0.0, serial_value = 0.0;
    const double t_par = time_ms(
        [&] { parallel_value = expected_cost(config, samples, model, snn, constants, mode); }, 5);
    const double t_ser = time_ms(
        [&] { serial_value = serial::expected_cost(config, samples, model, snn, constants, mode); },
        5);
    std::printf("expected_cost  parallel %8.2f ms   serial %8.2f ms   speedup %.2fx   %s\n", t_par,
                t_ser, t_ser / t_par, parallel_value == serial_value ? "match" : "MISMATCH");

    const SpikeRaster raster = synth_raster_bernoulli(n, 4000.0, 1.0, 0.3, 11);
    const SynapseList synapses = instantiate_synapses(snn, 13);
    CostBreakdown pb{}, sb{};
    const double p_par =
        time_ms([&] { pb = profile(raster, synapses, config, 1.0, PacketWeights{}); }, 5);
    const double p_ser =
        time_ms([&] { sb = serial::profile(raster, synapses, config, 1.0, PacketWeights{}); }, 5);
    const bool profile_match = pb.energy_chips == sb.energy_chips &&
                               pb.energy_packets == sb.energy_packets &&
                               pb.time_packets == sb.time_packets;
    std::printf("profile        parallel %8.2f ms   serial %8.2f ms   speedup %.2fx   %s\n", p_par,
                p_ser, p_ser / p_par, profile_match ? "match" : "MISMATCH");

    return parallel_value == serial_value && profile_match ? 0 : 1;
}
