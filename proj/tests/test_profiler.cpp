#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "snncost/profiler.hpp"
#include "snncost/raster.hpp"

using namespace snncost;

namespace {

DeploymentConfiguration simple_config(const SnnDescription& snn, int k,
                                      const MachineDescription& machine) {
    return map_sequential(partition_fixed_size(snn, k), machine);
}

} // namespace

TEST_CASE("bernoulli generator: extreme rates") {
    CHECK(synth_raster_bernoulli(4, 10.0, 1.0, 0.0, 1).events.empty());
    CHECK(synth_raster_bernoulli(4, 10.0, 1.0, 1.0, 1).events.size() == 40);
    CHECK_THROWS(synth_raster_bernoulli(4, 10.0, 1.0, 1.5, 1));
}

TEST_CASE("bernoulli generator: empirical rate concentration") {
    const auto raster = synth_raster_bernoulli(100, 10000.0, 1.0, 0.3, 7);
    const auto binned = bin_raster(raster, 1.0);
    for (std::size_t i = 0; i < 100; ++i) {
        CHECK(std::abs(observed_rate(binned, i) - 0.3) < 0.02);
    }
}

TEST_CASE("bernoulli generator is deterministic per seed") {
    const auto a = synth_raster_bernoulli(10, 100.0, 1.0, 0.4, 9);
    const auto b = synth_raster_bernoulli(10, 100.0, 1.0, 0.4, 9);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t e = 0; e < a.events.size(); ++e) {
        CHECK(a.events[e].neuron == b.events[e].neuron);
        CHECK(a.events[e].time_ms == b.events[e].time_ms);
    }
}

TEST_CASE("model-driven generator: zero model gives half-rate spiking") {
    const IsingModel z = IsingModel::zeros(5);
    const auto raster = synth_raster_from_model(z, 10000, {1000, 3, 1, 17});
    const auto binned = bin_raster(raster, 1.0);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(observed_rate(binned, i) == doctest::Approx(0.5).epsilon(0.04));
    }
}

TEST_CASE("model-driven generator: strong biases dominate") {
    IsingModel m = IsingModel::zeros(3);
    m.set_h(0, 10.0);
    m.set_h(1, -10.0);
    m.set_h(2, -10.0);
    const auto raster = synth_raster_from_model(m, 2000, {2000, 2, 1, 23});
    const auto binned = bin_raster(raster, 1.0);
    CHECK(observed_rate(binned, 0) > 0.99);
    CHECK(observed_rate(binned, 1) < 0.01);
    CHECK(observed_rate(binned, 2) < 0.01);
}

TEST_CASE("closed loop: fitting a model-generated raster reproduces its rates") {
    IsingModel m = IsingModel::zeros(4);
    m.set_h(0, 0.8);
    const auto raster = synth_raster_from_model(m, 500, {1000, 5, 1, 29});
    const auto binned = bin_raster(raster, 1.0);
    const auto fitted = fit_model(raster, 1.0);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(fitted.h(i) == observed_rate(binned, i));
    }
}

TEST_CASE("synapse instantiation: extreme probabilities") {
    SnnDescription none{{{"a", 3}}, 0.0};
    CHECK(instantiate_synapses(none, 1).edges.empty());

    SnnDescription all{{{"a", 3}}, 1.0};
    const auto list = instantiate_synapses(all, 1);
    CHECK(list.edges.size() == 6);
    std::set<std::pair<int, int>> unique(list.edges.begin(), list.edges.end());
    CHECK(unique.size() == 6);
    for (const auto& [pre, post] : list.edges) CHECK(pre != post);
}

TEST_CASE("synapse instantiation: count within binomial bounds") {
    SnnDescription snn{{{"a", 1200}, {"b", 300}}, 0.02};
    const auto list = instantiate_synapses(snn, 3);
    const double mean = 0.02 * 1500.0 * 1499.0;
    const double sigma = std::sqrt(mean * 0.98);
    CHECK(std::abs(static_cast<double>(list.edges.size()) - mean) < 3.0 * sigma);
}

TEST_CASE("profile: empty raster") {
    SnnDescription snn{{{"a", 4}}, 1.0};
    MachineDescription machine{2, 2, 4};
    const auto config = simple_config(snn, 2, machine);
    const SpikeRaster empty{4, 10.0, {}};
    const auto result = profile(empty, instantiate_synapses(snn, 1), config, 1.0, PacketWeights{});
    CHECK(result.energy_packets == 0.0);
    CHECK(result.time_packets == 0.0);
    CHECK(result.energy_chips == 1.0 * 10.0); // both slices fit on chip 0; chips-in-use x bins

    const SpikeRaster no_time{4, 0.0, {}};
    const auto zero = profile(no_time, instantiate_synapses(snn, 1), config, 1.0, PacketWeights{});
    CHECK(zero.energy_chips == 0.0);
}

TEST_CASE("profile: single intra-core packet") {
    SnnDescription snn{{{"a", 2}}, 0.0};
    MachineDescription machine{1, 1, 2};
    const auto config = simple_config(snn, 2, machine);
    SynapseList synapses;
    synapses.edges = {{0, 1}};
    const SpikeRaster raster{2, 5.0, {{0, 1.0}}};
    const auto result = profile(raster, synapses, config, 1.0, PacketWeights{0.1, 0.2, 1.0});
    CHECK(result.energy_packets == doctest::Approx(0.1));
    CHECK(result.time_packets == 0.0);
}

TEST_CASE("profile matches a brute-force spike-by-synapse double loop") {
    SnnDescription snn{{{"a", 12}, {"b", 6}}, 0.3};
    MachineDescription machine{3, 2, 8};
    const auto config = simple_config(snn, 4, machine);
    const auto synapses = instantiate_synapses(snn, 41);
    const auto raster = synth_raster_bernoulli(18, 50.0, 1.0, 0.4, 43);
    const PacketWeights w{0.1, 0.2, 1.0};
    const auto result = profile(raster, synapses, config, 1.0, w);

    const auto binned = bin_raster(raster, 1.0);
    double energy = 0.0;
    double time = 0.0;
    for (std::size_t t = 0; t < binned.bins; ++t) {
        std::vector<int> outgoing(3, 0);
        for (std::size_t i = 0; i < 18; ++i) {
            if (!binned.emitted(t, i)) continue;
            for (const auto& [pre, post] : synapses.edges) {
                if (pre != static_cast<int>(i)) continue;
                if (config.loc_chip(pre) != config.loc_chip(post)) {
                    energy += w.inter_chip;
                    outgoing[static_cast<std::size_t>(config.loc_chip(pre))] += 1;
                } else if (config.loc_core(pre) != config.loc_core(post)) {
                    energy += w.same_chip;
                } else {
                    energy += w.intra;
                }
            }
        }
        time += *std::max_element(outgoing.begin(), outgoing.end());
    }
    CHECK(result.energy_packets == doctest::Approx(energy).epsilon(1e-12));
    CHECK(result.time_packets == doctest::Approx(time).epsilon(1e-12));
}

TEST_CASE("everything on one core silences remote packet classes") {
    SnnDescription snn{{{"a", 8}}, 1.0};
    MachineDescription machine{2, 2, 16};
    const auto config = simple_config(snn, 8, machine);
    const auto raster = synth_raster_bernoulli(8, 20.0, 1.0, 0.5, 51);
    const auto result =
        profile(raster, instantiate_synapses(snn, 1), config, 1.0, PacketWeights{0.0, 1.0, 1.0});
    CHECK(result.energy_packets == 0.0);
    CHECK(result.time_packets == 0.0);
}

TEST_CASE("unit weights count every spike-synapse pair once") {
    SnnDescription snn{{{"a", 6}}, 0.5};
    MachineDescription machine{2, 2, 2};
    const auto config = simple_config(snn, 2, machine);
    const auto synapses = instantiate_synapses(snn, 61);
    const auto raster = synth_raster_bernoulli(6, 30.0, 1.0, 0.4, 63);
    const auto result = profile(raster, synapses, config, 1.0, PacketWeights{1.0, 1.0, 1.0});

    const auto binned = bin_raster(raster, 1.0);
    double expected = 0.0;
    for (std::size_t t = 0; t < binned.bins; ++t) {
        for (std::size_t i = 0; i < 6; ++i) {
            if (!binned.emitted(t, i)) continue;
            for (const auto& [pre, post] : synapses.edges) {
                (void)post;
                if (pre == static_cast<int>(i)) expected += 1.0;
            }
        }
    }
    CHECK(result.energy_packets == doctest::Approx(expected));
}

TEST_CASE("profile is additive over disjoint time ranges") {
    SnnDescription snn{{{"a", 6}}, 0.5};
    MachineDescription machine{2, 2, 2};
    const auto config = simple_config(snn, 2, machine);
    const auto synapses = instantiate_synapses(snn, 71);
    const auto raster = synth_raster_bernoulli(6, 40.0, 1.0, 0.3, 73);

    SpikeRaster first{6, 20.0, {}}, second{6, 20.0, {}};
    for (const auto& ev : raster.events) {
        if (ev.time_ms < 20.0) first.events.push_back(ev);
        else second.events.push_back({ev.neuron, ev.time_ms - 20.0});
    }
    const PacketWeights w{0.1, 0.2, 1.0};
    const auto whole = profile(raster, synapses, config, 1.0, w);
    const auto a = profile(first, synapses, config, 1.0, w);
    const auto b = profile(second, synapses, config, 1.0, w);
    CHECK(whole.energy_packets == doctest::Approx(a.energy_packets + b.energy_packets));
    CHECK(whole.time_packets == doctest::Approx(a.time_packets + b.time_packets));
    CHECK(whole.energy_chips == doctest::Approx(a.energy_chips + b.energy_chips));
}

TEST_CASE("parallel profile equals the serial reference exactly") {
    SnnDescription snn{{{"a", 20}, {"b", 10}}, 0.2};
    MachineDescription machine{4, 3, 8};
    const auto config = simple_config(snn, 5, machine);
    const auto synapses = instantiate_synapses(snn, 81);
    const auto raster = synth_raster_bernoulli(30, 200.0, 1.0, 0.35, 83);
    const PacketWeights w{0.1, 0.2, 1.0};
    const auto par = profile(raster, synapses, config, 1.0, w);
    const auto ser = serial::profile(raster, synapses, config, 1.0, w);
    CHECK(par.energy_chips == ser.energy_chips);
    CHECK(par.energy_packets == ser.energy_packets);
    CHECK(par.time_packets == ser.time_packets);
}
