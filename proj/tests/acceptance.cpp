// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Runs end to end on fixed seeds; every threshold is
// pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "snncost/cli.hpp"
#include "snncost/io.hpp"
#include "snncost/sweep.hpp"

using namespace snncost;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
    std::printf("%s %s (%s)\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    if (!ok) ++failures;
}

double now_s() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

IsingModel random_bounded_model(std::size_t n, std::uint64_t seed, double bound) {
    Rng rng(seed);
    IsingModel model = IsingModel::zeros(n);
    for (std::size_t i = 0; i < n; ++i) model.set_h(i, bound * (2.0 * rng.uniform01() - 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            model.set_coupling(i, j, bound * (2.0 * rng.uniform01() - 1.0));
        }
    }
    return model;
}

// 1. Sampler fidelity: TV distance vs the exact distribution.
void criterion_sampler_fidelity() {
    const double t0 = now_s();
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        const IsingModel model = random_bounded_model(8, 100 + trial, 1.0);
        const auto exact = exact_distribution(model);
        const auto samples = sample(model, {10000, 10, 50000, 200 + trial});
        std::vector<double> empirical(256, 0.0);
        for (const auto& s : samples) empirical[state_index(s)] += 1.0 / samples.size();
        worst = std::max(worst, total_variation(exact, empirical));
    }
    const double elapsed = now_s() - t0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "worst TV %.4f <= 0.05, %.1fs", worst, elapsed);
    report("1 sampler-fidelity", worst <= 0.05 && elapsed < 30.0, detail);
}

// 2. Incremental dE vs full energy recomputation.
void criterion_delta_energy() {
    double worst = 0.0;
    std::size_t probes = 0;
    for (std::size_t n : {std::size_t{2}, std::size_t{10}, std::size_t{100}}) {
        Rng pick(n);
        for (int probe = 0; probe < 1000; ++probe) {
            const IsingModel model =
                random_bounded_model(n, 1000 * n + static_cast<std::uint64_t>(probe), 1.0);
            Rng rng(7 * n + static_cast<std::uint64_t>(probe));
            SpikeState s = random_state(n, rng);
            const std::size_t i = pick.index(n);
            SpikeState flipped = s;
            flipped[i] = static_cast<std::int8_t>(-flipped[i]);
            const double err =
                std::abs(delta_energy(model, s, i) - (energy(model, flipped) - energy(model, s)));
            worst = std::max(worst, err);
            ++probes;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%zu probes, worst |err| %.2e <= 1e-9", probes, worst);
    report("2 delta-energy-consistency", worst <= 1e-9, detail);
}

// 3. Exact oracle soundness.
void criterion_exact_oracle() {
    double worst_sum = 0.0, worst_rel = 0.0;
    for (std::size_t n : {std::size_t{2}, std::size_t{5}, std::size_t{8}, std::size_t{12}}) {
        const IsingModel model = random_bounded_model(n, 40 + n, 1.0);
        const auto dist = exact_distribution(model);
        double sum = 0.0;
        for (double p : dist) sum += p;
        worst_sum = std::max(worst_sum, std::abs(sum - 1.0));

        const double z = partition_function_exact(model);
        double enumerated = 0.0;
        for (std::size_t mask = 0; mask < dist.size(); ++mask) {
            enumerated += std::exp(-energy(model, state_from_index(mask, n)));
        }
        worst_rel = std::max(worst_rel, std::abs(z - enumerated) / enumerated);
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "|sum-1| %.2e <= 1e-12, Z rel err %.2e <= 1e-9",
                  worst_sum, worst_rel);
    report("3 exact-oracle-soundness", worst_sum <= 1e-12 && worst_rel <= 1e-9, detail);
}

// 4. Fitting recovery on an independent Bernoulli raster.
void criterion_fitting_recovery() {
    const auto raster = synth_raster_bernoulli(50, 10000.0, 1.0, 0.3, 73);
    const auto model = fit_model(raster, 1.0);
    double worst_h = 0.0, worst_j = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        worst_h = std::max(worst_h, std::abs(model.h(i) - 0.3));
        for (std::size_t j = i + 1; j < 50; ++j) {
            worst_j = std::max(worst_j, std::abs(model.j(i, j) - 0.09));
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "worst |H-0.3| %.4f <= 0.02, worst |J-0.09| %.4f <= 0.01",
                  worst_h, worst_j);
    report("4 fitting-recovery", worst_h <= 0.02 && worst_j <= 0.01, detail);
}

// 5. Worked-example exactness.
void criterion_worked_example() {
    const SnnDescription snn{{{"pop", 6}}, 0.02};
    const MachineDescription machine{2, 2, 256};
    const auto config = map_sequential(partition_fixed_size(snn, 2), machine);
    SpikeState state(6, -1);
    state[0] = 1;
    const double cost = per_state_cost(state, config, snn, CostConstants{0.1, 0.2, 1.0});
    char detail[64];
    std::snprintf(detail, sizeof(detail), "cost %.15f == 1.202", cost);
    report("5 worked-example-exactness", std::abs(cost - 1.202) <= 1e-12, detail);
}

// 6. Monte Carlo expectation converges to the exact expectation.
void criterion_expectation_convergence() {
    const SnnDescription snn{{{"a", 5}, {"b", 3}}, 0.02};
    const MachineDescription machine{2, 2, 8};
    const auto config = map_sequential(partition_fixed_size(snn, 3), machine);
    const CostConstants constants{0.1, 0.2, 1.0};
    const IsingModel model = random_bounded_model(8, 55, 0.5);

    const auto dist = exact_distribution(model);
    double exact = 0.0;
    for (std::size_t mask = 0; mask < dist.size(); ++mask) {
        exact += dist[mask] * per_state_cost(state_from_index(mask, 8), config, snn, constants);
    }
    const auto samples = sample(model, {10000, 10, 50000, 56});
    const double estimate =
        expected_cost(config, samples, model, snn, constants, WeightingMode::montecarlo);
    const double rel = std::abs(estimate - exact) / exact;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "exact %.6f, estimate %.6f, rel err %.4f <= 0.02", exact,
                  estimate, rel);
    report("6 expectation-convergence", rel <= 0.02, detail);
}

SweepInputs desk_scale_inputs(AblationMode mode, const std::string& sample_dir) {
    SweepInputs in;
    in.snn = SnnDescription{{{"exc", 120}, {"inh", 30}}, 0.02};
    in.machine = MachineDescription{20, 18, 256};
    in.sampler = SamplerParams{100000, 1000, 200, 0};
    in.mode = mode;
    in.dt = 1.0;
    in.master_seed = 99;
    in.sample_dir = sample_dir;

    // Ground-truth model -> model-generated raster -> fitted model. Biases are
    // kept strongly negative and couplings weak so spiking stays sparse; the
    // fitted joint ratios then give sub-critical coupling row sums and the
    // per-k chains mix instead of locking into an all-spiking basin.
    Rng rng(1234);
    IsingModel truth = IsingModel::zeros(150);
    for (std::size_t i = 0; i < 150; ++i) truth.set_h(i, -1.6 + 0.6 * rng.uniform01());
    for (std::size_t i = 0; i < 150; ++i) {
        for (std::size_t j = i + 1; j < 150; ++j) {
            truth.set_coupling(i, j, (0.5 / 150.0) * rng.uniform01());
        }
    }
    in.reference_raster = synth_raster_from_model(truth, 2000, {10000, 10, 1, 4321}, 1.0);
    in.model = fit_model(in.reference_raster, 1.0);
    return in;
}

// 7. Desk-scale sweep: 120 rows, Pearson >= 0.7 vs energy_packets, < 5 min.
void criterion_desk_scale_sweep(const SweepResult& full, double elapsed) {
    std::size_t rows = full.rows.size();
    double r_packets = 0.0;
    for (const auto& [metric, r] : full.correlations) {
        if (metric == "energy_packets") r_packets = r;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "%zu rows == 120, pearson(predicted, energy_packets) %.4f >= 0.7, %.1fs < 300s",
                  rows, r_packets, elapsed);
    report("7 desk-scale-sweep", rows == 120 && r_packets >= 0.7 && elapsed < 300.0, detail);
}

// 8. All four ablation modes complete; full and uniform_pm share samples.
void criterion_ablations(const std::string& base, const SweepResult& full) {
    bool ok = true;
    std::string note;
    std::vector<std::pair<AblationMode, const char*>> rest = {
        {AblationMode::uniform_pm, "uniform_pm"},
        {AblationMode::random_samples, "random_samples"},
        {AblationMode::random_model, "random_model"}};
    for (const auto& [mode, name] : rest) {
        const auto result = run_sweep(desk_scale_inputs(mode, base + "/" + name));
        if (result.rows.size() != 120 || result.correlations.size() != 3) {
            ok = false;
            note += std::string(name) + " incomplete; ";
        }
    }
    std::size_t compared = 0;
    for (const auto& row : full.rows) {
        if (row.status != "ok") continue;
        char name[32];
        std::snprintf(name, sizeof(name), "k%04d.states", row.k);
        if (read_text_file(base + "/full/" + name) !=
            read_text_file(base + "/uniform_pm/" + name)) {
            ok = false;
            note += std::string("sample mismatch at ") + name + "; ";
            break;
        }
        ++compared;
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail), "4 modes completed, %zu sample files byte-identical%s%s",
                  compared, note.empty() ? "" : ", ", note.c_str());
    report("8 ablation-machinery", ok && compared > 0, detail);
}

// 9. CLI determinism via manifest replay.
void criterion_determinism() {
    const auto dir = fs::temp_directory_path() / "snncost_acceptance_replay";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string base = dir.string();
    bool ok = true;

    write_model(base + "/m.model", random_bounded_model(6, 5, 0.4));
    ok &= run_cli({"sample", "--model", base + "/m.model", "--count", "50", "--seed", "3",
                   "--out", base + "/s.states"}) == 0;
    const std::string states_digest = digest_file(base + "/s.states");
    fs::remove(base + "/s.states");
    ok &= run_cli({"replay", base + "/s.states.manifest.json"}) == 0;
    ok &= digest_file(base + "/s.states") == states_digest;

    ok &= run_cli({"synth", "--n", "6", "--horizon", "40", "--rate", "0.3", "--seed", "8",
                   "--out", base + "/r.raster"}) == 0;
    ok &= run_cli({"fit", "--raster", base + "/r.raster", "--n", "6", "--horizon", "40", "--out",
                   base + "/f.model"}) == 0;
    const std::string model_digest = digest_file(base + "/f.model");
    fs::remove(base + "/f.model");
    ok &= run_cli({"replay", base + "/f.model.manifest.json"}) == 0;
    ok &= digest_file(base + "/f.model") == model_digest;

    report("9 manifest-determinism", ok, "sample and fit replays byte-identical");
}

} // namespace

int main() {
    criterion_sampler_fidelity();
    criterion_delta_energy();
    criterion_exact_oracle();
    criterion_fitting_recovery();
    criterion_worked_example();
    criterion_expectation_convergence();

    const auto sweep_dir = fs::temp_directory_path() / "snncost_acceptance_sweep";
    fs::remove_all(sweep_dir);
    const std::string base = sweep_dir.string();
    const double t0 = now_s();
    const SweepResult full = run_sweep(desk_scale_inputs(AblationMode::full, base + "/full"));
    const double elapsed = now_s() - t0;
    criterion_desk_scale_sweep(full, elapsed);
    criterion_ablations(base, full);

    criterion_determinism();

    std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "NOT OK", failures);
    return failures == 0 ? 0 : 1;
}
