#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snncost/cost.hpp"
#include "snncost/deployment.hpp"
#include "snncost/ising.hpp"
#include "snncost/profiler.hpp"

namespace snncost {

// Sample Pearson correlation coefficient. Throws when either series has
// zero variance (correlation undefined, never silently 0).
double pearson(std::span<const double> xs, std::span<const double> ys);

// full           - fitted model, Metropolis samples, montecarlo weighting
// random_samples - fitted model, uniform random states, Boltzmann reweighting
// uniform_pm     - fitted model, Metropolis samples, p_m(s)=1 weighting
// random_model   - random H,J per configuration, uniform random states,
//                  Boltzmann reweighting
enum class AblationMode { full, random_samples, uniform_pm, random_model };

AblationMode parse_ablation_mode(const std::string& name);
std::string to_string(AblationMode mode);

struct ConfigCandidate {
    int k = 0;
    std::optional<DeploymentConfiguration> config;
    std::string reason; // empty when feasible
};

// One entry per k in enumerate_fixed_sizes; infeasible k carry a reason.
std::vector<ConfigCandidate> generate_all_configs(const SnnDescription& snn,
                                                  const MachineDescription& machine);

struct SweepRow {
    int k = 0;
    int slices = 0;
    int chips_in_use = 0;
    double predicted_cost = 0.0;
    CostBreakdown reference;
    std::string status = "ok"; // "ok" or "skipped:<reason>"
};

struct SweepInputs {
    SnnDescription snn;
    MachineDescription machine;
    IsingModel model = IsingModel::zeros(0);
    SamplerParams sampler;
    CostConstants constants;
    AblationMode mode = AblationMode::full;
    SpikeRaster reference_raster; // shared across all k
    double dt = 1.0;
    PacketWeights weights;
    std::uint64_t master_seed = 0;
    std::string sample_dir; // when nonempty, per-k sample files are written here
};

struct SweepResult {
    std::vector<SweepRow> rows; // sorted by k
    // (metric name, pearson vs predicted_cost) over the "ok" rows
    std::vector<std::pair<std::string, double>> correlations;
};

SweepResult run_sweep(const SweepInputs& inputs);

} // namespace snncost
