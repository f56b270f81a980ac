#pragma once

#include <string>
#include <vector>

#include "snncost/cost.hpp"
#include "snncost/deployment.hpp"
#include "snncost/ising.hpp"
#include "snncost/profiler.hpp"
#include "snncost/raster.hpp"
#include "snncost/sweep.hpp"

namespace snncost {

// Shortest round-trippable decimal form (%.17g).
std::string fmt_double(double v);

// Model file: `n=<int>`, then `h <i> <value>` for every i, then
// `j <i> <j> <value>` for i<j with nonzero coupling.
void write_model(const std::string& path, const IsingModel& model);
IsingModel read_model(const std::string& path);

// Raster file: `<neuron_id> <time_ms>` per line; `#` comments and blank
// lines are ignored.
SpikeRaster load_raster(const std::string& path, std::size_t n, double horizon_ms);
void write_raster(const std::string& path, const SpikeRaster& raster);

// States file: one +/- string of length n per line.
void write_states(const std::string& path, const std::vector<SpikeState>& states);
std::vector<SpikeState> read_states(const std::string& path);

struct ExperimentConfig {
    SnnDescription snn;
    MachineDescription machine;
    CostConstants constants;
    PacketWeights weights;
};

// key=value text; keys: population.<name>.size, connection_probability,
// machine.chips, machine.cores_per_chip, machine.core_capacity,
// cost.ic, cost.scdc, cost.dc, profile.w_intra, profile.w_samechip,
// profile.w_interchip.
ExperimentConfig load_config(const std::string& path);

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
void write_sweep_summary(const std::string& path, const SweepResult& result,
                         const std::vector<std::pair<std::string, std::string>>& provenance);

// FNV-1a 64-bit digest of a file's bytes, as hex.
std::string digest_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace snncost
