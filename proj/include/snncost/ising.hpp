#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "snncost/rng.hpp"

namespace snncost {

// One network spike emission state: s_i = +1 (spike) or -1 (silent).
using SpikeState = std::vector<std::int8_t>;

// Pairwise Ising-type model with energy
//   E(s) = -sum_{i<j} J_ij s_i s_j - sum_i h_i s_i
// J is symmetric with zero diagonal; both invariants are enforced on
// every construction path.
class IsingModel {
public:
    IsingModel(std::vector<double> h, std::vector<double> j_row_major);
    static IsingModel zeros(std::size_t n);

    std::size_t n() const { return h_.size(); }
    double h(std::size_t i) const { return h_[i]; }
    double j(std::size_t i, std::size_t k) const { return j_[i * n() + k]; }
    const double* j_row(std::size_t i) const { return j_.data() + i * n(); }
    const std::vector<double>& h_vec() const { return h_; }

    void set_h(std::size_t i, double v) { h_[i] = v; }
    // Sets J_ij and J_ji; i == j is rejected.
    void set_coupling(std::size_t i, std::size_t k, double v);

private:
    std::vector<double> h_;
    std::vector<double> j_; // n*n row-major
};

struct SamplerParams {
    std::uint64_t steps_eq = 10000;       // burn-in Monte Carlo moves
    std::uint64_t sample_interval = 10;   // moves between retained samples
    std::size_t sample_count = 1000;
    std::uint64_t seed = 0;
};

void validate_sampler_params(const SamplerParams& p);

// Exact enumeration is guarded at 2^20 states.
inline constexpr std::size_t kExactEnumerationLimit = 20;

double energy(const IsingModel& model, const SpikeState& state);
double unnormalized_prob(const IsingModel& model, const SpikeState& state);
double partition_function_exact(const IsingModel& model);

// Probability of every state, indexed by bitmask: bit i set <=> s_i = +1.
std::vector<double> exact_distribution(const IsingModel& model);

// E(flip_i(s)) - E(s), computed incrementally in O(n).
double delta_energy(const IsingModel& model, const SpikeState& state, std::size_t i);

// One Metropolis move: uniform index draw, then (only when dE >= 0) one
// acceptance draw. Mutates `state`; returns whether the spin flipped.
bool metropolis_move(const IsingModel& model, SpikeState& state, Rng& rng);

// Uniform random +/-1 state, one rng draw per spin.
SpikeState random_state(std::size_t n, Rng& rng);

// Burn-in then `sample_count` states spaced `sample_interval` moves apart.
std::vector<SpikeState> sample(const IsingModel& model, const SamplerParams& params);

std::size_t state_index(const SpikeState& state);
SpikeState state_from_index(std::size_t mask, std::size_t n);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

} // namespace snncost
