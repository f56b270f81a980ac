#include "snncost/ising.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace snncost {

namespace {

void check_dims(const IsingModel& model, const SpikeState& state) {
    if (state.size() != model.n()) {
        throw std::invalid_argument("state length " + std::to_string(state.size()) +
                                    " does not match model n=" + std::to_string(model.n()));
    }
}

void check_exact_limit(std::size_t n) {
    if (n > kExactEnumerationLimit) {
        throw std::invalid_argument("exact enumeration refused for n=" + std::to_string(n) +
                                    " (limit n<=" + std::to_string(kExactEnumerationLimit) + ")");
    }
}

} // namespace

IsingModel::IsingModel(std::vector<double> h, std::vector<double> j_row_major)
    : h_(std::move(h)), j_(std::move(j_row_major)) {
    const std::size_t n = h_.size();
    if (j_.size() != n * n) {
        throw std::invalid_argument("coupling matrix size " + std::to_string(j_.size()) +
                                    " does not match n*n=" + std::to_string(n * n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (j_[i * n + i] != 0.0) {
            throw std::invalid_argument("coupling diagonal must be zero at index " + std::to_string(i));
        }
        for (std::size_t k = i + 1; k < n; ++k) {
            if (j_[i * n + k] != j_[k * n + i]) {
                throw std::invalid_argument("coupling matrix not symmetric at (" + std::to_string(i) +
                                            "," + std::to_string(k) + ")");
            }
        }
    }
}

IsingModel IsingModel::zeros(std::size_t n) {
    return IsingModel(std::vector<double>(n, 0.0), std::vector<double>(n * n, 0.0));
}

void IsingModel::set_coupling(std::size_t i, std::size_t k, double v) {
    if (i == k) {
        throw std::invalid_argument("self-coupling is not representable (diagonal is fixed at zero)");
    }
    j_[i * n() + k] = v;
    j_[k * n() + i] = v;
}

void validate_sampler_params(const SamplerParams& p) {
    if (p.sample_interval < 1) throw std::invalid_argument("sample_interval must be >= 1");
    if (p.sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
}

double energy(const IsingModel& model, const SpikeState& state) {
    check_dims(model, state);
    const std::size_t n = model.n();
    double e = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        e -= model.h(i) * state[i];
        const double* row = model.j_row(i);
        double acc = 0.0;
        for (std::size_t k = i + 1; k < n; ++k) acc += row[k] * state[k];
        e -= acc * state[i];
    }
    return e;
}

double unnormalized_prob(const IsingModel& model, const SpikeState& state) {
    return std::exp(-energy(model, state));
}

double partition_function_exact(const IsingModel& model) {
    check_exact_limit(model.n());
    const std::size_t count = std::size_t{1} << model.n();
    double z = 0.0;
    for (std::size_t mask = 0; mask < count; ++mask) {
        z += std::exp(-energy(model, state_from_index(mask, model.n())));
    }
    return z;
}

std::vector<double> exact_distribution(const IsingModel& model) {
    check_exact_limit(model.n());
    const std::size_t count = std::size_t{1} << model.n();
    std::vector<double> negE(count);
    double max_negE = -1e300;
    for (std::size_t mask = 0; mask < count; ++mask) {
        negE[mask] = -energy(model, state_from_index(mask, model.n()));
        if (negE[mask] > max_negE) max_negE = negE[mask];
    }
    double z = 0.0;
    for (std::size_t mask = 0; mask < count; ++mask) {
        negE[mask] = std::exp(negE[mask] - max_negE);
        z += negE[mask];
    }
    for (auto& p : negE) p /= z;
    return negE;
}

double delta_energy(const IsingModel& model, const SpikeState& state, std::size_t i) {
    check_dims(model, state);
    if (i >= model.n()) {
        throw std::out_of_range("spin index " + std::to_string(i) + " out of range for n=" +
                                std::to_string(model.n()));
    }
    const std::size_t n = model.n();
    const double* row = model.j_row(i);
    double field = model.h(i);
    for (std::size_t k = 0; k < n; ++k) field += row[k] * state[k]; // J_ii = 0
    return 2.0 * state[i] * field;
}

bool metropolis_move(const IsingModel& model, SpikeState& state, Rng& rng) {
    const std::size_t i = rng.index(model.n());
    const double de = delta_energy(model, state, i);
    if (de < 0.0 || rng.uniform01() < std::exp(-de)) {
        state[i] = static_cast<std::int8_t>(-state[i]);
        return true;
    }
    return false;
}

SpikeState random_state(std::size_t n, Rng& rng) {
    SpikeState s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = rng.coin() ? std::int8_t{1} : std::int8_t{-1};
    return s;
}

std::vector<SpikeState> sample(const IsingModel& model, const SamplerParams& params) {
    validate_sampler_params(params);
    Rng rng(params.seed);
    SpikeState state = random_state(model.n(), rng);
    for (std::uint64_t m = 0; m < params.steps_eq; ++m) metropolis_move(model, state, rng);
    std::vector<SpikeState> samples;
    samples.reserve(params.sample_count);
    for (std::size_t c = 0; c < params.sample_count; ++c) {
        for (std::uint64_t m = 0; m < params.sample_interval; ++m) metropolis_move(model, state, rng);
        samples.push_back(state);
    }
    return samples;
}

std::size_t state_index(const SpikeState& state) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (state[i] > 0) mask |= std::size_t{1} << i;
    }
    return mask;
}

SpikeState state_from_index(std::size_t mask, std::size_t n) {
    SpikeState s(n);
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = (mask >> i) & 1 ? std::int8_t{1} : std::int8_t{-1};
    }
    return s;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw std::invalid_argument("distribution size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] - q[i]);
    return 0.5 * acc;
}

} // namespace snncost
