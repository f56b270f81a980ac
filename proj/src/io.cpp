#include "snncost/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace snncost {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_model(const std::string& path, const IsingModel& model) {
    std::ostringstream out;
    out << "n=" << model.n() << "\n";
    for (std::size_t i = 0; i < model.n(); ++i) {
        out << "h " << i << " " << fmt_double(model.h(i)) << "\n";
    }
    for (std::size_t i = 0; i < model.n(); ++i) {
        for (std::size_t j = i + 1; j < model.n(); ++j) {
            if (model.j(i, j) != 0.0) {
                out << "j " << i << " " << j << " " << fmt_double(model.j(i, j)) << "\n";
            }
        }
    }
    write_text_file(path, out.str());
}

IsingModel read_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("n=", 0) != 0) {
        throw std::runtime_error("model file " + path + " must start with 'n=<int>'");
    }
    const std::size_t n = std::stoul(line.substr(2));
    IsingModel model = IsingModel::zeros(n);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag == "h") {
            std::size_t i;
            double v;
            if (!(ss >> i >> v) || i >= n) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad h line");
            }
            model.set_h(i, v);
        } else if (tag == "j") {
            std::size_t i, j;
            double v;
            if (!(ss >> i >> j >> v) || i >= n || j >= n || i == j) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad j line");
            }
            model.set_coupling(i, j, v); // symmetrizes; diagonal stays zero
        } else {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": unknown record '" + tag + "'");
        }
    }
    return model;
}

SpikeRaster load_raster(const std::string& path, std::size_t n, double horizon_ms) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open raster file: " + path);
    SpikeRaster raster;
    raster.n = n;
    raster.horizon_ms = horizon_ms;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ss(line);
        long id;
        double t;
        std::string rest;
        if (!(ss >> id >> t) || (ss >> rest, !rest.empty())) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed event line");
        }
        if (id < 0 || static_cast<std::size_t>(id) >= n) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": neuron " +
                                     std::to_string(id) + " outside [0," + std::to_string(n) + ")");
        }
        if (t < 0.0 || t >= horizon_ms) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": event (" +
                                     std::to_string(id) + ", " + fmt_double(t) +
                                     ") outside horizon [0," + fmt_double(horizon_ms) + ")");
        }
        raster.events.push_back({static_cast<int>(id), t});
    }
    return raster;
}

void write_raster(const std::string& path, const SpikeRaster& raster) {
    std::ostringstream out;
    for (const auto& ev : raster.events) {
        out << ev.neuron << " " << fmt_double(ev.time_ms) << "\n";
    }
    write_text_file(path, out.str());
}

void write_states(const std::string& path, const std::vector<SpikeState>& states) {
    std::ostringstream out;
    for (const auto& s : states) {
        for (auto v : s) out << (v > 0 ? '+' : '-');
        out << "\n";
    }
    write_text_file(path, out.str());
}

std::vector<SpikeState> read_states(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open states file: " + path);
    std::vector<SpikeState> states;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        SpikeState s(line.size());
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '+') s[i] = 1;
            else if (line[i] == '-') s[i] = -1;
            else {
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": states lines may contain only '+' and '-'");
            }
        }
        states.push_back(std::move(s));
    }
    return states;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key.rfind("population.", 0) == 0 && key.size() > 16 &&
                key.compare(key.size() - 5, 5, ".size") == 0) {
                const std::string name = key.substr(11, key.size() - 16);
                cfg.snn.populations.push_back({name, std::stoi(value)});
            } else if (key == "connection_probability") {
                cfg.snn.connection_probability = std::stod(value);
            } else if (key == "machine.chips") {
                cfg.machine.chip_count = std::stoi(value);
            } else if (key == "machine.cores_per_chip") {
                cfg.machine.cores_per_chip = std::stoi(value);
            } else if (key == "machine.core_capacity") {
                cfg.machine.core_capacity = std::stoi(value);
            } else if (key == "cost.ic") {
                cfg.constants.intra_core = std::stod(value);
            } else if (key == "cost.scdc") {
                cfg.constants.same_chip = std::stod(value);
            } else if (key == "cost.dc") {
                cfg.constants.inter_chip = std::stod(value);
            } else if (key == "profile.w_intra") {
                cfg.weights.intra = std::stod(value);
            } else if (key == "profile.w_samechip") {
                cfg.weights.same_chip = std::stod(value);
            } else if (key == "profile.w_interchip") {
                cfg.weights.inter_chip = std::stod(value);
            } else {
                throw std::runtime_error("unknown key '" + key + "'");
            }
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": bad value for '" +
                                     key + "'");
        }
    }
    return cfg;
}

namespace {

std::string fmt_metric(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "k,slices,chips_in_use,predicted_cost,energy_chips,energy_packets,time_packets,status\n";
    for (const auto& r : rows) {
        out << r.k << "," << r.slices << "," << r.chips_in_use << ","
            << fmt_metric(r.predicted_cost) << "," << fmt_metric(r.reference.energy_chips) << ","
            << fmt_metric(r.reference.energy_packets) << ","
            << fmt_metric(r.reference.time_packets) << "," << r.status << "\n";
    }
    write_text_file(path, out.str());
}

void write_sweep_summary(const std::string& path, const SweepResult& result,
                         const std::vector<std::pair<std::string, std::string>>& provenance) {
    std::ostringstream out;
    out << "metric,pearson\n";
    for (const auto& [metric, value] : result.correlations) {
        out << metric << "," << fmt_metric(value) << "\n";
    }
    for (const auto& [key, value] : provenance) {
        out << key << "," << value << "\n";
    }
    write_text_file(path, out.str());
}

std::string digest_file(const std::string& path) {
    const std::string data = read_text_file(path);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace snncost
