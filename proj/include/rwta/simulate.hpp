#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rwta/network.hpp"

namespace rwta {

struct NumericalBlowup : std::runtime_error {
    explicit NumericalBlowup(double t)
        : std::runtime_error("state magnitude exceeded 1e6 at t=" + std::to_string(t) +
                             " (dt too large or bad parameters)") {}
};

enum class Integrator { rk4, euler };

struct SimConfig {
    double dt = 0.01;                  // step, in the network's time unit
    double duration = 1000.0;
    Integrator method = Integrator::rk4;
    std::uint64_t seed = 0;
    std::vector<std::string> record;   // empty = record every neuron
    double spike_threshold = 0.0;
    double min_event_separation = 2.0;
    double burst_gap = 25.0;
    int record_stride = 1;             // keep every n-th sample
    bool record_internal = false;      // also keep v_s / v_us series
};

// Uniformly sampled voltage history of the recorded neurons.
struct Trace {
    double sample_dt = 0.0;
    std::vector<double> times;
    std::vector<std::string> ids;
    std::vector<std::vector<double>> v;     // [recorded neuron][sample]
    std::vector<std::vector<double>> v_s;   // empty unless record_internal
    std::vector<std::vector<double>> v_us;
    bool rest_fallback_used = false;

    int id_index(const std::string& id) const {
        for (size_t i = 0; i < ids.size(); ++i)
            if (ids[i] == id) return static_cast<int>(i);
        return -1;
    }
};

// Deterministic per-neuron Gaussian stream (Box-Muller over mt19937_64),
// one draw per integration step, held across the rk4 stages.
class NoiseStream {
public:
    NoiseStream() = default;
    explicit NoiseStream(std::uint64_t seed) : rng_(seed) {}
    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0, u2 = 0.0;
        do {
            u1 = std::generate_canonical<double, 53>(rng_);
        } while (u1 <= 0.0);
        u2 = std::generate_canonical<double, 53>(rng_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

private:
    std::mt19937_64 rng_{0};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

inline double evaluate_input(const InputSignal& sig, double t, NoiseStream& noise) {
    double u = evaluate_input(sig, t);
    if (sig.noise_sigma > 0) u += sig.noise_sigma * noise.next();
    return u;
}

// NetworkSpec flattened for integration: resolved endpoint indices, the
// global time_scale folded into every tau and capacitance, and the fixed
// state layout [neuron0 v,v_s,v_us | neuron1 ... | synapse filters].
class CompiledNetwork {
public:
    explicit CompiledNetwork(const NetworkSpec& net) : spec_(net) {
        const double ts = net.time_scale;
        for (const auto& n : net.neurons) {
            NeuronSpec scaled = n.spec;
            if (auto* s = std::get_if<SpikingNeuronSpec>(&scaled)) {
                s->cap *= ts;
                s->tau_s *= ts;
            } else {
                auto& b = std::get<BurstingNeuronSpec>(scaled);
                b.cap *= ts;
                b.tau_s *= ts;
                b.tau_us *= ts;
            }
            scaled_neurons_.push_back(scaled);
        }
        for (const auto& syn : net.synapses) {
            SynapseSpec scaled = syn;
            scaled.tau *= ts;
            scaled_synapses_.push_back(scaled);
            pre_.push_back(net.neuron_index(syn.pre));
            post_.push_back(net.neuron_index(syn.post));
            if (pre_.back() < 0) throw UnknownEndpoint(syn.pre);
            if (post_.back() < 0) throw UnknownEndpoint(syn.post);
        }
        inputs_.resize(net.neurons.size());
        for (size_t i = 0; i < net.neurons.size(); ++i) {
            auto it = net.inputs.find(net.neurons[i].id);
            if (it != net.inputs.end()) inputs_[i] = it->second;
        }
    }

    const NetworkSpec& spec() const { return spec_; }
    size_t n_neurons() const { return scaled_neurons_.size(); }
    size_t n_synapses() const { return scaled_synapses_.size(); }
    size_t dimension() const { return n_neurons() * 3 + n_synapses(); }
    const InputSignal& input(size_t i) const { return inputs_[i]; }
    const SynapseSpec& scaled_synapse(size_t j) const { return scaled_synapses_[j]; }

    // Rest state per neuron under its base input; linear-leak fallback for
    // neurons without a stable equilibrium. Writes dimension() doubles.
    bool initial_state(double* x) const {
        bool fallback = false;
        for (size_t i = 0; i < n_neurons(); ++i) {
            const double base = inputs_[i].base;
            NeuronState rest;
            try {
                rest = std::visit([&](const auto& s) { return resting_state(s, base); },
                                  spec_.neurons[i].spec);
            } catch (const NoEquilibrium&) {
                const double leak = std::visit([](const auto& s) { return s.leak; },
                                               spec_.neurons[i].spec);
                double v = base / leak;
                v = std::max(-20.0, std::min(20.0, v));
                rest = NeuronState{v, v, v};
                fallback = true;
            }
            x[3 * i] = rest.v;
            x[3 * i + 1] = rest.v_s;
            x[3 * i + 2] = rest.v_us;
        }
        for (size_t j = 0; j < n_synapses(); ++j)
            x[3 * n_neurons() + j] =
                scaled_synapses_[j].initial_v_filt.value_or(x[3 * pre_[j]]);
        return fallback;
    }

    // Coupled right-hand side; ext holds the per-neuron external current for
    // the current step (inputs are piecewise constant across rk4 stages).
    void rhs(const double* x, const double* ext, double* dx) const {
        const size_t nn = n_neurons();
        syn_sum_.assign(nn, 0.0);
        for (size_t j = 0; j < scaled_synapses_.size(); ++j) {
            const SynapseState ss{x[3 * nn + j]};
            syn_sum_[post_[j]] += synapse_current(ss, scaled_synapses_[j]);
        }
        for (size_t i = 0; i < nn; ++i) {
            const NeuronState s{x[3 * i], x[3 * i + 1], x[3 * i + 2]};
            const double input = ext[i] + syn_sum_[i];
            const NeuronState d = std::visit(
                [&](const auto& spec) {
                    using T = std::decay_t<decltype(spec)>;
                    if constexpr (std::is_same_v<T, SpikingNeuronSpec>)
                        return spiking_derivative(s, spec, input);
                    else
                        return bursting_derivative(s, spec, input);
                },
                scaled_neurons_[i]);
            dx[3 * i] = d.v;
            dx[3 * i + 1] = d.v_s;
            dx[3 * i + 2] = d.v_us;
        }
        for (size_t j = 0; j < scaled_synapses_.size(); ++j) {
            const SynapseState ss{x[3 * nn + j]};
            dx[3 * nn + j] = synapse_derivative(ss, x[3 * pre_[j]], scaled_synapses_[j]);
        }
    }

private:
    NetworkSpec spec_;
    std::vector<NeuronSpec> scaled_neurons_;
    std::vector<SynapseSpec> scaled_synapses_;
    std::vector<int> pre_, post_;
    std::vector<InputSignal> inputs_;
    mutable std::vector<double> syn_sum_;
};

namespace detail {

// One fixed step of the chosen method with the stage buffers supplied by
// the caller (kept out of the inner loop's allocations).
struct StepWork {
    std::vector<double> k1, k2, k3, k4, tmp;
    void resize(size_t n) {
        k1.resize(n);
        k2.resize(n);
        k3.resize(n);
        k4.resize(n);
        tmp.resize(n);
    }
};

template <typename Rhs>
void fixed_step(Integrator method, double dt, std::vector<double>& x, Rhs&& rhs,
                StepWork& w) {
    const size_t n = x.size();
    rhs(x.data(), w.k1.data());
    if (method == Integrator::euler) {
        for (size_t i = 0; i < n; ++i) x[i] += dt * w.k1[i];
        return;
    }
    for (size_t i = 0; i < n; ++i) w.tmp[i] = x[i] + 0.5 * dt * w.k1[i];
    rhs(w.tmp.data(), w.k2.data());
    for (size_t i = 0; i < n; ++i) w.tmp[i] = x[i] + 0.5 * dt * w.k2[i];
    rhs(w.tmp.data(), w.k3.data());
    for (size_t i = 0; i < n; ++i) w.tmp[i] = x[i] + dt * w.k3[i];
    rhs(w.tmp.data(), w.k4.data());
    for (size_t i = 0; i < n; ++i)
        x[i] += dt / 6.0 * (w.k1[i] + 2.0 * w.k2[i] + 2.0 * w.k3[i] + w.k4[i]);
}

inline void check_finite(const std::vector<double>& x, double t) {
    for (double v : x)
        if (!(std::abs(v) <= 1e6)) throw NumericalBlowup(t);
}

}  // namespace detail

// Fixed-step integration of the full coupled system. Deterministic for a
// given (net, cfg, initial); throws NumericalBlowup if any state leaves
// [-1e6, 1e6].
inline Trace run(const NetworkSpec& net, const SimConfig& cfg,
                 const std::vector<double>* initial = nullptr) {
    if (!(cfg.dt > 0) || cfg.duration < cfg.dt)
        throw std::invalid_argument("run: need dt > 0 and duration >= dt");
    const CompiledNetwork sys(net);
    std::vector<double> x;
    Trace trace;
    if (initial) {
        if (initial->size() != sys.dimension())
            throw std::invalid_argument("run: initial state has wrong dimension");
        x = *initial;
    } else {
        x.assign(sys.dimension(), 0.0);
        trace.rest_fallback_used = sys.initial_state(x.data());
    }

    std::vector<int> rec;
    if (cfg.record.empty()) {
        for (size_t i = 0; i < sys.n_neurons(); ++i) rec.push_back(static_cast<int>(i));
    } else {
        for (const auto& id : cfg.record) {
            const int idx = net.neuron_index(id);
            if (idx < 0) throw UnknownEndpoint(id);
            rec.push_back(idx);
        }
    }
    for (int idx : rec) trace.ids.push_back(net.neurons[idx].id);
    trace.sample_dt = cfg.dt * cfg.record_stride;
    trace.v.resize(rec.size());
    if (cfg.record_internal) {
        trace.v_s.resize(rec.size());
        trace.v_us.resize(rec.size());
    }

    std::vector<NoiseStream> noise;
    noise.reserve(sys.n_neurons());
    for (size_t i = 0; i < sys.n_neurons(); ++i)
        noise.emplace_back(cfg.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL * (i + 1));

    const auto n_steps = static_cast<std::int64_t>(std::llround(cfg.duration / cfg.dt));
    std::vector<double> ext(sys.n_neurons(), 0.0);
    detail::StepWork work;
    work.resize(sys.dimension());

    const auto record_sample = [&](double t) {
        trace.times.push_back(t);
        for (size_t r = 0; r < rec.size(); ++r) {
            trace.v[r].push_back(x[3 * rec[r]]);
            if (cfg.record_internal) {
                trace.v_s[r].push_back(x[3 * rec[r] + 1]);
                trace.v_us[r].push_back(x[3 * rec[r] + 2]);
            }
        }
    };

    record_sample(0.0);
    for (std::int64_t step = 0; step < n_steps; ++step) {
        const double t = step * cfg.dt;
        for (size_t i = 0; i < sys.n_neurons(); ++i)
            ext[i] = evaluate_input(sys.input(i), t, noise[i]);
        detail::fixed_step(cfg.method, cfg.dt, x,
                           [&](const double* xs, double* dxs) { sys.rhs(xs, ext.data(), dxs); },
                           work);
        detail::check_finite(x, t + cfg.dt);
        if ((step + 1) % cfg.record_stride == 0) record_sample((step + 1) * cfg.dt);
    }
    return trace;
}

}  // namespace rwta
