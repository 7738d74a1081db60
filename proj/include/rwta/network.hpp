#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rwta/neuron.hpp"
#include "rwta/synapse.hpp"

namespace rwta {

struct DuplicateId : std::runtime_error {
    explicit DuplicateId(const std::string& id) : std::runtime_error("duplicate neuron id: " + id) {}
};
struct UnknownEndpoint : std::runtime_error {
    explicit UnknownEndpoint(const std::string& id)
        : std::runtime_error("unknown synapse endpoint: " + id) {}
};
struct SelfLoop : std::runtime_error {
    explicit SelfLoop(const std::string& id)
        : std::runtime_error("self-synapse on " + id + " requires the allow_self flag") {}
};
struct GroupTooSmall : std::runtime_error {
    GroupTooSmall() : std::runtime_error("all-to-all group needs at least 2 neurons") {}
};

enum class NeuronKind { spiking, bursting };
using NeuronSpec = std::variant<SpikingNeuronSpec, BurstingNeuronSpec>;

// Additive step/pulse on top of the base current, active on [t_start, t_end).
struct PulseSegment {
    double t_start = 0.0;
    double t_end = 0.0;
    double delta = 0.0;
};

// External drive of one neuron: constant base, pulse segments, and optional
// zero-mean Gaussian noise resampled once per integration step.
struct InputSignal {
    double base = 0.0;
    std::vector<PulseSegment> segments;
    double noise_sigma = 0.0;
};

// Deterministic part of the input; the engine adds the per-step noise draw.
inline double evaluate_input(const InputSignal& sig, double t) {
    double u = sig.base;
    for (const auto& seg : sig.segments)
        if (t >= seg.t_start && t < seg.t_end) u += seg.delta;
    return u;
}

struct NetworkNeuron {
    std::string id;
    NeuronKind kind = NeuronKind::spiking;
    NeuronSpec spec;
};

// Complete description of a circuit: neurons and synapses in insertion
// order (which fixes the state-vector layout), external inputs, and a
// global multiplier applied to every time constant and capacitance.
struct NetworkSpec {
    std::vector<NetworkNeuron> neurons;
    std::vector<SynapseSpec> synapses;
    std::map<std::string, InputSignal> inputs;
    double time_scale = 1.0;

    int neuron_index(const std::string& id) const {
        for (size_t i = 0; i < neurons.size(); ++i)
            if (neurons[i].id == id) return static_cast<int>(i);
        return -1;
    }
    bool has_neuron(const std::string& id) const { return neuron_index(id) >= 0; }
    size_t state_dimension() const { return neurons.size() * 3 + synapses.size(); }
};

inline void add_neuron(NetworkSpec& net, const std::string& id, NeuronKind kind,
                       const NeuronSpec& spec) {
    if (net.has_neuron(id)) throw DuplicateId(id);
    net.neurons.push_back({id, kind, spec});
}

inline void add_neuron(NetworkSpec& net, const std::string& id, const SpikingNeuronSpec& spec) {
    add_neuron(net, id, NeuronKind::spiking, NeuronSpec{spec});
}

inline void add_neuron(NetworkSpec& net, const std::string& id, const BurstingNeuronSpec& spec) {
    add_neuron(net, id, NeuronKind::bursting, NeuronSpec{spec});
}

inline void add_synapse(NetworkSpec& net, const SynapseSpec& spec) {
    if (!net.has_neuron(spec.pre)) throw UnknownEndpoint(spec.pre);
    if (!net.has_neuron(spec.post)) throw UnknownEndpoint(spec.post);
    if (spec.pre == spec.post && !spec.allow_self) throw SelfLoop(spec.pre);
    net.synapses.push_back(spec);
}

// Expands a group into its n(n-1) directed edges; the hub drawing in the
// figures and this explicit edge set are the same object.
inline void all_to_all_inhibition(NetworkSpec& net, const std::vector<std::string>& group,
                                  const SynapseSpec& tmpl) {
    if (group.size() < 2) throw GroupTooSmall();
    for (const auto& a : group)
        for (const auto& b : group) {
            if (a == b) continue;
            SynapseSpec s = tmpl;
            s.pre = a;
            s.post = b;
            add_synapse(net, s);
        }
}

inline void set_input(NetworkSpec& net, const std::string& id, const InputSignal& sig) {
    if (!net.has_neuron(id)) throw UnknownEndpoint(id);
    net.inputs[id] = sig;
}

inline void add_pulse(NetworkSpec& net, const std::string& id, double t_start, double t_end,
                      double delta) {
    if (!net.has_neuron(id)) throw UnknownEndpoint(id);
    net.inputs[id].segments.push_back({t_start, t_end, delta});
}

// Report-based invariant check; an empty result means the network is valid.
inline std::vector<std::string> validate(const NetworkSpec& net) {
    std::vector<std::string> violations;
    if (!(net.time_scale > 0)) violations.push_back("time_scale must be positive");
    for (size_t i = 0; i < net.neurons.size(); ++i) {
        for (size_t j = i + 1; j < net.neurons.size(); ++j)
            if (net.neurons[i].id == net.neurons[j].id)
                violations.push_back("duplicate neuron id: " + net.neurons[i].id);
        const std::string msg = std::visit([](const auto& s) { return check_spec(s); },
                                           net.neurons[i].spec);
        if (!msg.empty()) violations.push_back(net.neurons[i].id + ": " + msg);
    }
    for (const auto& syn : net.synapses) {
        if (!net.has_neuron(syn.pre)) violations.push_back("unknown endpoint: " + syn.pre);
        if (!net.has_neuron(syn.post)) violations.push_back("unknown endpoint: " + syn.post);
        if (syn.pre == syn.post && !syn.allow_self)
            violations.push_back("unflagged self-synapse on " + syn.pre);
        const std::string msg = check_spec(syn);
        if (!msg.empty()) violations.push_back(msg);
    }
    for (const auto& [id, sig] : net.inputs) {
        if (!net.has_neuron(id)) violations.push_back("input bound to unknown neuron: " + id);
        if (sig.noise_sigma < 0) violations.push_back("negative noise sigma on " + id);
        auto segs = sig.segments;
        std::sort(segs.begin(), segs.end(),
                  [](const auto& a, const auto& b) { return a.t_start < b.t_start; });
        for (const auto& seg : segs)
            if (!(seg.t_end >= seg.t_start))
                violations.push_back("input segment with t_end < t_start on " + id);
    }
    return violations;
}

// Copies every element of src into dst with ids prefixed; used to compose
// hierarchical motifs out of smaller networks.
inline void merge_network(NetworkSpec& dst, const NetworkSpec& src, const std::string& prefix) {
    for (const auto& n : src.neurons) add_neuron(dst, prefix + n.id, n.kind, n.spec);
    for (auto syn : src.synapses) {
        syn.pre = prefix + syn.pre;
        syn.post = prefix + syn.post;
        add_synapse(dst, syn);
    }
    for (const auto& [id, sig] : src.inputs) dst.inputs[prefix + id] = sig;
}

}  // namespace rwta
