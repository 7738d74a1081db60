#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rwta/network.hpp"

namespace rwta {

// Interconnection classes used by the controller and motifs: (tau, alpha,
// v_bar) per class. Weights are chosen per edge.
struct SynapseClassTable {
    static SynapseSpec make(SynapseClass cls, const std::string& pre, const std::string& post,
                            double weight) {
        SynapseSpec s;
        s.pre = pre;
        s.post = post;
        s.weight = weight;
        s.time_scale_class = cls;
        switch (cls) {
            case SynapseClass::I:
            case SynapseClass::Efl:
                s.tau = 0.5;
                s.alpha = 50.0;
                s.v_bar = -2.5;
                break;
            case SynapseClass::E:
            case SynapseClass::Is:
                s.tau = 20.0;
                s.alpha = 50.0;
                s.v_bar = -2.5;
                break;
            case SynapseClass::Ef:
                s.tau = 0.5;
                s.alpha = 50.0;
                s.v_bar = 0.0;
                break;
            case SynapseClass::Eus:
                s.tau = 100.0;
                s.alpha = 50.0;
                s.v_bar = -2.75;
                break;
        }
        return s;
    }
};

inline SynapseSpec class_synapse(SynapseClass cls, const std::string& pre,
                                 const std::string& post, double weight) {
    return SynapseClassTable::make(cls, pre, post, weight);
}

// Bursting parameters used by the ring/coordination dwell neurons.
inline BurstingNeuronSpec coordination_bursting_spec() {
    BurstingNeuronSpec p;
    p.alpha_s_minus = 1.1;
    p.alpha_us = 1.7;
    return p;
}

namespace motif {

constexpr double kBaseInput = -1.5;
constexpr double kWtaInhibitionWeight = -2.0;
constexpr double kRingInhibitionWeight = -2.0;
constexpr double kRingExcitationWeight = 0.75;

constexpr double kGateOutputBias = -2.0;

// Gate weights frozen from the one-time calibration in
// tests/test_motifs.cpp (binary search over the excitatory weight with
// single- and dual-input pulse protocols).
constexpr double kAndGateWeight = 0.5;
constexpr double kOrGateWeight = 0.8;

// Deterministic per-neuron base-current offsets. Perfectly symmetric rings
// deadlock at the unstable synchronous state; a sub-percent stagger selects
// a starter without disturbing the rhythm.
inline void stagger_inputs(NetworkSpec& net, double epsilon = 0.002) {
    for (size_t i = 0; i < net.neurons.size(); ++i)
        net.inputs[net.neurons[i].id].base -= epsilon * static_cast<double>(i);
}

inline std::vector<std::string> number_ids(int n, int first = 1) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::to_string(first + i));
    return ids;
}

inline void add_spiking_group(NetworkSpec& net, const std::vector<std::string>& ids,
                              double base) {
    for (const auto& id : ids) {
        add_neuron(net, id, SpikingNeuronSpec{});
        set_input(net, id, {base, {}, 0.0});
    }
}

// Single inhibitory synapse: an event in "1" forbids a simultaneous event
// in "2".
inline NetworkSpec not_gate() {
    NetworkSpec net;
    add_spiking_group(net, {"1", "2"}, kBaseInput);
    add_synapse(net, class_synapse(SynapseClass::I, "1", "2", -2.0));
    return net;
}

namespace detail {
// Output node rests deeper (base -2) and reads the inputs through fast
// high-threshold synapses, so only the spike overshoot is transmitted and
// coincidence detection has a usable weight window.
inline NetworkSpec two_input_gate(double weight) {
    NetworkSpec net;
    add_spiking_group(net, {"1", "2"}, kBaseInput);
    add_neuron(net, "3", SpikingNeuronSpec{});
    set_input(net, "3", {kGateOutputBias, {}, 0.0});
    add_synapse(net, class_synapse(SynapseClass::Ef, "1", "3", weight));
    add_synapse(net, class_synapse(SynapseClass::Ef, "2", "3", weight));
    return net;
}
}  // namespace detail

// Both inputs must spike together to drive the output above threshold.
inline NetworkSpec and_gate(double weight = kAndGateWeight) {
    return detail::two_input_gate(weight);
}

// One input spike suffices.
inline NetworkSpec or_gate(double weight = kOrGateWeight) {
    return detail::two_input_gate(weight);
}

// Fast all-to-all inhibition; the strongest input wins and suppresses the
// rest, with hysteresis.
inline NetworkSpec wta(int n, double weight = kWtaInhibitionWeight) {
    NetworkSpec net;
    const auto ids = number_ids(n);
    add_spiking_group(net, ids, kBaseInput);
    all_to_all_inhibition(net, ids, class_synapse(SynapseClass::I, "", "", weight));
    return net;
}

// Two rebound neurons with reciprocal fast inhibition. The synapse threshold
// sits just below the spiking range so the post neuron activates only once
// the pre neuron has returned to rest.
inline NetworkSpec hco(NeuronKind kind = NeuronKind::spiking, bool reciprocal = true) {
    NetworkSpec net;
    const double base = kind == NeuronKind::spiking ? -1.5 : -1.0;
    for (const auto& id : {"1", "2"}) {
        if (kind == NeuronKind::spiking)
            add_neuron(net, id, SpikingNeuronSpec{});
        else
            add_neuron(net, id, BurstingNeuronSpec{});
        set_input(net, id, {base, {}, 0.0});
    }
    SynapseSpec fwd = class_synapse(SynapseClass::I, "1", "2", -2.0);
    fwd.v_bar = -1.0;
    add_synapse(net, fwd);
    if (reciprocal) {
        SynapseSpec bwd = fwd;
        bwd.pre = "2";
        bwd.post = "1";
        add_synapse(net, bwd);
    }
    return net;
}

// RWTA ring: fast all-to-all inhibition restricts the state to one winner;
// a directed cycle of slow excitation appoints the successor.
inline NetworkSpec ring(int n, const std::vector<NeuronKind>& kinds = {},
                        double inhibition = kRingInhibitionWeight,
                        double excitation = kRingExcitationWeight) {
    NetworkSpec net;
    const auto ids = number_ids(n);
    for (int i = 0; i < n; ++i) {
        const NeuronKind kind =
            i < static_cast<int>(kinds.size()) ? kinds[i] : NeuronKind::spiking;
        if (kind == NeuronKind::spiking)
            add_neuron(net, ids[i], SpikingNeuronSpec{});
        else
            add_neuron(net, ids[i], coordination_bursting_spec());
        set_input(net, ids[i], {kBaseInput, {}, 0.0});
    }
    all_to_all_inhibition(net, ids, class_synapse(SynapseClass::I, "", "", inhibition));
    for (int i = 0; i < n; ++i)
        add_synapse(net, class_synapse(SynapseClass::E, ids[i], ids[(i + 1) % n], excitation));
    return net;
}

// Two excitatory cycles over disjoint node sets sharing one inhibitory hub;
// a brief pulse to either ring switches the active pattern.
inline NetworkSpec dual_ring(int n1, int n2) {
    NetworkSpec net;
    const auto a = number_ids(n1);
    const auto b = number_ids(n2, n1 + 1);
    add_spiking_group(net, a, kBaseInput);
    add_spiking_group(net, b, kBaseInput);
    std::vector<std::string> all = a;
    all.insert(all.end(), b.begin(), b.end());
    all_to_all_inhibition(net, all,
                          class_synapse(SynapseClass::I, "", "", kRingInhibitionWeight));
    for (int i = 0; i < n1; ++i)
        add_synapse(net, class_synapse(SynapseClass::E, a[i], a[(i + 1) % n1],
                                       kRingExcitationWeight));
    for (int i = 0; i < n2; ++i)
        add_synapse(net, class_synapse(SynapseClass::E, b[i], b[(i + 1) % n2],
                                       kRingExcitationWeight));
    return net;
}

// Hierarchy-level synapses (slower than every class in the table).
inline SynapseSpec ultra_slow_inhibition(const std::string& pre, const std::string& post,
                                         double weight = -2.0) {
    SynapseSpec s;
    s.pre = pre;
    s.post = post;
    s.weight = weight;
    s.tau = 200.0;
    s.alpha = 50.0;
    s.v_bar = -4.0;
    s.time_scale_class = SynapseClass::I;
    return s;
}

inline SynapseSpec ultra_slow_excitation(const std::string& pre, const std::string& post,
                                         double weight = 0.5) {
    SynapseSpec s = ultra_slow_inhibition(pre, post, weight);
    s.time_scale_class = SynapseClass::E;
    return s;
}

inline SynapseSpec cross_network_inhibition(const std::string& pre, const std::string& post,
                                            double weight = -2.5) {
    SynapseSpec s;
    s.pre = pre;
    s.post = post;
    s.weight = weight;
    s.tau = 10.0;
    s.alpha = 50.0;
    s.v_bar = -3.0;
    s.time_scale_class = SynapseClass::Is;
    return s;
}

// Ring plus ultra-slow all-to-all inhibition that terminates the cyclic
// pattern after a few iterations, turning the rhythm into a single event.
inline NetworkSpec finite_rhythm(int n) {
    NetworkSpec net = ring(n);
    all_to_all_inhibition(net, number_ids(n), ultra_slow_inhibition("", ""));
    return net;
}

// Two subnetworks joined by slow all-to-all reciprocal inhibition; group
// activity alternates like a half-center oscillator of networks.
inline NetworkSpec hco_of_networks(const NetworkSpec& sub1, const NetworkSpec& sub2) {
    NetworkSpec net;
    merge_network(net, sub1, "a.");
    merge_network(net, sub2, "b.");
    for (const auto& x : sub1.neurons)
        for (const auto& y : sub2.neurons) {
            add_synapse(net, cross_network_inhibition("a." + x.id, "b." + y.id));
            add_synapse(net, cross_network_inhibition("b." + y.id, "a." + x.id));
        }
    return net;
}

// k finite-rhythm groups joined by an ultra-slow excitatory outer cycle;
// each group's terminating event hands the pattern to the next group.
inline NetworkSpec ring_of_rings(int k, int n) {
    NetworkSpec net;
    std::vector<std::string> prefixes;
    for (int g = 0; g < k; ++g) prefixes.push_back("g" + std::to_string(g + 1) + ".");
    for (int g = 0; g < k; ++g) merge_network(net, finite_rhythm(n), prefixes[g]);
    for (int g = 0; g < k; ++g) {
        const auto& from = prefixes[g];
        const auto& to = prefixes[(g + 1) % k];
        for (const auto& x : number_ids(n))
            for (const auto& y : number_ids(n))
                add_synapse(net, ultra_slow_excitation(from + x, to + y));
    }
    return net;
}

}  // namespace motif

enum class MotifKind {
    not_gate,
    and_gate,
    or_gate,
    wta,
    hco,
    ring,
    dual_ring,
    finite_rhythm,
    hco_of_nets,
    ring_of_rings
};

// Nameable motif request, used by the scenario configuration format.
struct MotifSpec {
    MotifKind kind = MotifKind::ring;
    int n = 3;        // primary size (ring length, wta size, inner ring size)
    int n2 = 3;       // secondary size (second ring, outer ring count)
    std::vector<NeuronKind> kinds;  // per-node kinds for mixed rings
    std::optional<double> inhibition_weight;
    std::optional<double> excitation_weight;
};

inline NetworkSpec make_motif(const MotifSpec& m) {
    switch (m.kind) {
        case MotifKind::not_gate: return motif::not_gate();
        case MotifKind::and_gate:
            return motif::and_gate(m.excitation_weight.value_or(motif::kAndGateWeight));
        case MotifKind::or_gate:
            return motif::or_gate(m.excitation_weight.value_or(motif::kOrGateWeight));
        case MotifKind::wta:
            return motif::wta(m.n, m.inhibition_weight.value_or(motif::kWtaInhibitionWeight));
        case MotifKind::hco:
            return motif::hco(m.kinds.empty() ? NeuronKind::spiking : m.kinds.front());
        case MotifKind::ring:
            return motif::ring(m.n, m.kinds,
                               m.inhibition_weight.value_or(motif::kRingInhibitionWeight),
                               m.excitation_weight.value_or(motif::kRingExcitationWeight));
        case MotifKind::dual_ring: return motif::dual_ring(m.n, m.n2);
        case MotifKind::finite_rhythm: return motif::finite_rhythm(m.n);
        case MotifKind::hco_of_nets:
            return motif::hco_of_networks(motif::finite_rhythm(m.n), motif::finite_rhythm(m.n2));
        case MotifKind::ring_of_rings: return motif::ring_of_rings(m.n2, m.n);
    }
    throw std::invalid_argument("unknown motif kind");
}

}  // namespace rwta
