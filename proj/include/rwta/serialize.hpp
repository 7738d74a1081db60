#pragma once

#include <json.hpp>
#include <string>

#include "rwta/motifs.hpp"
#include "rwta/network.hpp"
#include "rwta/simulate.hpp"

namespace rwta {

using json = nlohmann::json;

// Scenario/config wire format. nlohmann keeps object keys sorted, so a
// round-tripped file diffs cleanly; doubles serialize with enough digits to
// reload bit-exact.

inline json to_json(const SpikingNeuronSpec& p) {
    return json{{"kind", "spiking"}, {"cap", p.cap},       {"leak", p.leak},
                {"alpha_f", p.alpha_f}, {"alpha_s", p.alpha_s}, {"v_bar", p.v_bar},
                {"tau_s", p.tau_s}};
}

inline json to_json(const BurstingNeuronSpec& p) {
    return json{{"kind", "bursting"},        {"cap", p.cap},
                {"leak", p.leak},            {"alpha_f", p.alpha_f},
                {"alpha_s_plus", p.alpha_s_plus}, {"alpha_s_minus", p.alpha_s_minus},
                {"alpha_us", p.alpha_us},    {"v_bar_f", p.v_bar_f},
                {"v_bar_s", p.v_bar_s},      {"v_bar_us", p.v_bar_us},
                {"tau_s", p.tau_s},          {"tau_us", p.tau_us}};
}

inline SpikingNeuronSpec spiking_from_json(const json& j) {
    SpikingNeuronSpec p;
    p.cap = j.value("cap", p.cap);
    p.leak = j.value("leak", p.leak);
    p.alpha_f = j.value("alpha_f", p.alpha_f);
    p.alpha_s = j.value("alpha_s", p.alpha_s);
    p.v_bar = j.value("v_bar", p.v_bar);
    p.tau_s = j.value("tau_s", p.tau_s);
    return p;
}

inline BurstingNeuronSpec bursting_from_json(const json& j) {
    BurstingNeuronSpec p;
    p.cap = j.value("cap", p.cap);
    p.leak = j.value("leak", p.leak);
    p.alpha_f = j.value("alpha_f", p.alpha_f);
    p.alpha_s_plus = j.value("alpha_s_plus", p.alpha_s_plus);
    p.alpha_s_minus = j.value("alpha_s_minus", p.alpha_s_minus);
    p.alpha_us = j.value("alpha_us", p.alpha_us);
    p.v_bar_f = j.value("v_bar_f", p.v_bar_f);
    p.v_bar_s = j.value("v_bar_s", p.v_bar_s);
    p.v_bar_us = j.value("v_bar_us", p.v_bar_us);
    p.tau_s = j.value("tau_s", p.tau_s);
    p.tau_us = j.value("tau_us", p.tau_us);
    return p;
}

inline json to_json(const SynapseSpec& s) {
    json j{{"pre", s.pre},     {"post", s.post},   {"weight", s.weight},
           {"tau", s.tau},     {"alpha", s.alpha}, {"v_bar", s.v_bar},
           {"exponent", s.exponent}, {"class", to_string(s.time_scale_class)}};
    if (s.allow_self) j["allow_self"] = true;
    if (s.initial_v_filt) j["initial_v_filt"] = *s.initial_v_filt;
    return j;
}

inline SynapseClass synapse_class_from_string(const std::string& name) {
    if (name == "I") return SynapseClass::I;
    if (name == "I_s") return SynapseClass::Is;
    if (name == "E") return SynapseClass::E;
    if (name == "E_f") return SynapseClass::Ef;
    if (name == "E_fl") return SynapseClass::Efl;
    if (name == "E_us") return SynapseClass::Eus;
    throw std::invalid_argument("unknown synapse class: " + name);
}

inline SynapseSpec synapse_from_json(const json& j) {
    SynapseSpec s;
    s.pre = j.at("pre").get<std::string>();
    s.post = j.at("post").get<std::string>();
    s.weight = j.at("weight").get<double>();
    s.tau = j.value("tau", s.tau);
    s.alpha = j.value("alpha", s.alpha);
    s.v_bar = j.value("v_bar", s.v_bar);
    s.exponent = j.value("exponent", 1);
    if (j.contains("class")) s.time_scale_class = synapse_class_from_string(j["class"]);
    s.allow_self = j.value("allow_self", false);
    if (j.contains("initial_v_filt")) s.initial_v_filt = j["initial_v_filt"].get<double>();
    return s;
}

inline json to_json(const InputSignal& sig) {
    json segs = json::array();
    for (const auto& seg : sig.segments) segs.push_back({seg.t_start, seg.t_end, seg.delta});
    json j{{"base", sig.base}};
    if (!sig.segments.empty()) j["segments"] = segs;
    if (sig.noise_sigma > 0) j["noise_sigma"] = sig.noise_sigma;
    return j;
}

inline InputSignal input_from_json(const json& j) {
    InputSignal sig;
    sig.base = j.value("base", 0.0);
    if (j.contains("segments"))
        for (const auto& seg : j["segments"])
            sig.segments.push_back({seg.at(0).get<double>(), seg.at(1).get<double>(),
                                    seg.at(2).get<double>()});
    sig.noise_sigma = j.value("noise_sigma", 0.0);
    return sig;
}

inline json to_json(const NetworkSpec& net) {
    json neurons = json::array();
    for (const auto& n : net.neurons) {
        json j = std::visit([](const auto& spec) { return to_json(spec); }, n.spec);
        j["id"] = n.id;
        neurons.push_back(j);
    }
    json synapses = json::array();
    for (const auto& s : net.synapses) synapses.push_back(to_json(s));
    json inputs = json::object();
    for (const auto& [id, sig] : net.inputs) inputs[id] = to_json(sig);
    return json{{"neurons", neurons},
                {"synapses", synapses},
                {"inputs", inputs},
                {"time_scale", net.time_scale}};
}

inline NetworkSpec network_from_json(const json& j) {
    NetworkSpec net;
    for (const auto& n : j.at("neurons")) {
        const std::string id = n.at("id").get<std::string>();
        const std::string kind = n.value("kind", "spiking");
        if (kind == "bursting")
            add_neuron(net, id, bursting_from_json(n));
        else
            add_neuron(net, id, spiking_from_json(n));
    }
    for (const auto& s : j.value("synapses", json::array())) add_synapse(net, synapse_from_json(s));
    if (j.contains("inputs"))
        for (const auto& [id, sig] : j["inputs"].items()) net.inputs[id] = input_from_json(sig);
    net.time_scale = j.value("time_scale", 1.0);
    return net;
}

inline MotifSpec motif_from_json(const json& j) {
    MotifSpec m;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "not") m.kind = MotifKind::not_gate;
    else if (kind == "and") m.kind = MotifKind::and_gate;
    else if (kind == "or") m.kind = MotifKind::or_gate;
    else if (kind == "wta") m.kind = MotifKind::wta;
    else if (kind == "hco") m.kind = MotifKind::hco;
    else if (kind == "ring") m.kind = MotifKind::ring;
    else if (kind == "dual_ring") m.kind = MotifKind::dual_ring;
    else if (kind == "finite_rhythm") m.kind = MotifKind::finite_rhythm;
    else if (kind == "hco_of_nets") m.kind = MotifKind::hco_of_nets;
    else if (kind == "ring_of_rings") m.kind = MotifKind::ring_of_rings;
    else throw std::invalid_argument("unknown motif kind: " + kind);
    m.n = j.value("n", 3);
    m.n2 = j.value("n2", 3);
    if (j.contains("kinds"))
        for (const auto& k : j["kinds"])
            m.kinds.push_back(k.get<std::string>() == "bursting" ? NeuronKind::bursting
                                                                 : NeuronKind::spiking);
    if (j.contains("inhibition_weight")) m.inhibition_weight = j["inhibition_weight"].get<double>();
    if (j.contains("excitation_weight")) m.excitation_weight = j["excitation_weight"].get<double>();
    return m;
}

inline json to_json(const SimConfig& cfg) {
    return json{{"dt", cfg.dt},
                {"duration", cfg.duration},
                {"method", cfg.method == Integrator::rk4 ? "rk4" : "euler"},
                {"seed", cfg.seed},
                {"spike_threshold", cfg.spike_threshold},
                {"min_event_separation", cfg.min_event_separation},
                {"burst_gap", cfg.burst_gap}};
}

inline SimConfig sim_from_json(const json& j) {
    SimConfig cfg;
    cfg.dt = j.value("dt", cfg.dt);
    cfg.duration = j.value("duration", cfg.duration);
    if (j.value("method", "rk4") == std::string("euler")) cfg.method = Integrator::euler;
    cfg.seed = j.value("seed", cfg.seed);
    cfg.spike_threshold = j.value("spike_threshold", cfg.spike_threshold);
    cfg.min_event_separation = j.value("min_event_separation", cfg.min_event_separation);
    cfg.burst_gap = j.value("burst_gap", cfg.burst_gap);
    return cfg;
}

}  // namespace rwta
