#pragma once

#include <cmath>
#include <optional>
#include <string>

namespace rwta {

// Six interconnection classes used throughout the motif and controller
// builders. The class only labels the (tau, alpha, v_bar) triple a synapse
// was built from; dynamics depend on the stored numbers alone.
enum class SynapseClass { I, Is, E, Ef, Efl, Eus };

inline const char* to_string(SynapseClass c) {
    switch (c) {
        case SynapseClass::I: return "I";
        case SynapseClass::Is: return "I_s";
        case SynapseClass::E: return "E";
        case SynapseClass::Ef: return "E_f";
        case SynapseClass::Efl: return "E_fl";
        case SynapseClass::Eus: return "E_us";
    }
    return "?";
}

inline bool is_inhibitory_class(SynapseClass c) {
    return c == SynapseClass::I || c == SynapseClass::Is;
}

// Directed edge: first-order filter on the presynaptic voltage followed by
// a biased sigmoid scaled by the signed weight.
struct SynapseSpec {
    std::string pre;
    std::string post;
    double weight = 0.0;  // negative = inhibitory
    double tau = 0.5;
    double alpha = 50.0;
    double v_bar = -2.5;
    int exponent = 1;
    SynapseClass time_scale_class = SynapseClass::I;
    bool allow_self = false;
    // Filter start value; defaults to the presynaptic rest voltage. Slow
    // arming synapses start discharged instead, so a run does not begin
    // with a spurious charge transient.
    std::optional<double> initial_v_filt;
};

struct SynapseState {
    double v_filt = 0.0;
};

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

inline double synapse_current(const SynapseState& s, const SynapseSpec& p) {
    const double sig = sigmoid(p.alpha * (s.v_filt - p.v_bar));
    double gated = sig;
    for (int i = 1; i < p.exponent; ++i) gated *= sig;
    return p.weight * gated;
}

inline double synapse_derivative(const SynapseState& s, double v_pre, const SynapseSpec& p) {
    return (v_pre - s.v_filt) / p.tau;
}

inline std::string check_spec(const SynapseSpec& p) {
    if (!(p.tau > 0)) return "synapse " + p.pre + "->" + p.post + ": tau must be positive";
    if (!(p.alpha > 0)) return "synapse " + p.pre + "->" + p.post + ": alpha must be positive";
    if (p.exponent < 1) return "synapse " + p.pre + "->" + p.post + ": exponent must be >= 1";
    if (is_inhibitory_class(p.time_scale_class) && p.weight > 0)
        return "synapse " + p.pre + "->" + p.post + ": inhibitory class with positive weight";
    if (!is_inhibitory_class(p.time_scale_class) && p.weight < 0)
        return "synapse " + p.pre + "->" + p.post + ": excitatory class with negative weight";
    return {};
}

}  // namespace rwta
