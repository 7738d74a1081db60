#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rwta {

// Conductance-style rebound neurons built from a leaky RC membrane plus
// tanh current sources behind first-order filters. Voltages and currents
// are dimensionless, time constants in ms.

struct SpikingNeuronSpec {
    double cap = 1.0;      // membrane capacitance (time scaling)
    double leak = 0.5;     // passive leak coefficient
    double alpha_f = 2.0;  // fast depolarizing gain
    double alpha_s = 2.0;  // slow repolarizing gain
    double v_bar = -1.5;   // battery voltage shared by both currents
    double tau_s = 20.0;   // slow filter time constant
};

// Adds a slow regenerative current component and an ultra-slow restorative
// current. The slow pair makes the membrane bistable between the rest state
// and a spiking plateau near v_bar_f; the ultra-slow current charges during
// hyperpolarization and sustains the plateau after release, so alpha_us sets
// the rebound burst duration.
struct BurstingNeuronSpec {
    double cap = 1.0;
    double leak = 0.5;
    double alpha_f = 2.0;
    double alpha_s_plus = 2.0;
    double alpha_s_minus = 1.5;
    double alpha_us = 1.5;
    double v_bar_f = 3.0;    // fast pair battery: spikes ride this level
    double v_bar_s = -1.5;   // slow regenerative battery, just above rest
    double v_bar_us = -2.5;  // ultra-slow battery, between rest and threshold
    double tau_s = 5.0;
    double tau_us = 100.0;
};

// Continuous state shared by both neuron kinds. A spiking neuron never
// reads v_us; it is carried so every neuron occupies three state slots.
struct NeuronState {
    double v = 0.0;
    double v_s = 0.0;
    double v_us = 0.0;
};

struct NeuronCurrents {
    double fast = 0.0;
    double slow = 0.0;
    double ultra_slow = 0.0;
};

struct NoEquilibrium : std::runtime_error {
    explicit NoEquilibrium(const std::string& what) : std::runtime_error(what) {}
};

inline NeuronCurrents spiking_currents(const NeuronState& s, const SpikingNeuronSpec& p) {
    NeuronCurrents c;
    c.fast = -p.alpha_f * std::tanh(s.v - p.v_bar);
    c.slow = p.alpha_s * std::tanh(s.v_s - p.v_bar);
    return c;
}

inline NeuronState spiking_derivative(const NeuronState& s, const SpikingNeuronSpec& p,
                                      double i_ext) {
    const NeuronCurrents c = spiking_currents(s, p);
    NeuronState d;
    d.v = (-p.leak * s.v - c.fast - c.slow + i_ext) / p.cap;
    d.v_s = (s.v - s.v_s) / p.tau_s;
    d.v_us = 0.0;
    return d;
}

inline NeuronCurrents bursting_currents(const NeuronState& s, const BurstingNeuronSpec& p) {
    NeuronCurrents c;
    c.fast = -p.alpha_f * std::tanh(s.v - p.v_bar_f);
    c.slow = p.alpha_s_plus * std::tanh(s.v_s - p.v_bar_f) -
             p.alpha_s_minus * std::tanh(s.v_s - p.v_bar_s);
    c.ultra_slow = p.alpha_us * std::tanh(s.v_us - p.v_bar_us);
    return c;
}

inline NeuronState bursting_derivative(const NeuronState& s, const BurstingNeuronSpec& p,
                                       double i_ext) {
    const NeuronCurrents c = bursting_currents(s, p);
    NeuronState d;
    d.v = (-p.leak * s.v - c.fast - c.slow - c.ultra_slow + i_ext) / p.cap;
    d.v_s = (s.v - s.v_s) / p.tau_s;
    d.v_us = (s.v - s.v_us) / p.tau_us;
    return d;
}

namespace detail {

// Membrane residual restricted to the v = v_s = v_us manifold. Every true
// equilibrium of either neuron lies on this manifold because the filter
// equations force v_s = v_us = v there.
inline double manifold_residual(double v, const SpikingNeuronSpec& p, double i_ext) {
    NeuronState s{v, v, v};
    return spiking_derivative(s, p, i_ext).v;
}

inline double manifold_residual(double v, const BurstingNeuronSpec& p, double i_ext) {
    NeuronState s{v, v, v};
    return bursting_derivative(s, p, i_ext).v;
}

// Lowest sign change of the manifold residual; the leak term guarantees
// residual > 0 far left and < 0 far right.
template <typename Spec>
double bisect_lowest_root(const Spec& p, double i_ext) {
    constexpr double lo_edge = -60.0, hi_edge = 60.0;
    constexpr int grid = 480;
    double lo = lo_edge;
    double f_lo = manifold_residual(lo, p, i_ext);
    double hi = hi_edge;
    bool found = false;
    for (int g = 1; g <= grid; ++g) {
        const double v = lo_edge + (hi_edge - lo_edge) * g / grid;
        const double f = manifold_residual(v, p, i_ext);
        if (f_lo > 0.0 && f <= 0.0) {
            hi = v;
            found = true;
            break;
        }
        lo = v;
        f_lo = f;
    }
    if (!found) throw NoEquilibrium("no sign change of membrane residual in [-60, 60]");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (manifold_residual(mid, p, i_ext) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Routh-Hurwitz stability of a 2x2 / 3x3 Jacobian obtained by central
// finite differences of the derivative function.
template <typename Spec, typename Deriv>
bool equilibrium_stable(const NeuronState& s, const Spec& p, double i_ext, Deriv deriv,
                        int dims) {
    constexpr double h = 1e-6;
    double jac[3][3] = {};
    for (int j = 0; j < dims; ++j) {
        NeuronState a = s, b = s;
        double* av = j == 0 ? &a.v : (j == 1 ? &a.v_s : &a.v_us);
        double* bv = j == 0 ? &b.v : (j == 1 ? &b.v_s : &b.v_us);
        *av += h;
        *bv -= h;
        const NeuronState da = deriv(a, p, i_ext);
        const NeuronState db = deriv(b, p, i_ext);
        jac[0][j] = (da.v - db.v) / (2 * h);
        jac[1][j] = (da.v_s - db.v_s) / (2 * h);
        jac[2][j] = (da.v_us - db.v_us) / (2 * h);
    }
    if (dims == 2) {
        const double tr = jac[0][0] + jac[1][1];
        const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        return tr < 0.0 && det > 0.0;
    }
    const double tr = jac[0][0] + jac[1][1] + jac[2][2];
    const double m01 = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
    const double m02 = jac[0][0] * jac[2][2] - jac[0][2] * jac[2][0];
    const double m12 = jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1];
    const double det = jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
                       jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
                       jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);
    const double a2 = -tr;
    const double a1 = m01 + m02 + m12;
    const double a0 = -det;
    return a2 > 0.0 && a0 > 0.0 && a2 * a1 > a0;
}

template <typename Spec, typename Deriv>
NeuronState resting_state_impl(const Spec& p, double i_ext, Deriv deriv, int dims) {
    const double v0 = bisect_lowest_root(p, i_ext);
    NeuronState s{v0, v0, v0};
    // Damped polish on the full state.
    for (int it = 0; it < 10; ++it) {
        const NeuronState d = deriv(s, p, i_ext);
        s.v += 0.5 * d.v;
        s.v_s += 0.5 * d.v_s * (dims >= 2 ? 1.0 : 0.0);
        if (dims >= 3) s.v_us += 0.5 * d.v_us;
    }
    const NeuronState d = deriv(s, p, i_ext);
    const double res = std::max({std::abs(d.v), std::abs(d.v_s), std::abs(d.v_us)});
    if (!(res < 1e-9))
        throw NoEquilibrium("residual " + std::to_string(res) + " above tolerance");
    if (!equilibrium_stable(s, p, i_ext, deriv, dims))
        throw NoEquilibrium("equilibrium is unstable (endogenously active neuron)");
    return s;
}

}  // namespace detail

// Numerically locates the hyperpolarized rest state under a constant input.
// Throws NoEquilibrium when the neuron is endogenously active at that input.
inline NeuronState resting_state(const SpikingNeuronSpec& p, double i_ext) {
    NeuronState s = detail::resting_state_impl(
        p, i_ext, [](const NeuronState& x, const SpikingNeuronSpec& q, double i) {
            return spiking_derivative(x, q, i);
        },
        2);
    s.v_us = s.v;  // inert slot mirrors the membrane
    return s;
}

inline NeuronState resting_state(const BurstingNeuronSpec& p, double i_ext) {
    return detail::resting_state_impl(
        p, i_ext, [](const NeuronState& x, const BurstingNeuronSpec& q, double i) {
            return bursting_derivative(x, q, i);
        },
        3);
}

inline std::string check_spec(const SpikingNeuronSpec& p) {
    if (!(p.cap > 0)) return "spiking neuron: capacitance must be positive";
    if (!(p.tau_s > 0)) return "spiking neuron: tau_s must be positive";
    if (p.alpha_f < 0 || p.alpha_s < 0) return "spiking neuron: gains must be non-negative";
    return {};
}

inline std::string check_spec(const BurstingNeuronSpec& p) {
    if (!(p.cap > 0)) return "bursting neuron: capacitance must be positive";
    if (!(p.tau_s > 0) || !(p.tau_us > p.tau_s))
        return "bursting neuron: requires 0 < tau_s < tau_us";
    if (p.alpha_f < 0 || p.alpha_s_plus < 0 || p.alpha_s_minus < 0 || p.alpha_us < 0)
        return "bursting neuron: gains must be non-negative";
    return {};
}

}  // namespace rwta
