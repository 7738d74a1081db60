#pragma once

#include <cstdint>
#include <vector>

#include "rwta/events.hpp"
#include "rwta/simulate.hpp"
#include "rwta/snake.hpp"
#include "rwta/snake_controller.hpp"

namespace rwta {

// Closed-loop configuration. The coupled system runs on the plant clock
// (seconds); the network's time_scale already folds the circuit slowdown in.
struct SnakeSimConfig {
    double dt = 5e-4;
    double duration = 60.0;
    std::uint64_t seed = 0;
    int record_stride = 20;         // one sample every dt * stride
    double spike_threshold = 0.0;
    double contact_hold = 5.0 / 3.0;  // debounce, 50 circuit-ms rescaled
    SnakeParams plant;
    Obstacles obstacles;
    SnakeState initial = SnakeState::straight(0.0, 0.0);
};

struct SnakeRunResult {
    Trace trace;                          // neural voltages
    std::vector<PlantSample> trajectory;  // plant states
    std::vector<char> contact;            // debounced flag per trajectory sample
    std::vector<std::array<double, kSnakeJoints>> ref_left;   // muscle references
    std::vector<std::array<double, kSnakeJoints>> ref_right;
    SimConfig event_config;               // thresholds matched to the time scale

    EventLog events() const { return detect_events(trace, event_config); }
};

// Integrates neurons, synapses, muscle reference filters, and the rigid
// body plant as one fixed-step system. Sensor currents and input noise are
// sampled once per step; everything else is evaluated per stage.
inline SnakeRunResult run_snake(const ControllerBundle& bundle, const SnakeSimConfig& cfg) {
    const CompiledNetwork sys(bundle.net);
    const double ts = bundle.net.time_scale;

    struct Tap {
        int neuron;
        int joint;
        Side side;
        double tau, alpha, v_bar, gain;
    };
    std::vector<Tap> taps;
    for (const auto& list : {bundle.actuator_map, bundle.rts_muscle_map})
        for (const auto& m : list) {
            const int idx = bundle.net.neuron_index(m.neuron);
            if (idx < 0) throw UnknownEndpoint(m.neuron);
            taps.push_back({idx, m.joint, m.side, m.tau * ts, m.alpha, m.v_bar, m.gain});
        }
    std::vector<std::pair<int, double>> sensors;
    for (const auto& s : bundle.sensor_map) {
        const int idx = bundle.net.neuron_index(s.neuron);
        if (idx < 0) throw UnknownEndpoint(s.neuron);
        sensors.emplace_back(idx, s.on_current);
    }

    const size_t nn = sys.dimension();
    const size_t nf = taps.size();
    const size_t dim = nn + nf + kSnakeStateDim;

    std::vector<double> x(dim, 0.0);
    SnakeRunResult out;
    out.trace.rest_fallback_used = sys.initial_state(x.data());
    for (size_t f = 0; f < nf; ++f) x[nn + f] = x[3 * taps[f].neuron];
    cfg.initial.pack(x.data() + nn + nf);

    const auto refs_from = [&](const double* xs, std::array<double, kSnakeJoints>& rl,
                               std::array<double, kSnakeJoints>& rr) {
        rl.fill(0.0);
        rr.fill(0.0);
        for (size_t f = 0; f < nf; ++f) {
            const Tap& m = taps[f];
            const double r = m.gain * sigmoid(m.alpha * (xs[nn + f] - m.v_bar));
            (m.side == Side::left ? rl[m.joint] : rr[m.joint]) += r;
        }
        for (int j = 0; j < kSnakeJoints; ++j) {
            rl[j] = std::clamp(rl[j], 0.0, cfg.plant.r_max);
            rr[j] = std::clamp(rr[j], 0.0, cfg.plant.r_max);
        }
    };

    std::vector<double> ext(sys.n_neurons(), 0.0);
    const auto rhs = [&](const double* xs, double* dxs) {
        sys.rhs(xs, ext.data(), dxs);
        for (size_t f = 0; f < nf; ++f)
            dxs[nn + f] = (xs[3 * taps[f].neuron] - xs[nn + f]) / taps[f].tau;
        std::array<double, kSnakeJoints> rl, rr;
        refs_from(xs, rl, rr);
        const SnakeState st = SnakeState::unpack(xs + nn + nf);
        std::array<double, kSnakeJoints> tau{};
        for (int j = 0; j < kSnakeJoints; ++j)
            tau[j] = muscle_torque(st.joint_angle(j), st.joint_rate(j), rl[j], rr[j], cfg.plant);
        const SnakeState d = snake_dynamics(st, tau, cfg.plant, cfg.obstacles);
        d.pack(dxs + nn + nf);
    };

    // recording setup: all neurons
    for (const auto& n : bundle.net.neurons) out.trace.ids.push_back(n.id);
    out.trace.v.resize(bundle.net.neurons.size());
    out.trace.sample_dt = cfg.dt * cfg.record_stride;
    out.event_config.spike_threshold = cfg.spike_threshold;
    out.event_config.min_event_separation = 2.0 * ts;
    out.event_config.burst_gap = 25.0 * ts;

    std::vector<NoiseStream> noise;
    for (size_t i = 0; i < sys.n_neurons(); ++i)
        noise.emplace_back(cfg.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL * (i + 1));

    const auto record = [&](double t, bool contact_now) {
        out.trace.times.push_back(t);
        for (size_t i = 0; i < sys.n_neurons(); ++i) out.trace.v[i].push_back(x[3 * i]);
        out.trajectory.push_back({t, SnakeState::unpack(x.data() + nn + nf)});
        out.contact.push_back(contact_now ? 1 : 0);
        std::array<double, kSnakeJoints> rl, rr;
        refs_from(x.data(), rl, rr);
        out.ref_left.push_back(rl);
        out.ref_right.push_back(rr);
    };

    detail::StepWork work;
    work.resize(dim);
    const auto n_steps = static_cast<std::int64_t>(std::llround(cfg.duration / cfg.dt));
    double last_raw_contact = -1e300;
    record(0.0, false);
    for (std::int64_t step = 0; step < n_steps; ++step) {
        const double t = step * cfg.dt;
        const SnakeState st = SnakeState::unpack(x.data() + nn + nf);
        if (head_contact(st, cfg.obstacles, cfg.plant)) last_raw_contact = t;
        const bool contact_on = (t - last_raw_contact) < cfg.contact_hold;
        for (size_t i = 0; i < sys.n_neurons(); ++i)
            ext[i] = evaluate_input(sys.input(i), t, noise[i]);
        if (contact_on)
            for (const auto& [idx, amp] : sensors) ext[idx] += amp;
        detail::fixed_step(Integrator::rk4, cfg.dt, x, rhs, work);
        detail::check_finite(x, t + cfg.dt);
        if ((step + 1) % cfg.record_stride == 0) record((step + 1) * cfg.dt, contact_on);
    }
    return out;
}

// Body-frame displacement of the centre of mass: projection of the COM
// travel onto the mean heading at departure.
inline double com_axis_displacement(const std::vector<PlantSample>& traj, const SnakeParams& p,
                                    size_t k0, size_t k1) {
    const auto [x0, y0] = center_of_mass(traj[k0].state, p);
    const auto [x1, y1] = center_of_mass(traj[k1].state, p);
    double heading = 0.0;
    for (int i = 0; i < kSnakeLinks; ++i) heading += traj[k0].state.phi[i];
    heading /= kSnakeLinks;
    return (x1 - x0) * std::cos(heading) + (y1 - y0) * std::sin(heading);
}

inline double mean_heading(const SnakeState& s) {
    double h = 0.0;
    for (int i = 0; i < kSnakeLinks; ++i) h += s.phi[i];
    return h / kSnakeLinks;
}

}  // namespace rwta
