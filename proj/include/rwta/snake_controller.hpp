#pragma once

#include <string>
#include <vector>

#include "rwta/motifs.hpp"
#include "rwta/network.hpp"
#include "rwta/snake.hpp"

namespace rwta {

enum class Side { left, right };

// A muscle reference tap: first-order filter on the named neuron's voltage,
// then a biased sigmoid scaled by gain, added to one side of one joint.
struct MuscleBinding {
    std::string neuron;
    int joint = 0;
    Side side = Side::left;
    double tau = 20.0;
    double alpha = 16.0;
    double v_bar = -1.875;
    double gain = 1.5;
};

// Contact sensor feed: the named neuron receives on_current while the
// debounced head contact is active.
struct SensorBinding {
    std::string neuron;
    double on_current = 1.0;
};

struct ControllerBundle {
    NetworkSpec net;
    std::vector<MuscleBinding> actuator_map;    // HCO neurons, one per muscle
    std::vector<MuscleBinding> rts_muscle_map;  // right-turn bias taps
    std::vector<SensorBinding> sensor_map;
};

namespace controller {

// Bias of the AND-like selector neurons (RFF/LFF/RFB/LFB); calibrated so a
// single weight-1 mode spike stays subthreshold while the coincidence with
// a bursting HCO side (0.6 more) fires. The chain neurons keep the
// interface bias of -2.
inline constexpr double kSelectorBias = -2.6;

// Interface coupling weights, calibrated against the chain neurons' -2 bias:
// one source alone stays subthreshold, an armed neighbour plus the joint's
// ring event fires.
inline constexpr double kChainRecurrentWeight = 0.3;
inline constexpr double kRingToChainWeight = 0.5;
inline constexpr double kChainMemoryWeight = 0.45;

inline BurstingNeuronSpec muscle_bursting_spec(double alpha_us = 1.5) {
    BurstingNeuronSpec p;
    p.alpha_s_minus = 1.5;
    p.alpha_us = alpha_us;
    return p;
}

// Long-burst variant used by the supervisory interface neurons so that one
// contact episode maps to one sustained command.
inline BurstingNeuronSpec supervisory_bursting_spec() {
    BurstingNeuronSpec p;
    p.alpha_s_minus = 1.5;
    p.alpha_us = 2.5;
    return p;
}

inline std::string joint_id(const char* prefix, int joint) {
    return std::string(prefix) + std::to_string(joint + 1);
}

// Four half-center oscillators of bursting neurons, one per joint, each
// driving its pair of muscles through slow sigmoidal taps.
inline ControllerBundle build_muscle_layer(double alpha_us = 1.5) {
    ControllerBundle b;
    for (int j = 0; j < kSnakeJoints; ++j) {
        const std::string left = joint_id("L", j);
        const std::string right = joint_id("R", j);
        add_neuron(b.net, left, muscle_bursting_spec(alpha_us));
        add_neuron(b.net, right, muscle_bursting_spec(alpha_us));
        set_input(b.net, left, {-1.0, {}, 0.0});
        set_input(b.net, right, {-1.0, {}, 0.0});
        add_synapse(b.net, class_synapse(SynapseClass::I, left, right, -2.0));
        add_synapse(b.net, class_synapse(SynapseClass::I, right, left, -2.0));
        b.actuator_map.push_back({left, j, Side::left, 20.0, 16.0, -1.875, 1.5});
        b.actuator_map.push_back({right, j, Side::right, 20.0, 16.0, -1.875, 1.5});
    }
    return b;
}

// Forward and backward rings (four spiking joints plus a bursting dwell
// neuron each) under one shared inhibitory hub, plus the RF/LF entrainment
// chains and their AND-like selector neurons.
inline ControllerBundle build_coordination_layer(double dwell_alpha_us = 1.7) {
    ControllerBundle b;
    const std::vector<std::string> fwd = {"F1", "F2", "F3", "F4", "FD"};
    const std::vector<std::string> bwd = {"B1", "B2", "B3", "B4", "BD"};
    BurstingNeuronSpec dwell = coordination_bursting_spec();
    dwell.alpha_us = dwell_alpha_us;
    for (const auto& id : {"F1", "F2", "F3", "F4"}) add_neuron(b.net, id, SpikingNeuronSpec{});
    add_neuron(b.net, "FD", dwell);
    for (const auto& id : {"B1", "B2", "B3", "B4"}) add_neuron(b.net, id, SpikingNeuronSpec{});
    add_neuron(b.net, "BD", dwell);
    std::vector<std::string> all_ring = fwd;
    all_ring.insert(all_ring.end(), bwd.begin(), bwd.end());
    for (const auto& id : all_ring) set_input(b.net, id, {-0.5, {}, 0.0});
    all_to_all_inhibition(b.net, all_ring, class_synapse(SynapseClass::I, "", "", -2.5));

    // forward wave 1->2->3->4, backward wave 4->3->2->1, dwell closes each loop
    const auto cycle = [&](const std::vector<std::string>& ids) {
        for (size_t i = 0; i < ids.size(); ++i)
            add_synapse(b.net,
                        class_synapse(SynapseClass::E, ids[i], ids[(i + 1) % ids.size()], 0.75));
    };
    cycle(fwd);
    cycle({"B4", "B3", "B2", "B1", "BD"});

    // entrainment chains and selectors
    for (int j = 0; j < kSnakeJoints; ++j) {
        for (const char* p : {"RF", "LF"}) {
            const std::string id = joint_id(p, j);
            add_neuron(b.net, id, SpikingNeuronSpec{});
            set_input(b.net, id, {-2.0, {}, 0.0});
        }
        // each joint's RF/LF pair competes; the armed side wins the race
        add_synapse(b.net, class_synapse(SynapseClass::I, joint_id("RF", j), joint_id("LF", j), -2.0));
        add_synapse(b.net, class_synapse(SynapseClass::I, joint_id("LF", j), joint_id("RF", j), -2.0));
        // ultra-slow self-arming holds the chosen side across ring cycles
        for (const char* p : {"RF", "LF"}) {
            SynapseSpec self = class_synapse(SynapseClass::Eus, joint_id(p, j), joint_id(p, j),
                                             kChainMemoryWeight);
            self.v_bar = -2.5;
            self.allow_self = true;
            add_synapse(b.net, self);
        }
    }
    // Selector rest sits deeper than the chains so that a mode spike alone
    // (weight 1) stays subthreshold and only the coincidence with a bursting
    // HCO side (another 0.6) fires it.
    for (const auto& id : {"RFF", "LFF", "RFB", "LFB"}) {
        add_neuron(b.net, id, SpikingNeuronSpec{});
        set_input(b.net, id, {kSelectorBias, {}, 0.0});
    }
    // Recurrent excitation along each chain arms the neighbours of the
    // chosen side; the ring event for a joint fires only the armed side.
    // Both weights sit below the tonic threshold alone and above it in
    // coincidence, so the chain cannot latch into a depolarized lock.
    for (int j = 0; j + 1 < kSnakeJoints; ++j) {
        for (const char* p : {"RF", "LF"}) {
            add_synapse(b.net, class_synapse(SynapseClass::E, joint_id(p, j), joint_id(p, j + 1),
                                             kChainRecurrentWeight));
            add_synapse(b.net, class_synapse(SynapseClass::E, joint_id(p, j + 1), joint_id(p, j),
                                             kChainRecurrentWeight));
        }
    }
    for (int j = 0; j < kSnakeJoints; ++j) {
        for (const char* ring : {"F", "B"}) {
            add_synapse(b.net, class_synapse(SynapseClass::E, joint_id(ring, j),
                                             joint_id("RF", j), kRingToChainWeight));
            add_synapse(b.net, class_synapse(SynapseClass::E, joint_id(ring, j),
                                             joint_id("LF", j), kRingToChainWeight));
        }
    }
    // selector spikes start the chain at the leading joint of each mode
    add_synapse(b.net, class_synapse(SynapseClass::E, "RFF", "RF1", 1.0));
    add_synapse(b.net, class_synapse(SynapseClass::E, "LFF", "LF1", 1.0));
    add_synapse(b.net, class_synapse(SynapseClass::E, "RFB", "RF4", 1.0));
    add_synapse(b.net, class_synapse(SynapseClass::E, "LFB", "LF4", 1.0));
    // mode spikes prime the selectors of their own mode
    add_synapse(b.net, class_synapse(SynapseClass::Ef, "F1", "RFF", 1.0));
    add_synapse(b.net, class_synapse(SynapseClass::Ef, "F1", "LFF", 1.0));
    add_synapse(b.net, class_synapse(SynapseClass::Ef, "B4", "RFB", 1.0));
    add_synapse(b.net, class_synapse(SynapseClass::Ef, "B4", "LFB", 1.0));
    return b;
}

// Two-state switch (which avoidance strategy is armed), the RTS/BRS
// interface neurons, and the falling-edge relays that toggle the switch
// when contact is released.
inline ControllerBundle build_supervisory_layer() {
    ControllerBundle b;
    for (const auto& id : {"RT1", "RT2", "BR1", "BR2"}) {
        add_neuron(b.net, id, SpikingNeuronSpec{});
        set_input(b.net, id, {-0.5, {}, 0.0});
    }
    // Relays rest in the excitable regime: silent until the slow inhibition
    // from their strategy neuron is released, then one rebound spike.
    for (const auto& id : {"RTR", "BRR"}) {
        add_neuron(b.net, id, SpikingNeuronSpec{});
        set_input(b.net, id, {-1.5, {}, 0.0});
    }
    add_neuron(b.net, "RTS", supervisory_bursting_spec());
    add_neuron(b.net, "BRS", supervisory_bursting_spec());
    set_input(b.net, "RTS", {-2.0, {}, 0.0});
    set_input(b.net, "BRS", {-2.0, {}, 0.0});

    all_to_all_inhibition(b.net, {"RT1", "RT2", "BR1", "BR2"},
                          class_synapse(SynapseClass::I, "", "", -2.5));
    // within-pair excitation: the armed pair keeps itself cycling
    add_synapse(b.net, class_synapse(SynapseClass::E, "RT1", "RT2", 0.75));
    add_synapse(b.net, class_synapse(SynapseClass::E, "RT2", "RT1", 0.75));
    add_synapse(b.net, class_synapse(SynapseClass::E, "BR1", "BR2", 0.75));
    add_synapse(b.net, class_synapse(SynapseClass::E, "BR2", "BR1", 0.75));

    // Strategy readout: the cycling pair disarms the *opposite* strategy
    // with sustained ultra-slow inhibition. Holding the disarmed neuron
    // near its rest keeps its rebound uncharged, so only the armed side
    // responds to the sensor step. The slope is gentle so arming changes
    // ramp instead of kicking.
    SynapseSpec disarm_br = class_synapse(SynapseClass::Eus, "RT2", "BRS", -1.5);
    SynapseSpec disarm_rt = class_synapse(SynapseClass::Eus, "BR2", "RTS", -1.5);
    disarm_br.time_scale_class = SynapseClass::Is;
    disarm_rt.time_scale_class = SynapseClass::Is;
    disarm_br.initial_v_filt = -5.0;
    disarm_rt.initial_v_filt = -5.0;
    disarm_br.alpha = 4.0;
    disarm_rt.alpha = 4.0;
    // release must ramp slower than the neurons' ultra-slow adaptation or
    // the freed strategy fires a spurious rebound burst
    disarm_br.tau = 300.0;
    disarm_rt.tau = 300.0;
    // threshold between a cycling pair member's mean (~-3) and a
    // suppressed one's (~-5)
    disarm_br.v_bar = -4.0;
    disarm_rt.v_bar = -4.0;
    add_synapse(b.net, disarm_br);
    add_synapse(b.net, disarm_rt);

    // slow self-inhibition keeps BRS from retriggering the backward ring;
    // thresholded at the burst level so it damps repeats, not the burst
    SynapseSpec brs_self = class_synapse(SynapseClass::Is, "BRS", "BRS", -1.5);
    brs_self.allow_self = true;
    brs_self.v_bar = 0.0;
    add_synapse(b.net, brs_self);

    // relays: inhibited while their strategy bursts (threshold above the
    // subthreshold wobble range), rebound on release
    SynapseSpec hold_rtr = class_synapse(SynapseClass::Is, "RTS", "RTR", -2.0);
    SynapseSpec hold_brr = class_synapse(SynapseClass::Is, "BRS", "BRR", -2.0);
    hold_rtr.v_bar = -1.0;
    hold_brr.v_bar = -1.0;
    // long memory: the relay of the strategy that just ran stays deeper,
    // rebounds after its sibling, and its toggle kick lands last
    hold_rtr.tau = 100.0;
    hold_brr.tau = 100.0;
    add_synapse(b.net, hold_rtr);
    add_synapse(b.net, hold_brr);
    add_synapse(b.net, class_synapse(SynapseClass::E, "RTR", "BR1", 2.0));
    add_synapse(b.net, class_synapse(SynapseClass::E, "BRR", "RT1", 2.0));
    // only the relay of the running strategy is live: the opposite pair
    // holds the other relay too deep for the sensor release to fire it
    for (auto [src, dst] : {std::pair<const char*, const char*>{"BR2", "RTR"},
                            std::pair<const char*, const char*>{"RT2", "BRR"}}) {
        SynapseSpec gate = class_synapse(SynapseClass::Eus, src, dst, -2.0);
        gate.time_scale_class = SynapseClass::Is;
        gate.v_bar = -4.0;
        gate.alpha = 4.0;
        gate.tau = 300.0;
        gate.initial_v_filt = -5.0;
        add_synapse(b.net, gate);
    }

    b.sensor_map.push_back({"RTS", 1.0});
    b.sensor_map.push_back({"BRS", 1.0});
    // the sensor holds both relays down; whichever strategy was running,
    // the rebound at contact release kicks the opposite pair into power
    b.sensor_map.push_back({"RTR", -2.0});
    b.sensor_map.push_back({"BRR", -2.0});
    return b;
}

}  // namespace controller

struct ControllerOptions {
    double time_scale = (100.0 / 3.0) * 1e-3;  // paper slowdown, run in seconds
    double muscle_alpha_us = 1.5;              // 2.75 in the supervisory scenario
    double dwell_alpha_us = 2.1;               // sets the ring period for gait locking
    bool include_supervisory = true;
    bool include_coordination = true;
};

// The complete three-layer nervous system wired to the plant's muscles and
// the head contact sensor.
inline ControllerBundle build_full_controller(const ControllerOptions& opts = {}) {
    ControllerBundle bundle = controller::build_muscle_layer(opts.muscle_alpha_us);
    if (opts.include_coordination) {
        ControllerBundle coord = controller::build_coordination_layer(opts.dwell_alpha_us);
        merge_network(bundle.net, coord.net, "");

        // decision inputs from the muscle layer (which side is bursting)
        add_synapse(bundle.net, class_synapse(SynapseClass::Ef, "R1", "RFF", 0.6));
        add_synapse(bundle.net, class_synapse(SynapseClass::Ef, "L1", "LFF", 0.6));
        add_synapse(bundle.net, class_synapse(SynapseClass::Ef, "R4", "RFB", 0.6));
        add_synapse(bundle.net, class_synapse(SynapseClass::Ef, "L4", "LFB", 0.6));

        // entrainment events: bias each joint towards the chain's side
        for (int j = 0; j < kSnakeJoints; ++j) {
            const std::string rf = controller::joint_id("RF", j);
            const std::string lf = controller::joint_id("LF", j);
            const std::string r = controller::joint_id("R", j);
            const std::string l = controller::joint_id("L", j);
            add_synapse(bundle.net, class_synapse(SynapseClass::Efl, rf, r, 1.5));
            add_synapse(bundle.net, class_synapse(SynapseClass::I, rf, l, -3.0));
            add_synapse(bundle.net, class_synapse(SynapseClass::Efl, lf, l, 1.5));
            add_synapse(bundle.net, class_synapse(SynapseClass::I, lf, r, -3.0));
        }
    }
    if (opts.include_supervisory) {
        ControllerBundle sup = controller::build_supervisory_layer();
        merge_network(bundle.net, sup.net, "");
        bundle.sensor_map = sup.sensor_map;
        if (opts.include_coordination) {
            SynapseSpec retreat = class_synapse(SynapseClass::E, "BRS", "B4", 2.0);
            retreat.v_bar = -1.0;  // respond to the burst, not subthreshold wobble
            add_synapse(bundle.net, retreat);
        }
        // In this plant a sustained bias on the +theta reference springs
        // rotates the crawling body clockwise, i.e. a right turn in heading.
        for (int j = 0; j < kSnakeJoints; ++j)
            bundle.rts_muscle_map.push_back(
                {"RTS", j, Side::left, 100.0, 16.0, -2.625, 0.5});
    }
    bundle.net.time_scale = opts.time_scale;
    return bundle;
}

}  // namespace rwta
