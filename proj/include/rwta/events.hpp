#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rwta/simulate.hpp"

namespace rwta {

struct InsufficientEvents : std::runtime_error {
    explicit InsufficientEvents(const std::string& id)
        : std::runtime_error("fewer than 3 events for neuron " + id) {}
};

enum class EventKind { spike, burst_start, burst_end };

inline const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::spike: return "spike";
        case EventKind::burst_start: return "burst_start";
        case EventKind::burst_end: return "burst_end";
    }
    return "?";
}

struct Event {
    double t = 0.0;
    std::string neuron;
    EventKind kind = EventKind::spike;
};

struct EventLog {
    std::vector<Event> events;

    std::vector<Event> of_neuron(const std::string& id) const {
        std::vector<Event> out;
        for (const auto& e : events)
            if (e.neuron == id) out.push_back(e);
        return out;
    }
};

namespace detail {
inline void sort_events(std::vector<Event>& ev) {
    std::stable_sort(ev.begin(), ev.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });
}
}  // namespace detail

// One spike per upward threshold crossing, at the linearly interpolated
// crossing time, with at least min_event_separation between spikes of the
// same neuron.
inline EventLog detect_events(const Trace& trace, const SimConfig& cfg) {
    EventLog log;
    const double th = cfg.spike_threshold;
    for (size_t n = 0; n < trace.ids.size(); ++n) {
        const auto& v = trace.v[n];
        double last = -1e300;
        for (size_t k = 1; k < v.size(); ++k) {
            if (!(v[k - 1] < th && v[k] >= th)) continue;
            const double frac = (th - v[k - 1]) / (v[k] - v[k - 1]);
            const double t = trace.times[k - 1] + frac * (trace.times[k] - trace.times[k - 1]);
            if (t - last < cfg.min_event_separation) continue;
            last = t;
            log.events.push_back({t, trace.ids[n], EventKind::spike});
        }
    }
    detail::sort_events(log.events);
    return log;
}

// Merges runs of same-neuron spikes whose inter-spike interval stays below
// burst_gap into (burst_start, burst_end) pairs; isolated spikes pass
// through unchanged.
inline EventLog segment_bursts(const EventLog& log, const SimConfig& cfg) {
    EventLog out;
    std::vector<std::string> ids;
    for (const auto& e : log.events)
        if (std::find(ids.begin(), ids.end(), e.neuron) == ids.end()) ids.push_back(e.neuron);
    for (const auto& id : ids) {
        const auto spikes = log.of_neuron(id);
        size_t i = 0;
        while (i < spikes.size()) {
            size_t j = i;
            while (j + 1 < spikes.size() && spikes[j + 1].t - spikes[j].t < cfg.burst_gap) ++j;
            if (j == i) {
                out.events.push_back(spikes[i]);
            } else {
                out.events.push_back({spikes[i].t, id, EventKind::burst_start});
                out.events.push_back({spikes[j].t, id, EventKind::burst_end});
            }
            i = j + 1;
        }
    }
    detail::sort_events(out.events);
    return out;
}

// Sequence of event owners inside [t0, t1); bursts are counted once, at
// their burst_start.
inline std::vector<std::string> firing_order(const EventLog& log, double t0, double t1) {
    std::vector<std::string> order;
    for (const auto& e : log.events) {
        if (e.t < t0 || e.t >= t1) continue;
        if (e.kind == EventKind::burst_end) continue;
        order.push_back(e.neuron);
    }
    return order;
}

struct PeriodStats {
    double mean = 0.0;
    double stddev = 0.0;
    int n_intervals = 0;
};

// Statistics of the inter-event interval of one neuron (burst_end events
// are ignored so a burst counts once at its start).
inline PeriodStats rhythm_period(const EventLog& log, const std::string& id) {
    std::vector<double> times;
    for (const auto& e : log.events)
        if (e.neuron == id && e.kind != EventKind::burst_end) times.push_back(e.t);
    if (times.size() < 3) throw InsufficientEvents(id);
    std::vector<double> intervals;
    for (size_t i = 1; i < times.size(); ++i) intervals.push_back(times[i] - times[i - 1]);
    PeriodStats stats;
    stats.n_intervals = static_cast<int>(intervals.size());
    for (double d : intervals) stats.mean += d;
    stats.mean /= intervals.size();
    for (double d : intervals) stats.stddev += (d - stats.mean) * (d - stats.mean);
    stats.stddev = std::sqrt(stats.stddev / intervals.size());
    return stats;
}

}  // namespace rwta
