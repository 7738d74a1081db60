#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "rwta/events.hpp"

namespace rwta {

// Checks used both by scenario expectations and by the acceptance suite.

// Largest number of recorded neurons above threshold at any one sample.
inline int max_simultaneous_above(const Trace& trace, double threshold) {
    int worst = 0;
    for (size_t k = 0; k < trace.times.size(); ++k) {
        int count = 0;
        for (size_t n = 0; n < trace.ids.size(); ++n)
            if (trace.v[n][k] > threshold) ++count;
        worst = std::max(worst, count);
    }
    return worst;
}

inline bool single_winner_holds(const Trace& trace, double threshold) {
    return max_simultaneous_above(trace, threshold) <= 1;
}

// True when seq is cycle repeated from some starting offset, for at least
// min_cycles full turns.
inline bool is_rotation_of(const std::vector<std::string>& seq,
                           const std::vector<std::string>& cycle, int min_cycles) {
    if (cycle.empty()) return false;
    if (seq.size() < cycle.size() * static_cast<size_t>(min_cycles)) return false;
    for (size_t offset = 0; offset < cycle.size(); ++offset) {
        bool match = true;
        for (size_t i = 0; i < seq.size(); ++i)
            if (seq[i] != cycle[(offset + i) % cycle.size()]) {
                match = false;
                break;
            }
        if (match) return true;
    }
    return false;
}

// Strict two-party alternation a,b,a,b,... starting with either party.
inline bool alternates(const std::vector<std::string>& seq, const std::string& a,
                       const std::string& b) {
    if (seq.size() < 2) return false;
    for (size_t i = 0; i < seq.size(); ++i) {
        const std::string& expect_even = seq[0];
        const std::string& expect_odd = seq[0] == a ? b : a;
        if (seq[i] != ((i % 2 == 0) ? expect_even : expect_odd)) return false;
    }
    return seq[0] == a || seq[0] == b;
}

// Smallest inter-event interval of any single neuron (burst_end ignored).
inline double min_per_neuron_interval(const EventLog& log) {
    std::map<std::string, double> last;
    double best = 1e300;
    for (const auto& e : log.events) {
        if (e.kind == EventKind::burst_end) continue;
        auto it = last.find(e.neuron);
        if (it != last.end()) best = std::min(best, e.t - it->second);
        last[e.neuron] = e.t;
    }
    return best;
}

// Median interval between successive events regardless of owner.
inline double median_inter_winner_interval(const EventLog& log) {
    std::vector<double> gaps;
    double prev = -1.0;
    for (const auto& e : log.events) {
        if (e.kind == EventKind::burst_end) continue;
        if (prev >= 0) gaps.push_back(e.t - prev);
        prev = e.t;
    }
    if (gaps.empty()) return 0.0;
    std::sort(gaps.begin(), gaps.end());
    return gaps[gaps.size() / 2];
}

// Modal event owner within a window; empty string when the window has no
// events or the mode is tied.
inline std::string window_winner(const EventLog& log, double t0, double t1) {
    std::map<std::string, int> counts;
    for (const auto& e : log.events) {
        if (e.t < t0 || e.t >= t1 || e.kind == EventKind::burst_end) continue;
        counts[e.neuron]++;
    }
    std::string best;
    int best_count = 0;
    bool tied = false;
    for (const auto& [id, c] : counts) {
        if (c > best_count) {
            best = id;
            best_count = c;
            tied = false;
        } else if (c == best_count) {
            tied = true;
        }
    }
    return tied ? std::string{} : best;
}

// Set of event owners within a window.
inline std::vector<std::string> active_set(const EventLog& log, double t0, double t1) {
    std::vector<std::string> out;
    for (const auto& e : log.events) {
        if (e.t < t0 || e.t >= t1 || e.kind == EventKind::burst_end) continue;
        if (std::find(out.begin(), out.end(), e.neuron) == out.end()) out.push_back(e.neuron);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool strictly_decreasing(const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return v.size() >= 2;
}

inline bool strictly_increasing(const std::vector<double>& v) {
    for (size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return v.size() >= 2;
}

}  // namespace rwta
