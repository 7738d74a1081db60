#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rwta/events.hpp"

using namespace rwta;

namespace {

Trace ramp_trace(double dt, double t_cross) {
    Trace tr;
    tr.sample_dt = dt;
    tr.ids = {"n"};
    tr.v.resize(1);
    for (double t = 0.0; t <= 30.0 + 1e-9; t += dt) {
        tr.times.push_back(t);
        tr.v[0].push_back(0.1 * (t - t_cross));
    }
    return tr;
}

}  // namespace

TEST_CASE("constant sub-threshold trace yields no events") {
    Trace tr;
    tr.sample_dt = 0.1;
    tr.ids = {"n"};
    tr.v.resize(1);
    for (double t = 0.0; t < 50.0; t += 0.1) {
        tr.times.push_back(t);
        tr.v[0].push_back(-3.0);
    }
    SimConfig cfg;
    CHECK(detect_events(tr, cfg).events.empty());
}

TEST_CASE("ramp crossing time is interpolated") {
    const double dt = 0.25;
    const Trace tr = ramp_trace(dt, 10.5);
    SimConfig cfg;
    const EventLog log = detect_events(tr, cfg);
    REQUIRE(log.events.size() == 1);
    CHECK(std::abs(log.events[0].t - 10.5) <= dt / 2);
    CHECK(log.events[0].t == Catch::Approx(10.5).margin(1e-9));
    CHECK(log.events[0].neuron == "n");
    CHECK(log.events[0].kind == EventKind::spike);
}

TEST_CASE("events closer than min_event_separation collapse") {
    Trace tr;
    tr.sample_dt = 0.1;
    tr.ids = {"n"};
    tr.v.resize(1);
    // Two upward crossings 1 ms apart.
    for (double t = 0.0; t <= 10.0 + 1e-9; t += 0.1) {
        tr.times.push_back(t);
        double v = -1.0;
        if (t >= 2.0 && t < 2.4) v = 1.0;
        if (t >= 3.0 && t < 3.4) v = 1.0;
        if (t >= 6.0 && t < 6.4) v = 1.0;
        tr.v[0].push_back(v);
    }
    SimConfig cfg;
    cfg.min_event_separation = 2.0;
    const EventLog log = detect_events(tr, cfg);
    REQUIRE(log.events.size() == 2);
    CHECK(log.events[0].t < 3.0);
    CHECK(log.events[1].t > 5.0);
}

TEST_CASE("burst segmentation of an empty log is empty") {
    SimConfig cfg;
    CHECK(segment_bursts(EventLog{}, cfg).events.empty());
}

TEST_CASE("five spikes with short gaps form one burst") {
    EventLog log;
    for (double t : {10.0, 14.0, 18.0, 22.0, 26.0}) log.events.push_back({t, "n", EventKind::spike});
    SimConfig cfg;
    cfg.burst_gap = 25.0;
    const EventLog out = segment_bursts(log, cfg);
    REQUIRE(out.events.size() == 2);
    CHECK(out.events[0].kind == EventKind::burst_start);
    CHECK(out.events[0].t == Catch::Approx(10.0));
    CHECK(out.events[1].kind == EventKind::burst_end);
    CHECK(out.events[1].t == Catch::Approx(26.0));
}

TEST_CASE("isolated spikes pass through burst segmentation") {
    EventLog log;
    log.events.push_back({10.0, "n", EventKind::spike});
    log.events.push_back({100.0, "n", EventKind::spike});
    log.events.push_back({104.0, "n", EventKind::spike});
    SimConfig cfg;
    const EventLog out = segment_bursts(log, cfg);
    REQUIRE(out.events.size() == 3);
    CHECK(out.events[0].kind == EventKind::spike);
    CHECK(out.events[1].kind == EventKind::burst_start);
    CHECK(out.events[2].kind == EventKind::burst_end);
}

TEST_CASE("firing order lists owners in time, bursts once") {
    EventLog log;
    log.events.push_back({5.0, "1", EventKind::spike});
    log.events.push_back({10.0, "2", EventKind::burst_start});
    log.events.push_back({30.0, "2", EventKind::burst_end});
    log.events.push_back({40.0, "3", EventKind::spike});
    log.events.push_back({55.0, "1", EventKind::spike});
    const auto order = firing_order(log, 0.0, 50.0);
    REQUIRE(order == std::vector<std::string>{"1", "2", "3"});
    CHECK(firing_order(EventLog{}, 0.0, 100.0).empty());
}

TEST_CASE("rhythm period of a periodic train is exact") {
    EventLog log;
    for (int i = 0; i < 6; ++i) log.events.push_back({40.0 * i, "n", EventKind::spike});
    const PeriodStats stats = rhythm_period(log, "n");
    CHECK(stats.mean == Catch::Approx(40.0));
    CHECK(stats.stddev == Catch::Approx(0.0).margin(1e-12));
    CHECK(stats.n_intervals == 5);
}

TEST_CASE("two events are not enough for a period estimate") {
    EventLog log;
    log.events.push_back({0.0, "n", EventKind::spike});
    log.events.push_back({40.0, "n", EventKind::spike});
    CHECK_THROWS_AS(rhythm_period(log, "n"), InsufficientEvents);
}
