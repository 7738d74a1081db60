#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "rwta/snake.hpp"

using namespace rwta;

namespace {

std::pair<double, double> linear_momentum(const SnakeState& s, const SnakeParams& p) {
    const auto v = link_center_velocities(s, p);
    double px = 0, py = 0;
    for (const auto& [vx, vy] : v) {
        px += p.link_mass * vx;
        py += p.link_mass * vy;
    }
    return {px, py};
}

double angular_momentum_about_com(const SnakeState& s, const SnakeParams& p) {
    const auto v = link_center_velocities(s, p);
    const auto [cx, cy] = center_of_mass(s, p);
    double lz = 0;
    double px = s.x, py = s.y;
    for (int i = 0; i < kSnakeLinks; ++i) {
        const double ex = std::cos(s.phi[i]), ey = std::sin(s.phi[i]);
        const double ccx = px - 0.5 * p.link_length * ex;
        const double ccy = py - 0.5 * p.link_length * ey;
        lz += p.link_mass * ((ccx - cx) * v[i].second - (ccy - cy) * v[i].first);
        lz += p.link_inertia * s.phi_dot[i];
        px -= p.link_length * ex;
        py -= p.link_length * ey;
    }
    return lz;
}

auto zero_refs = [](double, int) { return std::make_pair(0.0, 0.0); };

}  // namespace

TEST_CASE("muscle torque is zero at the symmetric point") {
    SnakeParams p;
    CHECK(muscle_torque(0.0, 0.0, 0.7, 0.7, p) == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("left-dominant reference produces leftward torque") {
    SnakeParams p;
    CHECK(muscle_torque(0.0, 0.0, 1.0, 0.2, p) > 0.0);
    CHECK(muscle_torque(0.0, 0.0, 0.2, 1.0, p) < 0.0);
}

TEST_CASE("muscle torque is linear in the reference difference and odd under swap") {
    SnakeParams p;
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> ur(0.0, 1.5), uth(-0.8, 0.8);
    for (int i = 0; i < 100; ++i) {
        const double rl = ur(rng), rr = ur(rng), th = uth(rng), thd = uth(rng);
        const double tau = muscle_torque(th, thd, rl, rr, p);
        const double mirrored = muscle_torque(-th, -thd, rr, rl, p);
        REQUIRE(tau == Catch::Approx(-mirrored).margin(1e-12));
        // shifting both references equally changes nothing
        const double shifted = muscle_torque(th, thd, rl + 0.2, rr + 0.2, p);
        REQUIRE(shifted == Catch::Approx(tau).margin(1e-12));
    }
}

TEST_CASE("steady reference difference settles at the spring balance") {
    SnakeParams p;
    const double d = 0.8;
    const auto traj = simulate_plant(
        SnakeState::straight(0, 0), p, {},
        [&](double, int j) { return j == 0 ? std::make_pair(d, 0.0) : std::make_pair(0.0, 0.0); },
        1e-3, 20.0, 100);
    const double expected = p.muscle_gain * d / (2 * p.muscle_gain + p.joint_stiffness);
    CHECK(traj.back().state.joint_angle(0) == Catch::Approx(expected).margin(1e-4));
    CHECK(traj.back().state.joint_angle(2) == Catch::Approx(0.0).margin(1e-6));
}

TEST_CASE("zero velocity, zero torque, no contact gives zero acceleration") {
    SnakeParams p;
    SnakeState s = SnakeState::straight(0, 0);
    s.phi = {0.1, 0.3, -0.2, 0.0, 0.4};
    const SnakeState d = snake_dynamics(s, {0, 0, 0, 0}, p, {});
    CHECK(d.vx == Catch::Approx(0.0).margin(1e-12));
    CHECK(d.vy == Catch::Approx(0.0).margin(1e-12));
    for (int i = 0; i < kSnakeLinks; ++i)
        CHECK(d.phi_dot[i] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("frictionless internal torques conserve linear momentum") {
    SnakeParams p;
    p.friction_t = 0.0;
    p.friction_n = 0.0;
    SnakeState s0 = SnakeState::straight(0, 0);
    s0.vx = 0.3;
    s0.vy = -0.2;
    const auto refs = [](double t, int j) {
        const double a = 0.5 * std::sin(2 * M_PI * t / 2.0 - 0.7 * j);
        return a > 0 ? std::make_pair(a, 0.0) : std::make_pair(0.0, -a);
    };
    const auto traj = simulate_plant(s0, p, {}, refs, 1e-3, 10.0, 200);
    const auto [px0, py0] = linear_momentum(traj.front().state, p);
    for (const auto& sample : traj) {
        const auto [px, py] = linear_momentum(sample.state, p);
        REQUIRE(std::hypot(px - px0, py - py0) <= 1e-6 * std::hypot(px0, py0));
    }
}

TEST_CASE("frictionless torque-free spin conserves angular momentum") {
    SnakeParams p;
    p.friction_t = 0.0;
    p.friction_n = 0.0;
    SnakeState s0 = SnakeState::straight(0, 0);
    for (int i = 0; i < kSnakeLinks; ++i) s0.phi_dot[i] = 0.5 - 0.15 * i;
    const auto traj = simulate_plant(s0, p, {}, zero_refs, 1e-3, 10.0, 200);
    const double l0 = angular_momentum_about_com(traj.front().state, p);
    for (const auto& sample : traj) {
        const double l = angular_momentum_about_com(sample.state, p);
        REQUIRE(std::abs(l - l0) <= 1e-6 * std::abs(l0));
    }
}

TEST_CASE("kinetic energy change balances torque work minus friction loss") {
    SnakeParams p;
    const double dt = 1e-3;
    SnakeState s = SnakeState::straight(0, 0);
    const auto refs = [](double t, int j) {
        const double a = 0.6 * std::sin(2 * M_PI * t / 1.2 - 0.6 * j);
        return a > 0 ? std::make_pair(a, 0.0) : std::make_pair(0.0, -a);
    };
    auto traj = simulate_plant(s, p, {}, refs, dt, 3.0, 1);
    const size_t k0 = 2000, k1 = 3000;  // one-second window after spin-up
    const auto power = [&](size_t k) {
        const SnakeState& st = traj[k].state;
        const double t = traj[k].t;
        double in = 0.0, out = 0.0;
        for (int j = 0; j < kSnakeJoints; ++j) {
            auto [rl, rr] = refs(t, j);
            const double tau = muscle_torque(st.joint_angle(j), st.joint_rate(j), rl, rr, p);
            in += tau * st.joint_rate(j);
        }
        const auto v = link_center_velocities(st, p);
        for (int i = 0; i < kSnakeLinks; ++i) {
            const double tx = std::cos(st.phi[i]), ty = std::sin(st.phi[i]);
            const double vt = v[i].first * tx + v[i].second * ty;
            const double vn = -v[i].first * ty + v[i].second * tx;
            out += p.friction_t * vt * vt + p.friction_n * vn * vn;
        }
        return std::make_pair(in, out);
    };
    double work = 0.0, dissipated = 0.0;
    auto prev = power(k0);
    for (size_t k = k0 + 1; k <= k1; ++k) {
        const auto cur = power(k);
        work += 0.5 * (prev.first + cur.first) * dt;
        dissipated += 0.5 * (prev.second + cur.second) * dt;
        prev = cur;
    }
    const double dke = kinetic_energy(traj[k1].state, p) - kinetic_energy(traj[k0].state, p);
    const double scale = std::max({std::abs(work), dissipated, 1e-3});
    CHECK(std::abs(dke - (work - dissipated)) <= 1e-3 * scale);
}

TEST_CASE("phase-lagged reference waves drive the body forward") {
    SnakeParams p;
    SnakeState s0 = SnakeState::straight(0, 0);
    const auto refs = [](double t, int j) {
        const double a = 1.2 * std::sin(2 * M_PI * t / 2.0 - 0.8 * j);
        return a > 0 ? std::make_pair(a, 0.0) : std::make_pair(0.0, -a);
    };
    const auto traj = simulate_plant(s0, p, {}, refs, 1e-3, 16.0, 500);
    std::vector<double> com_x;
    for (size_t i = 4; i < traj.size(); i += 4)
        com_x.push_back(center_of_mass(traj[i].state, p).first);
    REQUIRE(com_x.size() >= 5);
    for (size_t i = 1; i < com_x.size(); ++i) REQUIRE(com_x[i] > com_x[i - 1]);
    CHECK(com_x.back() - com_x.front() > 2 * p.link_length);
}

TEST_CASE("head contact sensing") {
    SnakeParams p;
    Obstacles obs;
    obs.circles.push_back({1.0, 0.0, 0.2});
    SnakeState far = SnakeState::straight(0.0, 0.0);
    CHECK_FALSE(head_contact(far, obs, p));
    SnakeState touching = SnakeState::straight(0.85, 0.0);
    CHECK(head_contact(touching, obs, p));

    Obstacles wall;
    wall.walls.push_back({1.0, 0.0, 2.0});  // region x >= 2 blocked
    CHECK_FALSE(head_contact(SnakeState::straight(1.5, 0), wall, p));
    CHECK(head_contact(SnakeState::straight(2.0, 0), wall, p));
}

TEST_CASE("penalty contact stops a gliding snake at a wall") {
    SnakeParams p;
    Obstacles obs;
    obs.walls.push_back({1.0, 0.0, 0.5});
    SnakeState s0 = SnakeState::straight(0.2, 0.0);
    s0.vx = 0.8;
    const auto traj = simulate_plant(s0, p, obs, zero_refs, 1e-3, 6.0, 100);
    double max_x = -1e9;
    for (const auto& sample : traj) max_x = std::max(max_x, sample.state.x);
    CHECK(max_x < 0.55);                 // shallow penetration only
    CHECK(traj.back().state.vx < 0.05);  // motion absorbed
}
