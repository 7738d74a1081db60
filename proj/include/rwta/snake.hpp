#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rwta {

// Planar five-link snake. Generalized coordinates are the head position and
// the absolute link angles, q = (x, y, phi_1..phi_5); links are counted from
// the head, joint j sits between links j and j+1, and the joint angle is
// theta_j = phi_{j+1} - phi_j. Units are SI (m, kg, s).

inline constexpr int kSnakeLinks = 5;
inline constexpr int kSnakeJoints = 4;
inline constexpr int kSnakeStateDim = 14;  // q (7) + dq (7)

struct SnakeParams {
    double link_length = 0.2;
    double link_mass = 0.5;
    double link_inertia = 0.5 * 0.2 * 0.2 / 12.0;
    double muscle_gain = 2.0;       // k1, reference spring
    double joint_stiffness = 0.5;   // k2, passive spring
    double joint_damping = 0.5;     // b
    double friction_t = 0.5;        // tangential drag at each link center
    double friction_n = 5.0;        // normal drag; > friction_t for propulsion
    double joint_limit = M_PI / 3.0;
    double limit_stiffness = 20.0;  // restoring torque beyond the limit
    double r_max = 1.5;             // ceiling on muscle reference activations
    double contact_stiffness = 200.0;
    double contact_damping = 20.0;
    double contact_tolerance = 0.01;  // sensing distance of the head
};

struct SnakeState {
    double x = 0.0, y = 0.0;                     // head position
    std::array<double, kSnakeLinks> phi{};       // absolute link angles
    double vx = 0.0, vy = 0.0;
    std::array<double, kSnakeLinks> phi_dot{};

    double joint_angle(int j) const { return phi[j + 1] - phi[j]; }
    double joint_rate(int j) const { return phi_dot[j + 1] - phi_dot[j]; }

    void pack(double* out) const {
        out[0] = x;
        out[1] = y;
        for (int i = 0; i < kSnakeLinks; ++i) out[2 + i] = phi[i];
        out[7] = vx;
        out[8] = vy;
        for (int i = 0; i < kSnakeLinks; ++i) out[9 + i] = phi_dot[i];
    }
    static SnakeState unpack(const double* in) {
        SnakeState s;
        s.x = in[0];
        s.y = in[1];
        for (int i = 0; i < kSnakeLinks; ++i) s.phi[i] = in[2 + i];
        s.vx = in[7];
        s.vy = in[8];
        for (int i = 0; i < kSnakeLinks; ++i) s.phi_dot[i] = in[9 + i];
        return s;
    }

    // Straight pose along +x with the tail trailing behind the head.
    static SnakeState straight(double head_x, double head_y, double heading = 0.0) {
        SnakeState s;
        s.x = head_x;
        s.y = head_y;
        s.phi.fill(heading);
        return s;
    }
};

struct Circle {
    double cx = 0.0, cy = 0.0, radius = 1.0;
};

// Half-plane obstacle: the region n . p >= offset is blocked, with n the
// unit outward normal of the free side.
struct Wall {
    double nx = 0.0, ny = 0.0, offset = 0.0;
};

struct Obstacles {
    std::vector<Circle> circles;
    std::vector<Wall> walls;
    bool empty() const { return circles.empty() && walls.empty(); }
};

// Antagonistic muscle pair acting on one joint: two reference springs pulled
// to +r_left and -r_right, a passive spring, and a damper.
inline double muscle_torque(double theta, double theta_dot, double r_left, double r_right,
                            const SnakeParams& p) {
    return p.muscle_gain * (r_left - r_right) -
           (2.0 * p.muscle_gain + p.joint_stiffness) * theta - p.joint_damping * theta_dot;
}

namespace snake_detail {

using Vec2 = Eigen::Vector2d;
using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

inline Vec2 heading_vec(double phi) { return {std::cos(phi), std::sin(phi)}; }
inline Vec2 normal_vec(double phi) { return {-std::sin(phi), std::cos(phi)}; }

struct Kinematics {
    std::array<Vec2, kSnakeLinks> center;
    std::array<Vec2, kSnakeLinks> center_vel;
    std::array<Vec2, kSnakeLinks + 1> point;      // head, joints, tail
    std::array<Vec2, kSnakeLinks + 1> point_vel;
    // dc_i/dphi_k, lower-triangular in (i, k)
    std::array<std::array<Vec2, kSnakeLinks>, kSnakeLinks> dc_dphi;
};

inline Kinematics kinematics(const SnakeState& s, const SnakeParams& p) {
    Kinematics k;
    const double L = p.link_length;
    Vec2 pos{s.x, s.y};
    Vec2 vel{s.vx, s.vy};
    k.point[0] = pos;
    k.point_vel[0] = vel;
    for (int i = 0; i < kSnakeLinks; ++i) {
        const Vec2 e = heading_vec(s.phi[i]);
        const Vec2 n = normal_vec(s.phi[i]);
        k.center[i] = pos - 0.5 * L * e;
        k.center_vel[i] = vel - 0.5 * L * s.phi_dot[i] * n;
        pos -= L * e;
        vel -= L * s.phi_dot[i] * n;
        k.point[i + 1] = pos;
        k.point_vel[i + 1] = vel;
        for (int c = 0; c < kSnakeLinks; ++c) k.dc_dphi[i][c] = Vec2::Zero();
        for (int c = 0; c < i; ++c) k.dc_dphi[i][c] = -L * normal_vec(s.phi[c]);
        k.dc_dphi[i][i] = -0.5 * L * normal_vec(s.phi[i]);
    }
    return k;
}

// Penalty force of one obstacle on a point, zero when clear.
inline Vec2 obstacle_force(const Vec2& pt, const Vec2& vel, const Obstacles& obs,
                           const SnakeParams& p) {
    Vec2 f = Vec2::Zero();
    for (const auto& c : obs.circles) {
        const Vec2 d = pt - Vec2{c.cx, c.cy};
        const double dist = d.norm();
        if (dist >= c.radius || dist < 1e-12) continue;
        const Vec2 n = d / dist;
        const double depth = c.radius - dist;
        const double fn = p.contact_stiffness * depth - p.contact_damping * vel.dot(n);
        if (fn > 0) f += fn * n;
    }
    for (const auto& w : obs.walls) {
        const Vec2 n{w.nx, w.ny};
        const double depth = pt.dot(n) - w.offset;
        if (depth <= 0) continue;
        const double fn = p.contact_stiffness * depth + p.contact_damping * vel.dot(n);
        // wall pushes against the outward normal
        if (fn > 0) f -= fn * n;
    }
    return f;
}

}  // namespace snake_detail

// Geometric head contact, before debouncing: true while the head point is
// within the contact tolerance of any obstacle.
inline bool head_contact(const SnakeState& s, const Obstacles& obs, const SnakeParams& p) {
    const snake_detail::Vec2 head{s.x, s.y};
    for (const auto& c : obs.circles)
        if ((head - snake_detail::Vec2{c.cx, c.cy}).norm() < c.radius + p.contact_tolerance)
            return true;
    for (const auto& w : obs.walls)
        if (head.dot(snake_detail::Vec2{w.nx, w.ny}) > w.offset - p.contact_tolerance)
            return true;
    return false;
}

// Equations of motion with joint torques applied in equal-and-opposite
// pairs, anisotropic viscous ground friction at each link center, and
// penalty contact forces at the link endpoints.
inline SnakeState snake_dynamics(const SnakeState& s,
                                 const std::array<double, kSnakeJoints>& torques,
                                 const SnakeParams& p, const Obstacles& obs) {
    using namespace snake_detail;
    const Kinematics kin = kinematics(s, p);
    const double m = p.link_mass;
    const double L = p.link_length;

    Mat7 M = Mat7::Zero();
    Vec7 rhs = Vec7::Zero();

    // mass matrix and centripetal bias
    for (int i = 0; i < kSnakeLinks; ++i) {
        // gamma_i: acceleration of c_i at zero generalized acceleration
        Vec2 gamma = 0.5 * L * s.phi_dot[i] * s.phi_dot[i] * heading_vec(s.phi[i]);
        for (int c = 0; c < i; ++c)
            gamma += L * s.phi_dot[c] * s.phi_dot[c] * heading_vec(s.phi[c]);

        // translational block (columns: x, y, phi_0..phi_4)
        M(0, 0) += m;
        M(1, 1) += m;
        for (int c = 0; c <= i; ++c) {
            const Vec2 a = kin.dc_dphi[i][c];
            M(0, 2 + c) += m * a.x();
            M(1, 2 + c) += m * a.y();
            M(2 + c, 0) += m * a.x();
            M(2 + c, 1) += m * a.y();
            for (int d = 0; d <= i; ++d) M(2 + c, 2 + d) += m * a.dot(kin.dc_dphi[i][d]);
        }
        M(2 + i, 2 + i) += p.link_inertia;

        rhs(0) -= m * gamma.x();
        rhs(1) -= m * gamma.y();
        for (int c = 0; c <= i; ++c) rhs(2 + c) -= m * gamma.dot(kin.dc_dphi[i][c]);

        // friction at the link center
        const Vec2 t_hat = heading_vec(s.phi[i]);
        const Vec2 n_hat = normal_vec(s.phi[i]);
        const Vec2 v = kin.center_vel[i];
        const Vec2 f = -p.friction_t * v.dot(t_hat) * t_hat - p.friction_n * v.dot(n_hat) * n_hat;
        rhs(0) += f.x();
        rhs(1) += f.y();
        for (int c = 0; c <= i; ++c) rhs(2 + c) += f.dot(kin.dc_dphi[i][c]);
    }

    // joint torques, with the joint-limit restoring term
    for (int j = 0; j < kSnakeJoints; ++j) {
        double tau = torques[j];
        const double theta = s.joint_angle(j);
        if (theta > p.joint_limit) tau -= p.limit_stiffness * (theta - p.joint_limit);
        if (theta < -p.joint_limit) tau -= p.limit_stiffness * (theta + p.joint_limit);
        rhs(2 + j) -= tau;
        rhs(2 + j + 1) += tau;
    }

    // contact penalties at head, joints, and tail
    if (!obs.empty()) {
        for (int pt = 0; pt <= kSnakeLinks; ++pt) {
            const Vec2 f = obstacle_force(kin.point[pt], kin.point_vel[pt], obs, p);
            if (f.isZero()) continue;
            rhs(0) += f.x();
            rhs(1) += f.y();
            // dpoint_pt/dphi_c = -L * n(phi_c) for c < pt
            for (int c = 0; c < pt; ++c)
                rhs(2 + c) += f.dot(-L * normal_vec(s.phi[c]));
        }
    }

    const Vec7 acc = M.ldlt().solve(rhs);

    SnakeState d;
    d.x = s.vx;
    d.y = s.vy;
    for (int i = 0; i < kSnakeLinks; ++i) d.phi[i] = s.phi_dot[i];
    d.vx = acc(0);
    d.vy = acc(1);
    for (int i = 0; i < kSnakeLinks; ++i) d.phi_dot[i] = acc(2 + i);
    return d;
}

// Diagnostics used by tests and metrics.
inline std::array<std::pair<double, double>, kSnakeLinks> link_center_velocities(
    const SnakeState& s, const SnakeParams& p) {
    const auto kin = snake_detail::kinematics(s, p);
    std::array<std::pair<double, double>, kSnakeLinks> out;
    for (int i = 0; i < kSnakeLinks; ++i)
        out[i] = {kin.center_vel[i].x(), kin.center_vel[i].y()};
    return out;
}

inline std::pair<double, double> center_of_mass(const SnakeState& s, const SnakeParams& p) {
    const auto kin = snake_detail::kinematics(s, p);
    snake_detail::Vec2 com = snake_detail::Vec2::Zero();
    for (int i = 0; i < kSnakeLinks; ++i) com += kin.center[i];
    com /= kSnakeLinks;
    return {com.x(), com.y()};
}

inline double kinetic_energy(const SnakeState& s, const SnakeParams& p) {
    const auto kin = snake_detail::kinematics(s, p);
    double ke = 0.0;
    for (int i = 0; i < kSnakeLinks; ++i) {
        ke += 0.5 * p.link_mass * kin.center_vel[i].squaredNorm();
        ke += 0.5 * p.link_inertia * s.phi_dot[i] * s.phi_dot[i];
    }
    return ke;
}

// Fixed-step rk4 integration of the plant alone, with muscle references
// supplied by a callback r(t, joint) -> (left, right). Used by the plant
// sanity scenarios and tests; the closed-loop controller couples the plant
// into the neural state vector instead.
struct PlantSample {
    double t = 0.0;
    SnakeState state;
};

inline std::vector<PlantSample> simulate_plant(
    const SnakeState& initial, const SnakeParams& p, const Obstacles& obs,
    const std::function<std::pair<double, double>(double, int)>& references, double dt,
    double duration, int record_stride = 10) {
    std::vector<PlantSample> samples;
    SnakeState s = initial;
    // The muscle torque is part of the continuous dynamics, so it is
    // re-evaluated at every integration stage.
    const auto deriv = [&](const SnakeState& st, double t) {
        std::array<double, kSnakeJoints> tau{};
        for (int j = 0; j < kSnakeJoints; ++j) {
            auto [rl, rr] = references(t, j);
            rl = std::clamp(rl, 0.0, p.r_max);
            rr = std::clamp(rr, 0.0, p.r_max);
            tau[j] = muscle_torque(st.joint_angle(j), st.joint_rate(j), rl, rr, p);
        }
        return snake_dynamics(st, tau, p, obs);
    };
    const auto n_steps = static_cast<long>(std::llround(duration / dt));
    samples.push_back({0.0, s});
    std::array<double, kSnakeStateDim> buf{};
    for (long step = 0; step < n_steps; ++step) {
        const double t = step * dt;
        const auto advance = [&](const SnakeState& base, const SnakeState& d, double h) {
            base.pack(buf.data());
            std::array<double, kSnakeStateDim> db{};
            d.pack(db.data());
            for (int i = 0; i < kSnakeStateDim; ++i) buf[i] += h * db[i];
            return SnakeState::unpack(buf.data());
        };
        const SnakeState k1 = deriv(s, t);
        const SnakeState k2 = deriv(advance(s, k1, dt / 2), t + dt / 2);
        const SnakeState k3 = deriv(advance(s, k2, dt / 2), t + dt / 2);
        const SnakeState k4 = deriv(advance(s, k3, dt), t + dt);
        std::array<double, kSnakeStateDim> xs{}, d1{}, d2{}, d3{}, d4{};
        s.pack(xs.data());
        k1.pack(d1.data());
        k2.pack(d2.data());
        k3.pack(d3.data());
        k4.pack(d4.data());
        for (int i = 0; i < kSnakeStateDim; ++i)
            xs[i] += dt / 6.0 * (d1[i] + 2 * d2[i] + 2 * d3[i] + d4[i]);
        s = SnakeState::unpack(xs.data());
        for (int i = 0; i < kSnakeStateDim; ++i)
            if (!(std::abs(xs[i]) <= 1e6)) throw std::runtime_error("snake state blew up");
        if ((step + 1) % record_stride == 0) samples.push_back({(step + 1) * dt, s});
    }
    return samples;
}

}  // namespace rwta
