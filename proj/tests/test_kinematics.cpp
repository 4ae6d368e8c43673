#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include <doctest.h>

#include "ssbloc/kinematics.hpp"

using ssbloc::RrhSite;
using ssbloc::SpeedProfile;
using ssbloc::TrackModel;
using ssbloc::VehicleState;

namespace {

constexpr double kDeg = M_PI / 180.0;

// Oracle: integrate the speed profile numerically; the closed-form distance
// must agree with this independent quadrature.
double integrate_speed(const SpeedProfile& profile, const TrackModel& track,
                       double t_end) {
    const int steps = 200000;
    const double h = t_end / steps;
    double sum = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
        sum += w * profile.speed_at(std::min(i * h, t_end), track);
    }
    return sum * h;
}

}  // namespace

TEST_SUITE("kinematics") {

TEST_CASE("wrap_angle: maps onto the half-open interval (-pi, pi]") {
    CHECK(ssbloc::wrap_angle(0.0) == 0.0);
    CHECK(ssbloc::wrap_angle(M_PI) == doctest::Approx(M_PI));
    CHECK(ssbloc::wrap_angle(-M_PI) == doctest::Approx(M_PI));
    CHECK(ssbloc::wrap_angle(3.0 * M_PI) == doctest::Approx(M_PI));
    CHECK(ssbloc::wrap_angle(2.0 * M_PI) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ssbloc::wrap_angle(-0.5) == doctest::Approx(-0.5));
    CHECK(ssbloc::wrap_angle(7.5) == doctest::Approx(7.5 - 2.0 * M_PI));
}

TEST_CASE("speed profile: trapezoid segments and the 80.333 s total") {
    const TrackModel track;
    const SpeedProfile profile;
    CHECK(profile.v_max_mps == doctest::Approx(15.0 / 3.6));
    CHECK(profile.accel_duration_s() == doctest::Approx(profile.v_max_mps / 0.5));
    CHECK(profile.total_duration_s(track) == doctest::Approx(80.3333).epsilon(1e-5));
}

TEST_CASE("true_state: rest at the origin at t = 0") {
    const TrackModel track;
    const SpeedProfile profile;
    const VehicleState s0 = ssbloc::true_state(track, profile, 0.0);
    CHECK(s0.x_m == 0.0);
    CHECK(s0.y_m == 0.0);
    CHECK(s0.speed_mps == 0.0);
    CHECK(s0.aoh_rad == 0.0);
}

TEST_CASE("true_state: end of the acceleration ramp") {
    const TrackModel track;
    const SpeedProfile profile;
    const double t_acc = profile.accel_duration_s();
    CHECK(t_acc == doctest::Approx(8.3333).epsilon(1e-4));
    const VehicleState s = ssbloc::true_state(track, profile, t_acc);
    CHECK(s.speed_mps == doctest::Approx(4.16667).epsilon(1e-4));
    // Arc length = v^2 / (2a) = 17.36 m.
    CHECK(profile.distance_at(t_acc, track) == doctest::Approx(17.36).epsilon(1e-3));
}

TEST_CASE("true_state: the run closes at 300 m with zero speed") {
    const TrackModel track;
    const SpeedProfile profile;
    const double t_end = profile.total_duration_s(track);
    CHECK(profile.distance_at(t_end, track) == doctest::Approx(300.0).epsilon(1e-5));
    const VehicleState s = ssbloc::true_state(track, profile, t_end);
    CHECK(std::abs(s.speed_mps) < 1e-6);
    // Heading has swept the full cumulative bend.
    CHECK(s.aoh_rad == doctest::Approx(track.cumulative_bend_rad).epsilon(1e-9));
    CHECK_THROWS_AS((void)ssbloc::true_state(track, profile, t_end + 0.1),
                    std::domain_error);
    CHECK_THROWS_AS((void)ssbloc::true_state(track, profile, -0.1),
                    std::domain_error);
}

TEST_CASE("true_state: path length agrees with numeric speed integration") {
    const TrackModel track;
    const SpeedProfile profile;
    const double t_end = profile.total_duration_s(track);
    const double arc = integrate_speed(profile, track, t_end);
    CHECK(std::abs(arc - 300.0) < 1e-3);
}

TEST_CASE("true_state: zero bend degenerates to a straight line") {
    TrackModel track;
    track.cumulative_bend_rad = 0.0;
    const SpeedProfile profile;
    for (double t : {0.0, 10.0, 40.0, 80.0}) {
        const VehicleState s = ssbloc::true_state(track, profile, t);
        CHECK(s.y_m == 0.0);
        CHECK(s.aoh_rad == 0.0);
        CHECK(s.x_m == doctest::Approx(profile.distance_at(t, track)).epsilon(1e-12));
    }
}

TEST_CASE("true_state: poses stay on the constant-curvature arc") {
    const TrackModel track;
    const SpeedProfile profile;
    const double radius = 1.0 / track.curvature();
    CHECK(radius == doctest::Approx(1200.3).epsilon(1e-3));
    for (double t : {5.0, 20.0, 55.0, 80.0}) {
        const VehicleState s = ssbloc::true_state(track, profile, t);
        // Circle center at (0, R).
        const double r = std::hypot(s.x_m, s.y_m - radius);
        CHECK(r == doctest::Approx(radius).epsilon(1e-9));
        CHECK(s.aoh_rad ==
              doctest::Approx(track.curvature() * profile.distance_at(t, track))
                  .epsilon(1e-9));
    }
}

TEST_CASE("true_aoa: bearing from the origin to the default site") {
    const RrhSite rrh;
    VehicleState state;
    const double expected = std::atan2(100.0, 205.0);
    CHECK(ssbloc::true_aoa(state, rrh) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(ssbloc::true_aoa(state, rrh) == doctest::Approx(26.01 * kDeg).epsilon(1e-3));

    state.aoh_rad = expected;  // aligned with the bearing
    CHECK(ssbloc::true_aoa(state, rrh) == doctest::Approx(0.0).epsilon(1e-12));

    state.aoh_rad = expected - 10.0 * kDeg;
    CHECK(ssbloc::true_aoa(state, rrh) == doctest::Approx(10.0 * kDeg).epsilon(1e-12));
}

TEST_CASE("compute_aois: bearings to the radio head") {
    const RrhSite rrh;
    CHECK(ssbloc::compute_aois(0.0, 0.0, rrh) ==
          doctest::Approx(std::atan2(100.0, 205.0)).epsilon(1e-12));
    CHECK(ssbloc::compute_aois(205.0, 0.0, rrh) ==
          doctest::Approx(90.0 * kDeg).epsilon(1e-12));
    CHECK(ssbloc::compute_aois(405.0, 100.0, rrh) ==
          doctest::Approx(180.0 * kDeg).epsilon(1e-12));
}

TEST_CASE("compute_aoh: heading equals incident angle minus arrival angle") {
    CHECK(ssbloc::compute_aoh(26.0 * kDeg, 26.0 * kDeg) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ssbloc::compute_aoh(26.0 * kDeg, 16.0 * kDeg) ==
          doctest::Approx(10.0 * kDeg).epsilon(1e-12));
}

TEST_CASE("compute_aoh: inverts true_aoa at the true position") {
    const TrackModel track;
    const SpeedProfile profile;
    const RrhSite rrh;
    for (double t : {0.0, 12.5, 33.0, 61.0, 79.0}) {
        const VehicleState s = ssbloc::true_state(track, profile, t);
        const double aois = ssbloc::compute_aois(s.x_m, s.y_m, rrh);
        const double aoa = ssbloc::true_aoa(s, rrh);
        CHECK(ssbloc::compute_aoh(aois, aoa) ==
              doctest::Approx(s.aoh_rad).epsilon(1e-9));
    }
}

TEST_CASE("dead_reckon: axis-aligned steps") {
    VehicleState est;
    const VehicleState frozen = ssbloc::dead_reckon(est, 0.0, 0.5);
    CHECK(frozen.x_m == 0.0);
    CHECK(frozen.y_m == 0.0);

    est.aoh_rad = 0.0;
    const VehicleState forward = ssbloc::dead_reckon(est, 4.1667, 0.24);
    CHECK(forward.x_m == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(forward.y_m == 0.0);

    est.aoh_rad = 90.0 * kDeg;
    const VehicleState up = ssbloc::dead_reckon(est, 1.0, 1.0);
    CHECK(up.x_m == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(up.y_m == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)ssbloc::dead_reckon(est, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)ssbloc::dead_reckon(est, 1.0, -0.1), std::domain_error);
}

TEST_CASE("dead reckoning closure: exact arrival angles every 20 ms stay close") {
    // Dead reckoning with the exact arrival angle at every step and perfect
    // odometry (interval-average speed, i.e. exact distance per step).
    // Residuals come from holding the heading constant across each 20 ms
    // interval and from deriving the incident angle at the *estimated*
    // position, which feeds position error back into the heading. The loop
    // must stay within the heading-staleness bound over the whole run.
    const TrackModel track;
    const SpeedProfile profile;
    const RrhSite rrh;
    const double t_end = profile.total_duration_s(track);
    const double dt = 0.020;

    VehicleState est;  // starts at the true pose
    double worst = 0.0;
    double t = 0.0;
    while (t + dt <= t_end) {
        const VehicleState truth_now = ssbloc::true_state(track, profile, t);
        const double aoa = ssbloc::true_aoa(truth_now, rrh);
        const double aois = ssbloc::compute_aois(est.x_m, est.y_m, rrh);
        est.aoh_rad = ssbloc::compute_aoh(aois, aoa);
        const double odo = (profile.distance_at(t + dt, track) -
                            profile.distance_at(t, track)) /
                           dt;
        est = ssbloc::dead_reckon(est, odo, dt);
        t += dt;
        const VehicleState truth_next = ssbloc::true_state(track, profile, t);
        worst = std::max(worst, std::hypot(est.x_m - truth_next.x_m,
                                           est.y_m - truth_next.y_m));
    }
    CHECK(worst < 0.02);
}

}  // TEST_SUITE
