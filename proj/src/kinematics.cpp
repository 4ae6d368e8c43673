#include "ssbloc/kinematics.hpp"

#include <stdexcept>

namespace ssbloc {

double wrap_angle(double angle_rad) {
    double a = std::fmod(angle_rad, 2.0 * M_PI);
    if (a <= -M_PI) a += 2.0 * M_PI;
    if (a > M_PI) a -= 2.0 * M_PI;
    return a;
}

void TrackModel::validate() const {
    if (length_m <= 0.0)
        throw std::domain_error("TrackModel: length must be positive");
    if (cumulative_bend_rad < 0.0)
        throw std::domain_error("TrackModel: bend must be non-negative");
}

double SpeedProfile::cruise_distance_m(const TrackModel& track) const {
    return track.length_m - accel_distance_m() - decel_distance_m();
}

double SpeedProfile::total_duration_s(const TrackModel& track) const {
    return accel_duration_s() + cruise_distance_m(track) / v_max_mps +
           decel_duration_s();
}

void SpeedProfile::validate(const TrackModel& track) const {
    track.validate();
    if (v_max_mps <= 0.0 || accel_mps2 <= 0.0 || decel_mps2 <= 0.0)
        throw std::domain_error("SpeedProfile: speeds and rates must be positive");
    if (cruise_distance_m(track) < 0.0)
        throw std::domain_error("SpeedProfile: track too short for the ramps");
}

double SpeedProfile::speed_at(double t_s, const TrackModel& track) const {
    const double t_acc = accel_duration_s();
    const double t_cruise_end = total_duration_s(track) - decel_duration_s();
    const double t_end = total_duration_s(track);
    if (t_s < 0.0 || t_s > t_end)
        throw std::domain_error("SpeedProfile: time outside the trajectory");
    if (t_s < t_acc) return accel_mps2 * t_s;
    if (t_s < t_cruise_end) return v_max_mps;
    return v_max_mps - decel_mps2 * (t_s - t_cruise_end);
}

double SpeedProfile::distance_at(double t_s, const TrackModel& track) const {
    const double t_acc = accel_duration_s();
    const double t_cruise_end = total_duration_s(track) - decel_duration_s();
    const double t_end = total_duration_s(track);
    if (t_s < 0.0 || t_s > t_end)
        throw std::domain_error("SpeedProfile: time outside the trajectory");
    if (t_s < t_acc) return 0.5 * accel_mps2 * t_s * t_s;
    if (t_s < t_cruise_end)
        return accel_distance_m() + v_max_mps * (t_s - t_acc);
    const double td = t_s - t_cruise_end;
    return track.length_m - decel_distance_m() + v_max_mps * td -
           0.5 * decel_mps2 * td * td;
}

VehicleState true_state(const TrackModel& track, const SpeedProfile& profile,
                        double t_s) {
    profile.validate(track);
    const double s = profile.distance_at(t_s, track);
    const double kappa = track.curvature();

    VehicleState state;
    state.t_s = t_s;
    state.speed_mps = profile.speed_at(t_s, track);
    state.aoh_rad = kappa * s;
    if (kappa == 0.0) {
        state.x_m = s;
        state.y_m = 0.0;
    } else {
        const double radius = 1.0 / kappa;
        state.x_m = radius * std::sin(kappa * s);
        state.y_m = radius * (1.0 - std::cos(kappa * s));
    }
    return state;
}

double true_aoa(const VehicleState& state, const RrhSite& rrh) {
    const double bearing =
        std::atan2(rrh.y_m - state.y_m, rrh.x_m - state.x_m);
    return wrap_angle(bearing - state.aoh_rad);
}

double compute_aois(double x_m, double y_m, const RrhSite& rrh) {
    return std::atan2(rrh.y_m - y_m, rrh.x_m - x_m);
}

double compute_aoh(double aois_rad, double aoa_rad) {
    return wrap_angle(aois_rad - aoa_rad);
}

VehicleState dead_reckon(const VehicleState& est, double odo_speed_mps,
                         double dt_s) {
    if (dt_s <= 0.0)
        throw std::domain_error("dead_reckon: dt must be positive");
    VehicleState next = est;
    next.t_s = est.t_s + dt_s;
    next.x_m = est.x_m + odo_speed_mps * std::cos(est.aoh_rad) * dt_s;
    next.y_m = est.y_m + odo_speed_mps * std::sin(est.aoh_rad) * dt_s;
    next.speed_mps = odo_speed_mps;
    return next;
}

}  // namespace ssbloc
