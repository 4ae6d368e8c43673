#pragma once

#include <cmath>

namespace ssbloc {

/// Wraps an angle to the half-open interval (-pi, pi].
double wrap_angle(double angle_rad);

/// @brief Constant-curvature factory lane: a planar arc of fixed length whose
/// heading turns by cumulative_bend_rad from start to end.
struct TrackModel {
    double length_m = 300.0;
    double cumulative_bend_rad = 14.32 * M_PI / 180.0;

    double curvature() const { return cumulative_bend_rad / length_m; }
    /// Throws std::domain_error for non-positive length or negative bend.
    void validate() const;
};

/// @brief Trapezoidal speed plan: constant acceleration to cruise, cruise,
/// constant deceleration to rest, covering exactly the track length.
struct SpeedProfile {
    double v_max_mps = 15.0 / 3.6;
    double accel_mps2 = 0.5;
    double decel_mps2 = 0.5;

    double accel_duration_s() const { return v_max_mps / accel_mps2; }
    double decel_duration_s() const { return v_max_mps / decel_mps2; }
    double accel_distance_m() const {
        return 0.5 * v_max_mps * v_max_mps / accel_mps2;
    }
    double decel_distance_m() const {
        return 0.5 * v_max_mps * v_max_mps / decel_mps2;
    }

    double cruise_distance_m(const TrackModel& track) const;
    double total_duration_s(const TrackModel& track) const;
    double speed_at(double t_s, const TrackModel& track) const;
    double distance_at(double t_s, const TrackModel& track) const;

    /// Throws std::domain_error when the track is too short to reach cruise
    /// speed or any parameter is non-positive.
    void validate(const TrackModel& track) const;
};

/// @brief Planar pose plus speed; aoh_rad is the heading (angle of heading).
struct VehicleState {
    double t_s = 0.0;
    double x_m = 0.0;
    double y_m = 0.0;
    double speed_mps = 0.0;
    double aoh_rad = 0.0;
};

struct RrhSite {
    double x_m = 205.0;
    double y_m = 100.0;
};

/// @brief Ground-truth pose at time t (std::domain_error outside [0, total]).
VehicleState true_state(const TrackModel& track, const SpeedProfile& profile,
                        double t_s);

/// @brief Geometric angle of arrival implied by a pose: bearing to the radio
/// head minus the heading, wrapped to (-pi, pi].
double true_aoa(const VehicleState& state, const RrhSite& rrh);

/// @brief Angle of incident signal: bearing from an estimated position to the
/// radio head.
double compute_aois(double x_m, double y_m, const RrhSite& rrh);

/// @brief Heading recovered from the incident angle and a measured arrival
/// angle, wrapped to (-pi, pi].
double compute_aoh(double aois_rad, double aoa_rad);

/// @brief Advances an estimated pose by odometer speed along the current
/// heading. Throws std::domain_error for dt <= 0.
VehicleState dead_reckon(const VehicleState& est, double odo_speed_mps,
                         double dt_s);

}  // namespace ssbloc
