#include "ssbloc/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssbloc {

NormalizedErrors normalize_errors(double snr_db, double v_meas_mps,
                                  double v_plan_mps, const SnrBounds& bounds,
                                  double v_max_mps) {
    if (bounds.hi_db <= bounds.lo_db)
        throw std::invalid_argument("normalize_errors: snr hi bound must exceed lo");
    if (v_max_mps <= 0.0)
        throw std::invalid_argument("normalize_errors: v_max must be positive");

    NormalizedErrors e;
    e.snr = std::clamp(
        2.0 * (bounds.hi_db - snr_db) / (bounds.hi_db - bounds.lo_db) - 1.0, -1.0,
        1.0);
    e.vel = std::clamp(
        2.0 * std::abs(v_plan_mps - v_meas_mps) / v_max_mps - 1.0, -1.0, 1.0);
    return e;
}

WakeUpController::WakeUpController(const PidGains& gains, double t_base_s,
                                   double t_max_s)
    : gains_(gains), t_base_s_(t_base_s), t_max_s_(t_max_s) {
    if (t_base_s <= 0.0)
        throw std::invalid_argument("WakeUpController: t_base must be positive");
    if (t_max_s < t_base_s)
        throw std::invalid_argument("WakeUpController: t_max must be >= t_base");
}

double WakeUpController::update(const NormalizedErrors& errors, double dt_s) {
    if (dt_s <= 0.0)
        throw std::domain_error("WakeUpController: dt must be positive");

    const double error = gains_.w_snr * errors.snr + gains_.w_vel * errors.vel;
    const double integral_candidate = integral_ + error * dt_s;
    const double derivative = (error - previous_error_) / dt_s;
    const double u = gains_.kp * error + gains_.ki * integral_candidate +
                     gains_.kd * derivative;
    previous_error_ = error;

    const double raw = t_base_s_ + u;
    const double wake = std::clamp(raw, t_base_s_, t_max_s_);

    // Conditional integration: drop the accumulation when the output is
    // pinned at a clamp and the error keeps pushing into it.
    const bool winding_high = raw > t_max_s_ && error > 0.0;
    const bool winding_low = raw < t_base_s_ && error < 0.0;
    if (!winding_high && !winding_low) integral_ = integral_candidate;

    return wake;
}

}  // namespace ssbloc
