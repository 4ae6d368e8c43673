#pragma once

namespace ssbloc {

/// @brief PID gains and error weights for the wake-up controller.
struct PidGains {
    double kp = 0.75;
    double ki = 0.08;
    double kd = 0.195;
    double w_snr = 0.6;
    double w_vel = 0.4;
};

/// @brief Error-normalization window: SNR inside [lo, hi] maps linearly onto
/// [-1, 1] with low SNR positive (press for longer wake-ups).
struct SnrBounds {
    double lo_db = 5.0;
    double hi_db = 30.0;
};

struct NormalizedErrors {
    double snr = 0.0;
    double vel = 0.0;
};

/// @brief Maps raw SNR and velocity mismatch into clipped [-1, 1] errors.
///
/// snr error: clip(2*(hi - snr)/(hi - lo) - 1); velocity error:
/// clip(2*|v_plan - v_meas|/v_max - 1). Throws std::invalid_argument when
/// hi <= lo or v_max <= 0.
NormalizedErrors normalize_errors(double snr_db, double v_meas_mps,
                                  double v_plan_mps, const SnrBounds& bounds,
                                  double v_max_mps);

/// @brief Discrete PID over the weighted error, clamped to [t_base, t_max].
///
/// Each update folds the weighted error into the integral, forms the
/// derivative against the previous error over dt, and emits
/// clip(t_base + kp*e + ki*I + kd*de/dt). Conditional integration keeps the
/// integral from accumulating while the output is clamped and the error
/// pushes further into the clamp.
class WakeUpController {
public:
    WakeUpController(const PidGains& gains, double t_base_s, double t_max_s);

    /// Consumes one error sample and returns the next wake-up time in
    /// seconds. dt is the interval the previous wake-up command spanned;
    /// throws std::domain_error for dt <= 0.
    double update(const NormalizedErrors& errors, double dt_s);

    double t_base_s() const { return t_base_s_; }
    double t_max_s() const { return t_max_s_; }
    double integral() const { return integral_; }
    double previous_error() const { return previous_error_; }

private:
    PidGains gains_;
    double t_base_s_;
    double t_max_s_;
    double integral_ = 0.0;
    double previous_error_ = 0.0;
};

}  // namespace ssbloc
