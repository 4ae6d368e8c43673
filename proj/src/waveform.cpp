#include "ssbloc/waveform.hpp"

#include <cmath>
#include <stdexcept>

#include "ssbloc/rng.hpp"

namespace ssbloc {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

std::size_t OfdmConfig::cp_samples() const {
    const double exact = cp_duration_s * sample_rate_hz();
    const auto rounded = static_cast<long long>(std::llround(exact));
    return rounded < 1 ? 1 : static_cast<std::size_t>(rounded);
}

void OfdmConfig::validate() const {
    if (!is_pow2(fft_size))
        throw std::invalid_argument("OfdmConfig: fft_size must be a power of two");
    if (active_subcarriers >= fft_size)
        throw std::invalid_argument(
            "OfdmConfig: active subcarriers must leave room for DC and guards");
    if (scs_hz <= 0.0)
        throw std::invalid_argument("OfdmConfig: subcarrier spacing must be positive");
    if (cp_duration_s <= 0.0)
        throw std::invalid_argument("OfdmConfig: cp duration must be positive");
}

BasebandFrame generate_frame(const OfdmConfig& cfg, std::uint64_t seed,
                             std::size_t symbol_count) {
    cfg.validate();
    if (symbol_count == 0)
        throw std::invalid_argument("generate_frame: symbol_count must be positive");

    const std::size_t n = cfg.fft_size;
    const std::size_t cp = cfg.cp_samples();
    const std::size_t pos_bins = cfg.active_subcarriers -
                                 cfg.active_subcarriers / 2;
    const std::size_t neg_bins = cfg.active_subcarriers / 2;

    Rng rng(seed);
    BasebandFrame frame;
    frame.symbol_count = symbol_count;
    frame.sample_rate_hz = cfg.sample_rate_hz();
    frame.samples.reserve(symbol_count * (cp + n));

    std::vector<cdouble> bins(n);
    for (std::size_t sym = 0; sym < symbol_count; ++sym) {
        std::fill(bins.begin(), bins.end(), cdouble{});
        // Positive frequencies occupy bins 1..pos_bins, negative frequencies
        // bins n-neg_bins..n-1; bin 0 (DC) and the outer guards stay empty.
        for (std::size_t k = 1; k <= pos_bins; ++k) {
            bins[k] = {rng.bit() ? M_SQRT1_2 : -M_SQRT1_2,
                       rng.bit() ? M_SQRT1_2 : -M_SQRT1_2};
        }
        for (std::size_t k = 0; k < neg_bins; ++k) {
            bins[n - 1 - k] = {rng.bit() ? M_SQRT1_2 : -M_SQRT1_2,
                               rng.bit() ? M_SQRT1_2 : -M_SQRT1_2};
        }
        const std::vector<cdouble> body = ifft(bins);
        for (std::size_t i = n - cp; i < n; ++i) frame.samples.push_back(body[i]);
        frame.samples.insert(frame.samples.end(), body.begin(), body.end());
    }

    double mean_power = 0.0;
    for (const auto& s : frame.samples) mean_power += std::norm(s);
    mean_power /= static_cast<double>(frame.samples.size());
    if (mean_power > 0.0) {
        const double scale = 1.0 / std::sqrt(mean_power);
        for (auto& s : frame.samples) s *= scale;
        frame.power_normalized = true;
    }
    return frame;
}

bool cp_check(const BasebandFrame& frame, const OfdmConfig& cfg) {
    cfg.validate();
    if (frame.symbol_count == 0 || cfg.fft_size == 0)
        throw std::invalid_argument("cp_check: zero-length symbol body");
    const std::size_t per_symbol = cfg.symbol_samples();
    if (frame.samples.size() != frame.symbol_count * per_symbol)
        throw std::invalid_argument("cp_check: sample count does not match numerology");

    const std::size_t cp = cfg.cp_samples();
    const std::size_t n = cfg.fft_size;
    for (std::size_t sym = 0; sym < frame.symbol_count; ++sym) {
        const std::size_t base = sym * per_symbol;
        for (std::size_t i = 0; i < cp; ++i) {
            if (frame.samples[base + i] != frame.samples[base + n + i]) return false;
        }
    }
    return true;
}

}  // namespace ssbloc
