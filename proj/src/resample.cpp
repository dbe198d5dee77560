#include <algorithm>
#include <cmath>
#include <vector>

#include "respscreen/audio.hpp"
#include "respscreen/errors.hpp"

namespace respscreen {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Kaiser design: 90 dB stop-band, transition band 5% of the output Nyquist.
constexpr double kStopbandDb = 90.0;
constexpr double kCutoffRatio = 0.95;   // pass-band edge relative to output Nyquist
constexpr int kTableStepsPerTap = 256;  // kernel table resolution; linear interp between steps

double bessel_i0(double x) {
    // power series; converges quickly for the argument range used here
    double term = 1.0;
    double sum = 1.0;
    const double half_x = x / 2.0;
    for (int k = 1; k < 64; ++k) {
        term *= (half_x / k) * (half_x / k);
        sum += term;
        if (term < sum * 1e-18) {
            break;
        }
    }
    return sum;
}

double sinc(double x) {
    if (std::abs(x) < 1e-12) {
        return 1.0;
    }
    return std::sin(kPi * x) / (kPi * x);
}

}  // namespace

AudioClip resample(const AudioClip& clip, double target_rate) {
    if (clip.empty()) {
        throw EmptyClip("resample: empty clip");
    }
    if (target_rate <= 0.0) {
        throw Error("resample: target rate must be positive");
    }
    if (clip.sample_rate == target_rate) {
        return clip;
    }

    const double ratio = target_rate / clip.sample_rate;
    const double scale = std::min(1.0, ratio);  // kernel stretch when downsampling

    // cutoff and half-width in source-sample units
    const double cutoff = 0.5 * scale * kCutoffRatio;            // cycles per source sample
    const double transition = 0.5 * scale * (1.0 - kCutoffRatio);
    const double beta = 0.1102 * (kStopbandDb - 8.7);
    const int half_width = static_cast<int>(
        std::ceil((kStopbandDb - 7.95) / (2.285 * 2.0 * kPi * transition) / 2.0));

    // windowed-sinc kernel sampled on a fine grid over [0, half_width]
    const int table_size = half_width * kTableStepsPerTap + 2;
    std::vector<double> table(table_size, 0.0);
    const double i0_beta = bessel_i0(beta);
    for (int i = 0; i < table_size - 1; ++i) {
        const double t = static_cast<double>(i) / kTableStepsPerTap;
        if (t > half_width) {
            break;
        }
        const double u = t / half_width;
        const double window = bessel_i0(beta * std::sqrt(std::max(0.0, 1.0 - u * u))) / i0_beta;
        table[i] = 2.0 * cutoff * sinc(2.0 * cutoff * t) * window;
    }

    auto kernel = [&](double t) {
        const double pos = std::abs(t) * kTableStepsPerTap;
        const int i0 = static_cast<int>(pos);
        if (i0 + 1 >= table_size) {
            return 0.0;
        }
        const double frac = pos - i0;
        return table[i0] + frac * (table[i0 + 1] - table[i0]);
    };

    const std::size_t n_in = clip.samples.size();
    const std::size_t n_out = static_cast<std::size_t>(
        std::llround(static_cast<double>(n_in) * ratio));

    AudioClip out;
    out.sample_rate = target_rate;
    out.samples.assign(n_out, 0.0);

    const double step = 1.0 / ratio;
    for (std::size_t n = 0; n < n_out; ++n) {
        const double center = static_cast<double>(n) * step;
        const std::int64_t lo =
            std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(center - half_width)));
        const std::int64_t hi = std::min<std::int64_t>(
            static_cast<std::int64_t>(n_in) - 1,
            static_cast<std::int64_t>(std::floor(center + half_width)));
        double acc = 0.0;
        for (std::int64_t m = lo; m <= hi; ++m) {
            acc += clip.samples[static_cast<std::size_t>(m)] *
                   kernel(static_cast<double>(m) - center);
        }
        out.samples[n] = acc;
    }
    return out;
}

}  // namespace respscreen
