#include "respscreen/features.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "respscreen/errors.hpp"
#include "respscreen/fft.hpp"

namespace respscreen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLogPowerFloor = 1e-10;

double hz_to_mel(double hz) {
    return 2595.0 * std::log10(1.0 + hz / 700.0);
}

double mel_to_hz(double mel) {
    return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

/// Index into [0, n) with boundary bounce, mirroring around the edge
/// samples without repeating them (numpy-style reflect padding).
std::size_t reflect_index(std::int64_t i, std::int64_t n) {
    if (n == 1) {
        return 0;
    }
    const std::int64_t period = 2 * (n - 1);
    std::int64_t m = i % period;
    if (m < 0) {
        m += period;
    }
    if (m >= n) {
        m = period - m;
    }
    return static_cast<std::size_t>(m);
}

}  // namespace

void FeatureConfig::validate() const {
    if (n_mfcc <= 0 || n_mels <= 0 || n_mfcc > n_mels) {
        throw Error("FeatureConfig: need 0 < n_mfcc <= n_mels");
    }
    if (frame_length <= 0 || hop_length <= 0 || hop_length > frame_length) {
        throw Error("FeatureConfig: need 0 < hop_length <= frame_length");
    }
    if (fmin < 0.0 || (fmax != 0.0 && fmax <= fmin)) {
        throw Error("FeatureConfig: bad fmin/fmax");
    }
    if (delta_width < 3 || delta_width % 2 == 0) {
        throw BadWidth("FeatureConfig: delta width must be odd and >= 3");
    }
}

Matrix mel_filterbank(int n_mels, int n_fft, double sample_rate, double fmin, double fmax) {
    if (fmax == 0.0) {
        fmax = sample_rate / 2.0;
    }
    const int n_bins = n_fft / 2 + 1;

    // n_mels + 2 band edges, equally spaced on the mel scale
    std::vector<double> edges(n_mels + 2);
    const double mel_lo = hz_to_mel(fmin);
    const double mel_hi = hz_to_mel(fmax);
    for (int i = 0; i < n_mels + 2; ++i) {
        edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (n_mels + 1));
    }

    Matrix fb(static_cast<std::size_t>(n_mels), static_cast<std::size_t>(n_bins), 0.0);
    for (int m = 0; m < n_mels; ++m) {
        const double left = edges[m];
        const double center = edges[m + 1];
        const double right = edges[m + 2];
        const double area_norm = 2.0 / (right - left);
        for (int k = 0; k < n_bins; ++k) {
            const double f = sample_rate * k / n_fft;
            const double up = (f - left) / (center - left);
            const double down = (right - f) / (right - center);
            const double w = std::max(0.0, std::min(up, down));
            fb(static_cast<std::size_t>(m), static_cast<std::size_t>(k)) = w * area_norm;
        }
    }
    return fb;
}

Matrix dct_matrix(int n_out, int n_in) {
    Matrix d(static_cast<std::size_t>(n_out), static_cast<std::size_t>(n_in));
    const double scale0 = std::sqrt(1.0 / n_in);
    const double scale = std::sqrt(2.0 / n_in);
    for (int k = 0; k < n_out; ++k) {
        for (int n = 0; n < n_in; ++n) {
            d(static_cast<std::size_t>(k), static_cast<std::size_t>(n)) =
                (k == 0 ? scale0 : scale) * std::cos(kPi * k * (2.0 * n + 1.0) / (2.0 * n_in));
        }
    }
    return d;
}

Matrix mfcc(const AudioClip& clip, const FeatureConfig& cfg) {
    cfg.validate();
    if (clip.empty()) {
        throw EmptyClip("mfcc: empty clip");
    }

    const std::int64_t n = static_cast<std::int64_t>(clip.samples.size());
    const int frame = cfg.frame_length;
    const int hop = cfg.hop_length;
    const std::size_t n_frames = 1 + static_cast<std::size_t>(n / hop);
    const int n_bins = frame / 2 + 1;

    std::vector<double> window(static_cast<std::size_t>(frame));
    for (int i = 0; i < frame; ++i) {
        window[static_cast<std::size_t>(i)] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / frame);
    }

    const Matrix fb = mel_filterbank(cfg.n_mels, frame, clip.sample_rate, cfg.fmin, cfg.fmax);
    const Matrix dct = dct_matrix(cfg.n_mfcc, cfg.n_mels);
    const Fft fft(static_cast<std::size_t>(frame));

    Matrix out(n_frames, static_cast<std::size_t>(cfg.n_mfcc));
    std::vector<double> frame_buf(static_cast<std::size_t>(frame));
    std::vector<double> power(static_cast<std::size_t>(n_bins));
    std::vector<double> log_mel(static_cast<std::size_t>(cfg.n_mels));

    const std::int64_t pad = frame / 2;  // centered framing
    for (std::size_t t = 0; t < n_frames; ++t) {
        const std::int64_t start = static_cast<std::int64_t>(t) * hop - pad;
        for (int i = 0; i < frame; ++i) {
            frame_buf[static_cast<std::size_t>(i)] =
                clip.samples[reflect_index(start + i, n)] * window[static_cast<std::size_t>(i)];
        }

        const auto spectrum = fft.real_spectrum(frame_buf);
        for (int k = 0; k < n_bins; ++k) {
            power[static_cast<std::size_t>(k)] = std::norm(spectrum[static_cast<std::size_t>(k)]);
        }

        for (int m = 0; m < cfg.n_mels; ++m) {
            const auto row = fb.row(static_cast<std::size_t>(m));
            double acc = 0.0;
            for (int k = 0; k < n_bins; ++k) {
                acc += row[static_cast<std::size_t>(k)] * power[static_cast<std::size_t>(k)];
            }
            log_mel[static_cast<std::size_t>(m)] =
                10.0 * std::log10(std::max(acc, kLogPowerFloor));
        }

        for (int c = 0; c < cfg.n_mfcc; ++c) {
            const auto row = dct.row(static_cast<std::size_t>(c));
            double acc = 0.0;
            for (int m = 0; m < cfg.n_mels; ++m) {
                acc += row[static_cast<std::size_t>(m)] * log_mel[static_cast<std::size_t>(m)];
            }
            out(t, static_cast<std::size_t>(c)) = acc;
        }
    }
    return out;
}

Matrix deltas(const Matrix& m, int width) {
    if (width < 3 || width % 2 == 0) {
        throw BadWidth("deltas: width must be odd and >= 3");
    }
    const std::int64_t rows = static_cast<std::int64_t>(m.rows());
    const std::size_t cols = m.cols();
    const int half = (width - 1) / 2;

    double denom = 0.0;
    for (int k = 1; k <= half; ++k) {
        denom += 2.0 * k * k;
    }

    auto clamp_row = [rows](std::int64_t r) {
        return static_cast<std::size_t>(std::clamp<std::int64_t>(r, 0, rows - 1));
    };

    Matrix out(m.rows(), cols);
    for (std::int64_t t = 0; t < rows; ++t) {
        for (std::size_t c = 0; c < cols; ++c) {
            double acc = 0.0;
            for (int k = 1; k <= half; ++k) {
                acc += k * (m(clamp_row(t + k), c) - m(clamp_row(t - k), c));
            }
            out(static_cast<std::size_t>(t), c) = acc / denom;
        }
    }
    return out;
}

Matrix extract_features(const AudioClip& clip, const FeatureConfig& cfg) {
    cfg.validate();
    if (static_cast<std::int64_t>(clip.samples.size()) < cfg.frame_length) {
        throw EmptyClip("extract_features: clip shorter than one frame");
    }

    const Matrix base = mfcc(clip, cfg);
    const Matrix d1 = deltas(base, cfg.delta_width);
    const Matrix d2 = deltas(d1, cfg.delta_width);

    const std::size_t t = base.rows();
    const std::size_t d = base.cols();
    Matrix out(t, 3 * d);
    for (std::size_t r = 0; r < t; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            out(r, c) = base(r, c);
            out(r, d + c) = d1(r, c);
            out(r, 2 * d + c) = d2(r, c);
        }
    }
    return out;
}

}  // namespace respscreen
