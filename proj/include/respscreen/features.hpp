#pragma once

#include "respscreen/audio.hpp"
#include "respscreen/matrix.hpp"

namespace respscreen {

/// Frame-level feature extraction parameters. The defaults give
/// 39 MFCC + 39 delta + 39 delta-delta = 117 dimensions per frame.
struct FeatureConfig {
    int n_mfcc = 39;
    int frame_length = 1024;  // window and FFT size, samples
    int hop_length = 441;     // samples
    int n_mels = 128;
    double fmin = 0.0;        // Hz
    double fmax = 0.0;        // Hz; 0 means sample_rate / 2
    int delta_width = 9;      // regression window, odd

    int feature_dim() const { return 3 * n_mfcc; }
    void validate() const;  // throws Error / BadWidth
};

/// Triangular mel filterbank, n_mels x (n_fft/2 + 1). Mel spacing follows
/// 2595 * log10(1 + f/700); each filter is scaled by 2 / (band width in Hz)
/// so filter areas are equal.
Matrix mel_filterbank(int n_mels, int n_fft, double sample_rate, double fmin, double fmax);

/// Orthonormal DCT-II matrix, n_out x n_in (applied to log-mel columns).
Matrix dct_matrix(int n_out, int n_in);

/// Per-frame MFCCs, T x n_mfcc with T = 1 + floor(n / hop). Frames are
/// centered with reflection padding, Hann-windowed, and the log filterbank
/// energies (dB, floored at 1e-10 power) are DCT-compressed.
/// Accepts any clip with at least one sample; throws EmptyClip otherwise.
Matrix mfcc(const AudioClip& clip, const FeatureConfig& cfg);

/// Local least-squares slope of each coefficient over a centered window of
/// `width` frames, edge frames replicated. Throws BadWidth.
Matrix deltas(const Matrix& m, int width);

/// [mfcc | delta | delta-delta], T x 3*n_mfcc. Clips shorter than one
/// frame are rejected with EmptyClip: they carry no usable content and a
/// failure here surfaces data problems instead of hiding them.
Matrix extract_features(const AudioClip& clip, const FeatureConfig& cfg);

}  // namespace respscreen
