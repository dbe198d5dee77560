#pragma once

#include "respscreen/audio.hpp"

namespace respscreen {

/// Sound-activity-detection and trimming parameters.
struct SadConfig {
    double amplitude_threshold = 0.01;  // keep samples with |x| strictly above this
    double margin = 0.050;              // seconds retained around each active sample
    double edge_trim = 0.020;           // seconds discarded from each end afterwards

    void validate() const;  // throws Error on out-of-range values
};

/// Scale so the peak absolute sample is exactly 1. Throws AllZeroSignal.
AudioClip normalize_amplitude(const AudioClip& clip);

/// Keep the union of [i - margin, i + margin] windows around samples with
/// |x| > threshold, concatenated in order; discard everything else.
/// Throws NoActivity when nothing exceeds the threshold.
AudioClip sound_activity_detect(const AudioClip& clip, const SadConfig& cfg);

/// Drop floor(edge_trim * rate) samples from each end. Throws ClipTooShort.
AudioClip trim_edges(const AudioClip& clip, double edge_trim);

/// The full preparation chain: normalize -> SAD -> edge trim.
AudioClip preprocess(const AudioClip& clip, const SadConfig& cfg);

}  // namespace respscreen
