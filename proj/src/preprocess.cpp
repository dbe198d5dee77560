#include "respscreen/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "respscreen/errors.hpp"

namespace respscreen {

void SadConfig::validate() const {
    if (amplitude_threshold <= 0.0) {
        throw Error("SadConfig: amplitude threshold must be positive");
    }
    if (margin < 0.0 || edge_trim < 0.0) {
        throw Error("SadConfig: margin and edge trim must be non-negative");
    }
}

AudioClip normalize_amplitude(const AudioClip& clip) {
    if (clip.empty()) {
        throw EmptyClip("normalize_amplitude: empty clip");
    }
    double peak = 0.0;
    for (double s : clip.samples) {
        peak = std::max(peak, std::abs(s));
    }
    if (peak == 0.0) {
        throw AllZeroSignal("normalize_amplitude: signal is all zeros");
    }
    AudioClip out;
    out.sample_rate = clip.sample_rate;
    out.samples.resize(clip.samples.size());
    for (std::size_t i = 0; i < clip.samples.size(); ++i) {
        out.samples[i] = clip.samples[i] / peak;
    }
    return out;
}

AudioClip sound_activity_detect(const AudioClip& clip, const SadConfig& cfg) {
    if (clip.empty()) {
        throw EmptyClip("sound_activity_detect: empty clip");
    }
    cfg.validate();

    const std::int64_t n = static_cast<std::int64_t>(clip.samples.size());
    const std::int64_t margin =
        static_cast<std::int64_t>(std::floor(cfg.margin * clip.sample_rate));

    AudioClip out;
    out.sample_rate = clip.sample_rate;

    // merge the +-margin windows around active samples into disjoint
    // intervals, then concatenate the intervals
    std::int64_t open_begin = -1;
    std::int64_t open_end = -1;  // exclusive
    for (std::int64_t i = 0; i < n; ++i) {
        if (std::abs(clip.samples[static_cast<std::size_t>(i)]) <= cfg.amplitude_threshold) {
            continue;
        }
        const std::int64_t lo = std::max<std::int64_t>(0, i - margin);
        const std::int64_t hi = std::min<std::int64_t>(n, i + margin + 1);
        if (open_begin < 0) {
            open_begin = lo;
            open_end = hi;
        } else if (lo <= open_end) {
            open_end = std::max(open_end, hi);
        } else {
            out.samples.insert(out.samples.end(),
                               clip.samples.begin() + open_begin,
                               clip.samples.begin() + open_end);
            open_begin = lo;
            open_end = hi;
        }
    }
    if (open_begin < 0) {
        throw NoActivity("sound_activity_detect: no sample exceeds threshold");
    }
    out.samples.insert(out.samples.end(),
                       clip.samples.begin() + open_begin,
                       clip.samples.begin() + open_end);
    return out;
}

AudioClip trim_edges(const AudioClip& clip, double edge_trim) {
    if (clip.empty()) {
        throw EmptyClip("trim_edges: empty clip");
    }
    if (edge_trim < 0.0) {
        throw Error("trim_edges: edge trim must be non-negative");
    }
    const std::size_t cut = static_cast<std::size_t>(std::floor(edge_trim * clip.sample_rate));
    if (clip.samples.size() <= 2 * cut) {
        throw ClipTooShort("trim_edges: clip shorter than twice the edge trim");
    }
    AudioClip out;
    out.sample_rate = clip.sample_rate;
    out.samples.assign(clip.samples.begin() + static_cast<std::ptrdiff_t>(cut),
                       clip.samples.end() - static_cast<std::ptrdiff_t>(cut));
    return out;
}

AudioClip preprocess(const AudioClip& clip, const SadConfig& cfg) {
    return trim_edges(sound_activity_detect(normalize_amplitude(clip), cfg), cfg.edge_trim);
}

}  // namespace respscreen
