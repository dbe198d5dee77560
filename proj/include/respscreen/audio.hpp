#pragma once

#include <cstddef>
#include <filesystem>
#include <vector>

namespace respscreen {

/// All recordings are brought to this rate before preprocessing.
constexpr double kCanonicalSampleRate = 44100.0;

/// Mono audio in memory. Samples are dimensionless amplitudes, nominally in
/// [-1, 1]; the unit of all DSP in this library.
struct AudioClip {
    std::vector<double> samples;
    double sample_rate = 0.0;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }
    double duration() const {
        return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

/// Decode an audio file into a mono clip at the file's native rate.
/// PCM WAV (16/24/32-bit integer and 32-bit float) is supported;
/// multi-channel input is averaged down to mono.
/// Throws FileNotFound, UnsupportedFormat, CorruptStream.
AudioClip decode_audio(const std::filesystem::path& path);

/// Write a clip as 16-bit PCM WAV, rounding to the nearest step of 1/32768
/// and clamping to the int16 range.
void write_wav16(const std::filesystem::path& path, const AudioClip& clip);

/// Rate conversion with a Kaiser-windowed sinc kernel (stop-band > 80 dB).
/// Output length is round(n * target_rate / sample_rate). Identical rates
/// return the input unchanged. Throws EmptyClip.
AudioClip resample(const AudioClip& clip, double target_rate);

}  // namespace respscreen
