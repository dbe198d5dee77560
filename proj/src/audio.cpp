#include "respscreen/audio.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "respscreen/errors.hpp"

namespace respscreen {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

double decode_sample(const unsigned char* p, std::uint16_t bits, std::uint16_t format) {
    if (format == kFormatIeeeFloat) {
        float f;
        std::memcpy(&f, p, 4);
        return static_cast<double>(f);
    }
    switch (bits) {
        case 16: {
            const auto v = static_cast<std::int16_t>(read_u16(p));
            return static_cast<double>(v) / 32768.0;
        }
        case 24: {
            std::int32_t v = static_cast<std::int32_t>(p[0]) |
                             (static_cast<std::int32_t>(p[1]) << 8) |
                             (static_cast<std::int32_t>(p[2]) << 16);
            if (v & 0x800000) {
                v |= ~0xFFFFFF;
            }
            return static_cast<double>(v) / 8388608.0;
        }
        case 32: {
            const auto v = static_cast<std::int32_t>(read_u32(p));
            return static_cast<double>(v) / 2147483648.0;
        }
        default:
            return 0.0;
    }
}

}  // namespace

AudioClip decode_audio(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        throw FileNotFound("audio file not found: " + path.string());
    }

    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FileNotFound("cannot open audio file: " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());

    if (bytes.size() >= 4 && std::memcmp(bytes.data(), "fLaC", 4) == 0) {
        throw UnsupportedFormat("FLAC decoding is not built into this binary: " + path.string());
    }
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
        throw UnsupportedFormat("not a RIFF/WAVE file: " + path.string());
    }

    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint32_t rate = 0;
    std::uint16_t bits = 0;
    bool have_fmt = false;

    const unsigned char* data = nullptr;
    std::uint32_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const unsigned char* hdr = bytes.data() + pos;
        const std::uint32_t chunk_size = read_u32(hdr + 4);
        const std::size_t body = pos + 8;

        if (std::memcmp(hdr, "fmt ", 4) == 0) {
            if (chunk_size < 16 || body + 16 > bytes.size()) {
                throw CorruptStream("truncated fmt chunk: " + path.string());
            }
            const unsigned char* f = bytes.data() + body;
            format = read_u16(f);
            channels = read_u16(f + 2);
            rate = read_u32(f + 4);
            bits = read_u16(f + 14);
            if (format == kFormatExtensible) {
                // subformat GUID starts with the effective format tag
                if (chunk_size < 40 || body + 40 > bytes.size()) {
                    throw CorruptStream("truncated extensible fmt chunk: " + path.string());
                }
                format = read_u16(f + 24);
            }
            have_fmt = true;
        } else if (std::memcmp(hdr, "data", 4) == 0) {
            if (body + chunk_size > bytes.size()) {
                throw CorruptStream("data chunk exceeds file size: " + path.string());
            }
            data = bytes.data() + body;
            data_size = chunk_size;
        }
        pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
    }

    if (!have_fmt || data == nullptr) {
        throw CorruptStream("missing fmt or data chunk: " + path.string());
    }
    if (channels == 0 || rate == 0) {
        throw CorruptStream("inconsistent fmt header: " + path.string());
    }
    if (format == kFormatIeeeFloat) {
        if (bits != 32) {
            throw UnsupportedFormat("only 32-bit float WAV is supported: " + path.string());
        }
    } else if (format == kFormatPcm) {
        if (bits != 16 && bits != 24 && bits != 32) {
            throw UnsupportedFormat("unsupported PCM bit depth " + std::to_string(bits) + ": " +
                                    path.string());
        }
    } else {
        throw UnsupportedFormat("unsupported WAV codec tag " + std::to_string(format) + ": " +
                                path.string());
    }

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t frame_size = bytes_per_sample * channels;
    const std::size_t frames = data_size / frame_size;

    AudioClip clip;
    clip.sample_rate = static_cast<double>(rate);
    clip.samples.resize(frames);
    const double inv_channels = 1.0 / static_cast<double>(channels);
    for (std::size_t i = 0; i < frames; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
            acc += decode_sample(data + i * frame_size + c * bytes_per_sample, bits, format);
        }
        clip.samples[i] = acc * inv_channels;
    }
    return clip;
}

namespace {

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xFF));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
    out.push_back(static_cast<unsigned char>(v & 0xFF));
    out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
    out.push_back(static_cast<unsigned char>((v >> 16) & 0xFF));
    out.push_back(static_cast<unsigned char>((v >> 24) & 0xFF));
}

}  // namespace

void write_wav16(const std::filesystem::path& path, const AudioClip& clip) {
    const std::uint32_t rate = static_cast<std::uint32_t>(std::lround(clip.sample_rate));
    const std::uint32_t data_size = static_cast<std::uint32_t>(clip.samples.size() * 2);

    std::vector<unsigned char> out;
    out.reserve(44 + data_size);
    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, kFormatPcm);
    put_u16(out, 1);  // mono
    put_u32(out, rate);
    put_u32(out, rate * 2);
    put_u16(out, 2);
    put_u16(out, 16);
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_size);

    for (double s : clip.samples) {
        // inverse of the decode scaling, so round trips stay within one LSB
        const long v = std::lrint(s * 32768.0);
        const long clamped = std::clamp(v, -32768L, 32767L);
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(clamped)));
    }

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot open for writing: " + path.string());
    }
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f) {
        throw IoError("short write: " + path.string());
    }
}

}  // namespace respscreen
