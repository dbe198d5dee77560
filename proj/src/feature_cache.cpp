#include "respscreen/feature_cache.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "respscreen/errors.hpp"

namespace respscreen {

namespace {

constexpr char kMagic[4] = {'R', 'S', 'F', 'C'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool read_raw(std::ifstream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return static_cast<bool>(in);
}

}  // namespace

FeatureCache::FeatureCache(std::filesystem::path dir, std::uint64_t config_hash)
    : dir_(std::move(dir)), config_hash_(config_hash) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw IoError("cannot create cache directory: " + dir_.string());
    }
}

std::filesystem::path FeatureCache::record_path(const std::string& id) const {
    return dir_ / (id + ".feat");
}

std::optional<Matrix> FeatureCache::load(const std::string& id) const {
    std::ifstream in(record_path(id), std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        return std::nullopt;
    }
    std::uint32_t version = 0;
    std::uint64_t hash = 0;
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    if (!read_raw(in, version) || !read_raw(in, hash) || !read_raw(in, rows) ||
        !read_raw(in, cols)) {
        return std::nullopt;
    }
    if (version != kVersion || hash != config_hash_) {
        return std::nullopt;  // stale record; caller recomputes
    }
    std::vector<float> buf(static_cast<std::size_t>(rows) * cols);
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (!in) {
        return std::nullopt;
    }
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < buf.size(); ++i) {
        m.data()[i] = static_cast<double>(buf[i]);
    }
    return m;
}

void FeatureCache::store(const std::string& id, const Matrix& features) const {
    const auto path = record_path(id);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot write cache record: " + tmp);
        }
        out.write(kMagic, 4);
        write_raw(out, kVersion);
        write_raw(out, config_hash_);
        write_raw(out, static_cast<std::uint32_t>(features.rows()));
        write_raw(out, static_cast<std::uint32_t>(features.cols()));
        std::vector<float> buf(features.data().size());
        for (std::size_t i = 0; i < buf.size(); ++i) {
            buf[i] = static_cast<float>(features.data()[i]);
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(float)));
        if (!out) {
            throw IoError("short write on cache record: " + tmp);
        }
    }
    std::filesystem::rename(tmp, path);
}

std::uint64_t FeatureCache::config_hash(const FeatureConfig& features, const SadConfig& sad,
                                        double sample_rate) {
    std::ostringstream text;
    text.precision(17);
    text << "mfcc:" << features.n_mfcc << ',' << features.frame_length << ','
         << features.hop_length << ',' << features.n_mels << ',' << features.fmin << ','
         << features.fmax << ',' << features.delta_width << ";sad:" << sad.amplitude_threshold
         << ',' << sad.margin << ',' << sad.edge_trim << ";rate:" << sample_rate;
    return fnv1a(text.str());
}

void quantize_to_f32(Matrix& m) {
    for (double& v : m.data()) {
        v = static_cast<double>(static_cast<float>(v));
    }
}

}  // namespace respscreen
