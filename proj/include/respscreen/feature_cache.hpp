#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "respscreen/features.hpp"
#include "respscreen/matrix.hpp"
#include "respscreen/preprocess.hpp"

namespace respscreen {

/// On-disk feature cache: one binary record per file id holding the frame
/// matrix as row-major 32-bit floats plus the hash of the configuration that
/// produced it. Records whose hash no longer matches are recomputed.
///
/// Cached frames are float32, so users of the cache must see float32-rounded
/// values even on a cold run; quantize_to_f32 applies the same rounding in
/// memory, keeping cold and warm runs bit-identical.
class FeatureCache {
public:
    FeatureCache(std::filesystem::path dir, std::uint64_t config_hash);

    std::optional<Matrix> load(const std::string& id) const;
    void store(const std::string& id, const Matrix& features) const;

    static std::uint64_t config_hash(const FeatureConfig& features, const SadConfig& sad,
                                     double sample_rate);

private:
    std::filesystem::path record_path(const std::string& id) const;

    std::filesystem::path dir_;
    std::uint64_t config_hash_ = 0;
};

/// Round every entry to the nearest float32.
void quantize_to_f32(Matrix& m);

}  // namespace respscreen
