#pragma once

#include <cstdint>
#include <filesystem>

#include "respscreen/pipeline.hpp"

namespace respscreen {

/// Parameters for the synthetic two-class corpus. Class n files are burst
/// trains of band-limited noise around 800 Hz; class p files shift the band
/// center by separability * 600 Hz and tilt the in-band spectrum. At
/// separability 0 the two classes are drawn from the same distribution.
/// Durations and peak levels are sampled identically for both classes.
struct CorpusSpec {
    int positive_files = 100;
    int negative_files = 100;
    double min_duration = 0.8;  // seconds
    double max_duration = 1.6;
    double sample_rate = 44100.0;
    double separability = 1.0;  // in [0, 1]
    std::uint64_t seed = 0;
    int n_folds = 5;
    int jobs = 0;

    void validate() const;  // throws Error
};

struct GeneratedCorpus {
    Manifest manifest;
    FoldSplit folds;
    std::filesystem::path manifest_path;        // id,path,label
    std::filesystem::path blind_manifest_path;  // id,path
    std::filesystem::path folds_dir;
};

/// Write WAV files, the labeled and blind manifests, and a seeded
/// label-stratified fold split under out_dir. Byte-identical output for
/// identical spec + seed. Throws IoError.
GeneratedCorpus generate_corpus(const CorpusSpec& spec, const std::filesystem::path& out_dir);

}  // namespace respscreen
