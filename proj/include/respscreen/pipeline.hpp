#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "respscreen/audio.hpp"
#include "respscreen/classifiers.hpp"
#include "respscreen/eval.hpp"
#include "respscreen/features.hpp"
#include "respscreen/preprocess.hpp"

namespace respscreen {

struct ManifestEntry {
    std::string id;
    std::filesystem::path path;
    std::optional<bool> positive;  // empty for blind-test manifests
};

/// File registry with labels. Relative paths resolve against the manifest's
/// own directory.
struct Manifest {
    std::vector<ManifestEntry> entries;

    std::size_t size() const { return entries.size(); }
    bool labeled() const;
};

/// CSV with header "id,path,label" (label tokens p / n) or "id,path" for
/// blind sets. Throws ParseError, DuplicateId, MissingFile.
Manifest load_manifest(const std::filesystem::path& path);

struct FoldSplit {
    struct Fold {
        std::vector<std::string> train_ids;
        std::vector<std::string> validation_ids;
    };
    std::vector<Fold> folds;
};

/// Read train_fold_k.txt / val_fold_k.txt (k = 1..n_folds, one id per line)
/// from a directory.
FoldSplit load_fold_split(const std::filesystem::path& dir, int n_folds = 5);

/// Check the split invariants against a manifest: train/validation disjoint
/// within each fold, every id known, each id validated exactly once.
/// Throws FoldLeak.
void validate_split(const FoldSplit& split, const Manifest& manifest);

struct RunConfig {
    ModelKind model = ModelKind::rf;
    std::uint64_t seed = 0;
    FeatureConfig features;
    SadConfig sad;
    LrConfig lr;
    MlpConfig mlp;
    RfConfig rf;
    int jobs = 0;                     // worker threads; 0 means all cores
    std::filesystem::path run_dir;    // artifacts land here
    std::filesystem::path cache_dir;  // optional feature cache; empty disables
};

/// Cross-validation outcome in the challenge's reporting shape.
struct RunReport {
    ModelKind model = ModelKind::rf;
    std::vector<double> fold_auc;          // percent, one per fold
    double average_auc = 0.0;              // arithmetic mean
    double std_error = 0.0;                // sample standard deviation / sqrt(n)
    std::vector<double> fold_spec_at_80 = {};
    std::vector<double> fold_prior;        // positive frame fraction of each training fold
    std::vector<std::string> model_paths;  // relative to the run directory
    std::string config_fingerprint;

    /// Fold columns plus an "Avg.Val (Std. Err.)" summary column.
    std::string render_table() const;
};

/// Mean and sample-sd/sqrt(n) of a fold metric vector.
std::pair<double, double> mean_and_std_error(std::span<const double> values);

/// Mean frame probability of a fully preprocessed and featurized clip.
/// Signal-content failures surface as UnscorableFile carrying `id`.
double score_file(const Model& model, const AudioClip& clip, const FeatureConfig& features,
                  const SadConfig& sad, const std::string& id = "");

/// Mean of the five fold models' file scores. Throws WrongModelCount.
double ensemble_score(std::span<const Model> models, const AudioClip& clip,
                      const FeatureConfig& features, const SadConfig& sad,
                      const std::string& id = "");

/// Train one model per fold, score each validation set, compute fold AUCs,
/// and persist models plus report under cfg.run_dir. Unscorable validation
/// files fall back to the fold's training prior (and are logged to stderr).
RunReport run_cv(const Manifest& manifest, const FoldSplit& split, const RunConfig& cfg);

/// Artifacts persisted by run_cv, reloaded for blind scoring.
struct RunArtifacts {
    std::vector<Model> models;
    std::vector<double> priors;
    ModelKind model = ModelKind::rf;
    FeatureConfig features;
    SadConfig sad;
};

RunArtifacts load_run_artifacts(const std::filesystem::path& run_dir);

/// Ensemble-score every manifest entry with the five fold models; files that
/// cannot be scored get the mean training prior.
ScoreSet score_manifest(const Manifest& manifest, const RunArtifacts& artifacts, int jobs = 0);

}  // namespace respscreen
