#include "respscreen/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "respscreen/errors.hpp"
#include "respscreen/feature_cache.hpp"
#include "respscreen/rng.hpp"
#include "respscreen/threading.hpp"

namespace respscreen {

namespace {

using nlohmann::json;

constexpr int kRunFormatVersion = 1;
constexpr int kFoldCount = 5;

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

double mean(std::span<const double> values) {
    double acc = 0.0;
    for (double v : values) {
        acc += v;
    }
    return values.empty() ? 0.0 : acc / static_cast<double>(values.size());
}

json feature_config_json(const FeatureConfig& f) {
    return json{{"n_mfcc", f.n_mfcc},           {"frame_length", f.frame_length},
                {"hop_length", f.hop_length},   {"n_mels", f.n_mels},
                {"fmin", f.fmin},               {"fmax", f.fmax},
                {"delta_width", f.delta_width}};
}

FeatureConfig feature_config_from_json(const json& j) {
    FeatureConfig f;
    f.n_mfcc = j.at("n_mfcc").get<int>();
    f.frame_length = j.at("frame_length").get<int>();
    f.hop_length = j.at("hop_length").get<int>();
    f.n_mels = j.at("n_mels").get<int>();
    f.fmin = j.at("fmin").get<double>();
    f.fmax = j.at("fmax").get<double>();
    f.delta_width = j.at("delta_width").get<int>();
    return f;
}

json sad_config_json(const SadConfig& s) {
    return json{{"amplitude_threshold", s.amplitude_threshold},
                {"margin", s.margin},
                {"edge_trim", s.edge_trim}};
}

SadConfig sad_config_from_json(const json& j) {
    SadConfig s;
    s.amplitude_threshold = j.at("amplitude_threshold").get<double>();
    s.margin = j.at("margin").get<double>();
    s.edge_trim = j.at("edge_trim").get<double>();
    return s;
}

std::string fingerprint(const RunConfig& cfg) {
    std::ostringstream text;
    text.precision(17);
    text << to_string(cfg.model) << ';' << cfg.seed << ';' << cfg.features.n_mfcc << ','
         << cfg.features.frame_length << ',' << cfg.features.hop_length << ','
         << cfg.features.n_mels << ',' << cfg.features.fmin << ',' << cfg.features.fmax << ','
         << cfg.features.delta_width << ';' << cfg.sad.amplitude_threshold << ','
         << cfg.sad.margin << ',' << cfg.sad.edge_trim << ';' << cfg.lr.c << ','
         << cfg.lr.max_iterations << ',' << cfg.lr.class_balanced << ';'
         << cfg.mlp.hidden_units << ',' << cfg.mlp.alpha << ',' << cfg.mlp.learning_rate << ','
         << cfg.mlp.batch_size << ',' << cfg.mlp.max_epochs << ';' << cfg.rf.n_trees << ','
         << cfg.rf.max_features << ',' << cfg.rf.min_samples_split;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(text.str())));
    return buf;
}

/// Decode, bring to the canonical rate, preprocess and featurize one file.
/// Returns nothing when the signal content is unusable.
std::optional<Matrix> featurize_file(const ManifestEntry& entry, const FeatureConfig& features,
                                     const SadConfig& sad, const FeatureCache* cache) {
    if (cache) {
        if (auto hit = cache->load(entry.id)) {
            return hit;
        }
    }
    AudioClip clip = decode_audio(entry.path);
    try {
        clip = resample(clip, kCanonicalSampleRate);
        const AudioClip prepared = preprocess(clip, sad);
        Matrix frames = extract_features(prepared, features);
        if (cache) {
            cache->store(entry.id, frames);
            // cached records are float32; cold runs must see the same values
            quantize_to_f32(frames);
        }
        return frames;
    } catch (const SignalError& e) {
        std::cerr << "warning: file '" << entry.id << "' yields no frames: " << e.what() << "\n";
        return std::nullopt;
    }
}

std::vector<std::optional<Matrix>> featurize_manifest(const Manifest& manifest,
                                                      const RunConfig& cfg) {
    std::optional<FeatureCache> cache;
    if (!cfg.cache_dir.empty()) {
        cache.emplace(cfg.cache_dir,
                      FeatureCache::config_hash(cfg.features, cfg.sad, kCanonicalSampleRate));
    }
    std::vector<std::optional<Matrix>> features(manifest.size());
    parallel_for(manifest.size(), cfg.jobs, [&](std::size_t i) {
        features[i] =
            featurize_file(manifest.entries[i], cfg.features, cfg.sad,
                           cache ? &*cache : nullptr);
    });
    return features;
}

double mean_frame_score(const Model& model, const Matrix& frames) {
    const std::vector<double> probs = predict_frames(model, frames);
    double acc = 0.0;
    for (double p : probs) {
        acc += p;
    }
    return acc / static_cast<double>(probs.size());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << text;
    if (!out) {
        throw IoError("short write on " + path.string());
    }
}

}  // namespace

std::pair<double, double> mean_and_std_error(std::span<const double> values) {
    const double avg = mean(values);
    if (values.size() < 2) {
        return {avg, 0.0};
    }
    double ss = 0.0;
    for (double v : values) {
        ss += (v - avg) * (v - avg);
    }
    const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
    return {avg, sd / std::sqrt(static_cast<double>(values.size()))};
}

std::string RunReport::render_table() const {
    std::ostringstream out;
    char buf[64];
    out << "Model";
    for (std::size_t k = 0; k < fold_auc.size(); ++k) {
        std::snprintf(buf, sizeof(buf), "%9s", ("Fold " + std::to_string(k + 1)).c_str());
        out << buf;
    }
    out << "  Avg.Val (Std. Err.)\n";

    std::string name = to_string(model);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    std::snprintf(buf, sizeof(buf), "%-5s", name.c_str());
    out << buf;
    for (double auc : fold_auc) {
        std::snprintf(buf, sizeof(buf), "%9.2f", auc);
        out << buf;
    }
    std::snprintf(buf, sizeof(buf), "  %.2f (±%.2f)\n", average_auc, std_error);
    out << buf;
    return out.str();
}

double score_file(const Model& model, const AudioClip& clip, const FeatureConfig& features,
                  const SadConfig& sad, const std::string& id) {
    Matrix frames;
    try {
        frames = extract_features(preprocess(clip, sad), features);
    } catch (const SignalError& e) {
        throw UnscorableFile(id, e.what());
    }
    return mean_frame_score(model, frames);
}

double ensemble_score(std::span<const Model> models, const AudioClip& clip,
                      const FeatureConfig& features, const SadConfig& sad,
                      const std::string& id) {
    if (models.size() != kFoldCount) {
        throw WrongModelCount("ensemble_score: expected " + std::to_string(kFoldCount) +
                              " models, got " + std::to_string(models.size()));
    }
    Matrix frames;
    try {
        frames = extract_features(preprocess(clip, sad), features);
    } catch (const SignalError& e) {
        throw UnscorableFile(id, e.what());
    }
    double acc = 0.0;
    for (const Model& model : models) {
        acc += mean_frame_score(model, frames);
    }
    return acc / static_cast<double>(models.size());
}

RunReport run_cv(const Manifest& manifest, const FoldSplit& split, const RunConfig& cfg) {
    if (!manifest.labeled()) {
        throw Error("run_cv: manifest must be fully labeled");
    }
    cfg.features.validate();
    cfg.sad.validate();
    if (cfg.run_dir.empty()) {
        throw Error("run_cv: run directory not set");
    }
    validate_split(split, manifest);

    std::filesystem::create_directories(cfg.run_dir / "models");

    const auto features = featurize_manifest(manifest, cfg);

    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        index_of[manifest.entries[i].id] = i;
    }

    RunReport report;
    report.model = cfg.model;
    report.config_fingerprint = fingerprint(cfg);

    std::vector<double> all_scores(manifest.size(), 0.0);  // each id validated exactly once

    for (std::size_t k = 0; k < split.folds.size(); ++k) {
        const auto& fold = split.folds[k];

        // assemble training frames; frames inherit their file's label
        std::size_t total_frames = 0;
        for (const std::string& id : fold.train_ids) {
            const auto& f = features[index_of.at(id)];
            if (f) {
                total_frames += f->rows();
            }
        }
        if (total_frames == 0) {
            throw Error("run_cv: fold " + std::to_string(k + 1) + " has no usable training frames");
        }

        const std::size_t dim = static_cast<std::size_t>(cfg.features.feature_dim());
        LabeledFrameSet train;
        train.features = Matrix(total_frames, dim);
        train.labels.reserve(total_frames);
        train.file_ids.reserve(total_frames);
        std::size_t row = 0;
        std::size_t positive_frames = 0;
        for (const std::string& id : fold.train_ids) {
            const std::size_t file_index = index_of.at(id);
            const auto& f = features[file_index];
            if (!f) {
                continue;
            }
            const std::uint8_t label = *manifest.entries[file_index].positive ? 1 : 0;
            for (std::size_t r = 0; r < f->rows(); ++r) {
                std::copy(f->row(r).begin(), f->row(r).end(), train.features.row(row).begin());
                train.labels.push_back(label);
                train.file_ids.push_back(static_cast<std::int32_t>(file_index));
                ++row;
            }
            positive_frames += label ? f->rows() : 0;
        }
        const double prior =
            static_cast<double>(positive_frames) / static_cast<double>(total_frames);
        report.fold_prior.push_back(prior);

        const std::uint64_t train_seed = mix_seed(cfg.seed, k);
        Model model;
        switch (cfg.model) {
            case ModelKind::lr: {
                LrConfig lr = cfg.lr;
                model = train_lr(train, lr);
                break;
            }
            case ModelKind::mlp: {
                const LabeledFrameSet balanced =
                    oversample(train, mix_seed(cfg.seed, 1000 + k));
                model = train_mlp(balanced, train_seed, cfg.mlp);
                break;
            }
            case ModelKind::rf: {
                RfConfig rf = cfg.rf;
                rf.jobs = cfg.jobs;
                model = train_rf(train, train_seed, rf);
                break;
            }
        }

        const std::string model_name = "models/fold_" + std::to_string(k + 1) + ".json";
        save_model(model, cfg.run_dir / model_name);
        report.model_paths.push_back(model_name);

        // score the validation files
        std::vector<double> scores(fold.validation_ids.size());
        std::vector<std::uint8_t> labels(fold.validation_ids.size());
        parallel_for(fold.validation_ids.size(), cfg.jobs, [&](std::size_t v) {
            const std::size_t file_index = index_of.at(fold.validation_ids[v]);
            labels[v] = *manifest.entries[file_index].positive ? 1 : 0;
            const auto& f = features[file_index];
            if (f) {
                scores[v] = mean_frame_score(model, *f);
            } else {
                scores[v] = prior;  // unscorable file: fall back to the training prior
            }
        });
        for (std::size_t v = 0; v < fold.validation_ids.size(); ++v) {
            if (!features[index_of.at(fold.validation_ids[v])]) {
                std::cerr << "warning: fold " << k + 1 << " validation file '"
                          << fold.validation_ids[v] << "' scored with training prior " << prior
                          << "\n";
            }
            all_scores[index_of.at(fold.validation_ids[v])] = scores[v];
        }

        const RocSummary roc = evaluate_scores(scores, labels);
        report.fold_auc.push_back(roc.auc);
        report.fold_spec_at_80.push_back(roc.spec_at_80_sens);
    }

    const auto [avg, stderr_] = mean_and_std_error(report.fold_auc);
    report.average_auc = avg;
    report.std_error = stderr_;

    // artifacts
    ScoreSet val_scores;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        val_scores.ids.push_back(manifest.entries[i].id);
        val_scores.probabilities.push_back(all_scores[i]);
    }
    write_scores(val_scores, cfg.run_dir / "val_scores.csv");

    json run;
    run["format_version"] = kRunFormatVersion;
    run["model"] = to_string(cfg.model);
    run["seed"] = cfg.seed;
    run["features"] = feature_config_json(cfg.features);
    run["sad"] = sad_config_json(cfg.sad);
    run["lr"] = {{"c", cfg.lr.c},
                 {"max_iterations", cfg.lr.max_iterations},
                 {"class_balanced", cfg.lr.class_balanced}};
    run["mlp"] = {{"hidden_units", cfg.mlp.hidden_units},
                  {"alpha", cfg.mlp.alpha},
                  {"learning_rate", cfg.mlp.learning_rate},
                  {"batch_size", cfg.mlp.batch_size},
                  {"max_epochs", cfg.mlp.max_epochs}};
    run["rf"] = {{"n_trees", cfg.rf.n_trees},
                 {"max_features", cfg.rf.max_features},
                 {"min_samples_split", cfg.rf.min_samples_split}};
    run["fold_priors"] = report.fold_prior;
    run["model_paths"] = report.model_paths;
    run["config_fingerprint"] = report.config_fingerprint;
    write_text_file(cfg.run_dir / "run.json", run.dump(1, '\t') + "\n");

    json rep;
    rep["model"] = to_string(cfg.model);
    rep["fold_auc"] = report.fold_auc;
    rep["average_auc"] = report.average_auc;
    rep["std_error"] = report.std_error;
    rep["fold_spec_at_80_sens"] = report.fold_spec_at_80;
    rep["model_paths"] = report.model_paths;
    rep["config_fingerprint"] = report.config_fingerprint;
    write_text_file(cfg.run_dir / "report.json", rep.dump(1, '\t') + "\n");
    write_text_file(cfg.run_dir / "report.txt", report.render_table());

    return report;
}

RunArtifacts load_run_artifacts(const std::filesystem::path& run_dir) {
    std::ifstream in(run_dir / "run.json");
    if (!in) {
        throw FileNotFound("run.json not found in " + run_dir.string());
    }
    RunArtifacts artifacts;
    std::vector<std::string> model_paths;
    try {
        json run;
        in >> run;
        const int version = run.at("format_version").get<int>();
        if (version != kRunFormatVersion) {
            throw ParseError("unsupported run format version " + std::to_string(version));
        }
        artifacts.model = model_kind_from_string(run.at("model").get<std::string>());
        artifacts.features = feature_config_from_json(run.at("features"));
        artifacts.sad = sad_config_from_json(run.at("sad"));
        artifacts.priors = run.at("fold_priors").get<std::vector<double>>();
        model_paths = run.at("model_paths").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw ParseError("malformed run.json in " + run_dir.string() + ": " + e.what());
    }

    if (model_paths.size() != kFoldCount || artifacts.priors.size() != kFoldCount) {
        throw WrongModelCount("run directory must hold exactly " + std::to_string(kFoldCount) +
                              " fold models, found " + std::to_string(model_paths.size()));
    }
    for (const std::string& rel : model_paths) {
        artifacts.models.push_back(load_model(run_dir / rel));
        if (model_kind(artifacts.models.back()) != artifacts.model) {
            throw WrongModelCount("model kind mismatch in " + rel);
        }
    }
    return artifacts;
}

ScoreSet score_manifest(const Manifest& manifest, const RunArtifacts& artifacts, int jobs) {
    const double fallback = mean(artifacts.priors);

    std::vector<double> scores(manifest.size(), 0.0);
    std::vector<std::uint8_t> fell_back(manifest.size(), 0);
    parallel_for(manifest.size(), jobs, [&](std::size_t i) {
        const ManifestEntry& entry = manifest.entries[i];
        AudioClip clip = decode_audio(entry.path);
        try {
            clip = resample(clip, kCanonicalSampleRate);
            scores[i] = ensemble_score(artifacts.models, clip, artifacts.features,
                                       artifacts.sad, entry.id);
        } catch (const SignalError&) {
            scores[i] = fallback;
            fell_back[i] = 1;
        } catch (const UnscorableFile&) {
            scores[i] = fallback;
            fell_back[i] = 1;
        }
    });

    ScoreSet out;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        if (fell_back[i]) {
            std::cerr << "warning: file '" << manifest.entries[i].id
                      << "' scored with training prior " << fallback << "\n";
        }
        out.ids.push_back(manifest.entries[i].id);
        out.probabilities.push_back(scores[i]);
    }
    return out;
}

}  // namespace respscreen
