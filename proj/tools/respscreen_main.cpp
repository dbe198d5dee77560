// Command-line front end for the respiratory screening baseline: synthetic
// corpus generation, cross-validated training, blind-set scoring, and ROC
// evaluation. Exit codes: 0 success, 1 runtime failure, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "respscreen/errors.hpp"
#include "respscreen/eval.hpp"
#include "respscreen/pipeline.hpp"
#include "respscreen/synthcorpus.hpp"
#include "respscreen/threading.hpp"

namespace {

using namespace respscreen;

struct CommonOptions {
    FeatureConfig features;
    SadConfig sad;
    int jobs = 0;
};

void add_feature_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--n-mfcc", opts.features.n_mfcc, "MFCC coefficients per frame");
    cmd->add_option("--n-mels", opts.features.n_mels, "mel filterbank size");
    cmd->add_option("--frame-length", opts.features.frame_length, "window/FFT size in samples");
    cmd->add_option("--hop-length", opts.features.hop_length, "hop size in samples");
    cmd->add_option("--delta-width", opts.features.delta_width, "delta regression window");
    cmd->add_option("--sad-threshold", opts.sad.amplitude_threshold,
                    "sound-activity amplitude threshold");
    cmd->add_option("--sad-margin", opts.sad.margin, "seconds kept around active samples");
    cmd->add_option("--edge-trim", opts.sad.edge_trim, "seconds trimmed from each end");
    cmd->add_option("--jobs", opts.jobs, "worker threads (default: all cores)");
}

int run_gen(const CorpusSpec& spec, const std::string& out_dir) {
    const GeneratedCorpus corpus = generate_corpus(spec, out_dir);
    std::cout << "manifest: " << corpus.manifest_path.string() << "\n"
              << "blind manifest: " << corpus.blind_manifest_path.string() << "\n"
              << "folds: " << corpus.folds_dir.string() << "\n"
              << corpus.manifest.size() << " files written\n";
    return 0;
}

int run_train(const std::string& manifest_path, const std::string& folds_dir,
              const std::string& model_name, std::uint64_t seed, const std::string& run_dir,
              const std::string& cache_dir, bool no_class_balance,
              const CommonOptions& common) {
    RunConfig cfg;
    cfg.model = model_kind_from_string(model_name);
    cfg.seed = seed;
    cfg.features = common.features;
    cfg.sad = common.sad;
    cfg.jobs = common.jobs;
    cfg.run_dir = run_dir;
    cfg.cache_dir = cache_dir;
    cfg.lr.class_balanced = !no_class_balance;

    const Manifest manifest = load_manifest(manifest_path);
    const FoldSplit split = load_fold_split(folds_dir);

    try {
        const RunReport report = run_cv(manifest, split, cfg);
        std::cout << report.render_table();
        std::cout << "artifacts: " << cfg.run_dir.string() << "\n";
        return 0;
    } catch (...) {
        std::error_code ec;
        if (std::filesystem::is_directory(cfg.run_dir, ec)) {
            std::ofstream marker(cfg.run_dir / "FAILED");
            marker << "run did not complete\n";
        }
        throw;
    }
}

int run_score(const std::string& run_dir, const std::string& manifest_path,
              const std::string& out_path, int jobs) {
    const RunArtifacts artifacts = load_run_artifacts(run_dir);
    const Manifest manifest = load_manifest(manifest_path);
    const ScoreSet scores = score_manifest(manifest, artifacts, jobs);
    write_scores(scores, out_path);
    std::cout << scores.size() << " files scored with the " << to_string(artifacts.model)
              << " ensemble -> " << out_path << "\n";
    return 0;
}

int run_eval(const std::string& scores_path, const std::string& labels_path,
             const std::string& plot_path, const std::string& roc_csv_path) {
    const ScoreSet scores = read_scores(scores_path);
    const Manifest manifest = load_manifest(labels_path);
    if (!manifest.labeled()) {
        throw Error("label manifest has unlabeled entries: " + labels_path);
    }

    std::map<std::string, bool> label_of;
    for (const ManifestEntry& e : manifest.entries) {
        label_of[e.id] = *e.positive;
    }
    std::map<std::string, double> score_of;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        score_of[scores.ids[i]] = scores.probabilities[i];
    }
    for (const ManifestEntry& e : manifest.entries) {
        if (!score_of.count(e.id)) {
            throw Error("no score for labeled id '" + e.id + "'");
        }
    }

    std::vector<double> s;
    std::vector<std::uint8_t> y;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const auto it = label_of.find(scores.ids[i]);
        if (it == label_of.end()) {
            throw Error("no label for scored id '" + scores.ids[i] + "'");
        }
        s.push_back(scores.probabilities[i]);
        y.push_back(it->second ? 1 : 0);
    }

    const RocSummary roc = evaluate_scores(s, y);
    std::printf("AUC: %.2f%%\n", roc.auc);
    std::printf("Specificity at 80%% sensitivity: %.2f%%\n", roc.spec_at_80_sens);
    if (!roc_csv_path.empty()) {
        write_roc_csv(roc.points, roc_csv_path);
        std::cout << "ROC csv: " << roc_csv_path << "\n";
    }
    if (!plot_path.empty()) {
        write_roc_svg(roc, plot_path, "ROC");
        std::cout << "ROC plot: " << plot_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Respiratory-sound screening baseline pipeline"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic labeled corpus");
    CorpusSpec spec;
    std::string gen_out;
    int gen_n = 100;
    gen->add_option("--out", gen_out, "output directory")->required();
    auto* gen_n_opt = gen->add_option("--n", gen_n, "files per class (sets both counts)");
    gen->add_option("--n-pos", spec.positive_files, "positive-class file count");
    gen->add_option("--n-neg", spec.negative_files, "negative-class file count");
    gen->add_option("--delta", spec.separability, "class separability in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", spec.seed, "master seed");
    gen->add_option("--min-duration", spec.min_duration, "shortest file, seconds");
    gen->add_option("--max-duration", spec.max_duration, "longest file, seconds");
    gen->add_option("--rate", spec.sample_rate, "sample rate, Hz");
    gen->add_option("--jobs", spec.jobs, "worker threads");

    // train
    auto* train = app.add_subcommand("train", "5-fold cross-validated training");
    std::string train_manifest, train_folds, train_model = "rf", train_run_dir, train_cache;
    std::uint64_t train_seed = 0;
    bool no_class_balance = false;
    CommonOptions train_common;
    train->add_option("--manifest", train_manifest, "labeled manifest CSV")->required();
    train->add_option("--folds", train_folds, "directory with train/val fold lists")->required();
    train->add_option("--model", train_model, "classifier kind")
        ->check(CLI::IsMember({"lr", "mlp", "rf"}));
    train->add_option("--seed", train_seed, "training seed");
    train->add_option("--run-dir", train_run_dir, "artifact directory")
        ->envname("RESP_SCREEN_RUN_DIR")
        ->required();
    train->add_option("--cache-dir", train_cache, "feature cache directory");
    train->add_flag("--no-class-balance", no_class_balance,
                    "ablation: drop the balanced loss weighting (lr only)");
    add_feature_flags(train, train_common);

    // score
    auto* score = app.add_subcommand("score", "ensemble-score a blind manifest");
    std::string score_run_dir, score_manifest_path, score_out = "scores.csv";
    int score_jobs = 0;
    score->add_option("--run-dir", score_run_dir, "directory written by train")
        ->envname("RESP_SCREEN_RUN_DIR")
        ->required();
    score->add_option("--manifest", score_manifest_path, "manifest of files to score")
        ->required();
    score->add_option("--scores", score_out, "output score CSV");
    score->add_option("--jobs", score_jobs, "worker threads");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "ROC/AUC evaluation of a score file");
    std::string eval_scores, eval_labels, eval_plot, eval_roc_csv;
    eval_cmd->add_option("--scores", eval_scores, "score CSV")->required();
    eval_cmd->add_option("--labels", eval_labels, "labeled manifest CSV")->required();
    eval_cmd->add_option("--plot", eval_plot, "write an SVG ROC plot here");
    eval_cmd->add_option("--roc-csv", eval_roc_csv, "write (threshold,fpr,tpr) rows here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            if (gen_n_opt->count() > 0) {
                spec.positive_files = gen_n;
                spec.negative_files = gen_n;
            }
            return run_gen(spec, gen_out);
        }
        if (train->parsed()) {
            return run_train(train_manifest, train_folds, train_model, train_seed,
                             train_run_dir, train_cache, no_class_balance, train_common);
        }
        if (score->parsed()) {
            return run_score(score_run_dir, score_manifest_path, score_out, score_jobs);
        }
        if (eval_cmd->parsed()) {
            return run_eval(eval_scores, eval_labels, eval_plot, eval_roc_csv);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
