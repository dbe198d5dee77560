#include "respscreen/synthcorpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "respscreen/errors.hpp"
#include "respscreen/rng.hpp"
#include "respscreen/threading.hpp"

namespace respscreen {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBaseCenterHz = 800.0;   // class n band center
constexpr double kCenterShiftHz = 500.0;  // full-separability shift for class p
// wide band relative to the shift: intermediate separability keeps the
// per-frame spectra overlapping, so only the aggregate statistics separate
constexpr double kBandwidthHz = 800.0;
constexpr int kPartialsPerBurst = 40;

struct FilePlan {
    std::string id;
    bool positive;
    std::uint64_t seed;
};

/// One burst train. Bursts are sums of random in-band partials under an
/// exponential decay, separated by near-silent gaps; a faint uniform noise
/// floor keeps the inactive regions nonzero but below the SAD threshold.
std::vector<double> synthesize(bool positive, double separability, double rate,
                               double duration, Rng& rng) {
    const std::size_t n = static_cast<std::size_t>(std::llround(duration * rate));
    std::vector<double> samples(n, 0.0);

    const double center =
        kBaseCenterHz + (positive ? separability * kCenterShiftHz : 0.0);
    // spectral tilt: amplitude ~ (f / center)^tilt within the band
    const double tilt = positive ? -1.0 * separability : 0.0;

    const int n_bursts = 2 + static_cast<int>(rng.uniform_int(5));  // 2..6
    std::vector<double> burst_len(static_cast<std::size_t>(n_bursts));
    double total_burst = 0.0;
    for (double& b : burst_len) {
        b = rng.uniform(0.050, 0.300);
        total_burst += b;
    }
    // keep some room for gaps
    if (total_burst > 0.80 * duration) {
        const double shrink = 0.80 * duration / total_burst;
        for (double& b : burst_len) {
            b *= shrink;
        }
        total_burst *= shrink;
    }
    // split the remaining time into n_bursts + 1 random gaps
    std::vector<double> gap_share(static_cast<std::size_t>(n_bursts) + 1);
    double share_total = 0.0;
    for (double& g : gap_share) {
        g = rng.uniform(0.05, 1.0);
        share_total += g;
    }
    const double gap_time = duration - total_burst;

    double cursor = 0.0;
    for (int b = 0; b < n_bursts; ++b) {
        cursor += gap_time * gap_share[static_cast<std::size_t>(b)] / share_total;
        const double length = burst_len[static_cast<std::size_t>(b)];
        const std::size_t start = static_cast<std::size_t>(cursor * rate);
        const std::size_t count = static_cast<std::size_t>(length * rate);

        const double decay = rng.uniform(0.030, 0.080);  // envelope time constant
        const double peak = rng.uniform(0.3, 0.9);

        // per-burst spread drawn identically for both classes: individual
        // bursts overlap between classes, aggregate statistics separate
        const double burst_center = center + rng.uniform(-300.0, 300.0);
        const double burst_tilt = tilt + rng.uniform(-0.7, 0.7);

        double freq[kPartialsPerBurst];
        double amp[kPartialsPerBurst];
        double phase[kPartialsPerBurst];
        for (int p = 0; p < kPartialsPerBurst; ++p) {
            freq[p] =
                rng.uniform(burst_center - kBandwidthHz / 2.0, burst_center + kBandwidthHz / 2.0);
            amp[p] = rng.uniform(0.3, 1.0) * std::pow(freq[p] / burst_center, burst_tilt);
            phase[p] = rng.uniform(0.0, 2.0 * kPi);
        }

        // render, then scale the burst to its target peak
        double burst_peak = 0.0;
        std::vector<double> burst(count, 0.0);
        for (std::size_t i = 0; i < count; ++i) {
            const double t = static_cast<double>(i) / rate;
            const double attack = std::min(1.0, t / 0.005);
            const double env = attack * std::exp(-t / decay);
            double s = 0.0;
            for (int p = 0; p < kPartialsPerBurst; ++p) {
                s += amp[p] * std::sin(2.0 * kPi * freq[p] * t + phase[p]);
            }
            burst[i] = s * env;
            burst_peak = std::max(burst_peak, std::abs(burst[i]));
        }
        if (burst_peak > 0.0) {
            const double gain = peak / burst_peak;
            for (std::size_t i = 0; i < count && start + i < n; ++i) {
                samples[start + i] += burst[i] * gain;
            }
        }
        cursor += length;
    }

    // noise floor well below the SAD threshold even after normalization
    for (double& s : samples) {
        s += rng.uniform(-0.002, 0.002);
    }
    return samples;
}

void write_id_list(const std::filesystem::path& path, const std::vector<std::string>& ids) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write fold list: " + path.string());
    }
    for (const std::string& id : ids) {
        out << id << '\n';
    }
}

}  // namespace

void CorpusSpec::validate() const {
    if (positive_files <= 0 || negative_files <= 0) {
        throw Error("CorpusSpec: file counts must be positive");
    }
    if (min_duration <= 0.2 || max_duration < min_duration) {
        throw Error("CorpusSpec: durations must exceed 0.2 s and be ordered");
    }
    if (separability < 0.0 || separability > 1.0) {
        throw Error("CorpusSpec: separability must lie in [0, 1]");
    }
    if (sample_rate <= 0.0) {
        throw Error("CorpusSpec: sample rate must be positive");
    }
    if (n_folds < 2) {
        throw Error("CorpusSpec: need at least two folds");
    }
}

GeneratedCorpus generate_corpus(const CorpusSpec& spec, const std::filesystem::path& out_dir) {
    spec.validate();

    std::error_code ec;
    std::filesystem::create_directories(out_dir / "audio", ec);
    std::filesystem::create_directories(out_dir / "folds", ec);
    if (!std::filesystem::is_directory(out_dir / "audio") ||
        !std::filesystem::is_directory(out_dir / "folds")) {
        throw IoError("cannot create corpus directories under " + out_dir.string());
    }

    // one derived RNG stream per file, so generation order never matters
    std::vector<FilePlan> plans;
    char name[32];
    for (int i = 0; i < spec.negative_files; ++i) {
        std::snprintf(name, sizeof(name), "n%04d", i + 1);
        plans.push_back({name, false, mix_seed(spec.seed, plans.size())});
    }
    for (int i = 0; i < spec.positive_files; ++i) {
        std::snprintf(name, sizeof(name), "p%04d", i + 1);
        plans.push_back({name, true, mix_seed(spec.seed, plans.size())});
    }

    parallel_for(plans.size(), spec.jobs, [&](std::size_t i) {
        const FilePlan& plan = plans[i];
        Rng rng(plan.seed);
        const double duration = rng.uniform(spec.min_duration, spec.max_duration);
        AudioClip clip;
        clip.sample_rate = spec.sample_rate;
        clip.samples = synthesize(plan.positive, spec.separability, spec.sample_rate,
                                  duration, rng);
        write_wav16(out_dir / "audio" / (plan.id + ".wav"), clip);
    });

    // manifests
    std::ostringstream labeled;
    std::ostringstream blind;
    labeled << "id,path,label\n";
    blind << "id,path\n";
    for (const FilePlan& plan : plans) {
        labeled << plan.id << ",audio/" << plan.id << ".wav," << (plan.positive ? 'p' : 'n')
                << '\n';
        blind << plan.id << ",audio/" << plan.id << ".wav\n";
    }
    const auto manifest_path = out_dir / "manifest.csv";
    const auto blind_path = out_dir / "blind.csv";
    {
        std::ofstream m(manifest_path, std::ios::trunc);
        std::ofstream b(blind_path, std::ios::trunc);
        if (!m || !b) {
            throw IoError("cannot write manifests under " + out_dir.string());
        }
        m << labeled.str();
        b << blind.str();
    }

    // label-stratified fold split: shuffle each class, deal round-robin
    Rng fold_rng(mix_seed(spec.seed, 0xF01D5));
    std::vector<std::string> negatives;
    std::vector<std::string> positives;
    for (const FilePlan& plan : plans) {
        (plan.positive ? positives : negatives).push_back(plan.id);
    }
    fold_rng.shuffle(negatives);
    fold_rng.shuffle(positives);

    std::vector<std::vector<std::string>> validation(static_cast<std::size_t>(spec.n_folds));
    std::size_t next = 0;
    for (const std::string& id : negatives) {
        validation[next++ % validation.size()].push_back(id);
    }
    for (const std::string& id : positives) {
        validation[next++ % validation.size()].push_back(id);
    }

    FoldSplit split;
    for (std::size_t k = 0; k < validation.size(); ++k) {
        FoldSplit::Fold fold;
        fold.validation_ids = validation[k];
        for (std::size_t j = 0; j < validation.size(); ++j) {
            if (j != k) {
                fold.train_ids.insert(fold.train_ids.end(), validation[j].begin(),
                                      validation[j].end());
            }
        }
        write_id_list(out_dir / "folds" / ("train_fold_" + std::to_string(k + 1) + ".txt"),
                      fold.train_ids);
        write_id_list(out_dir / "folds" / ("val_fold_" + std::to_string(k + 1) + ".txt"),
                      fold.validation_ids);
        split.folds.push_back(std::move(fold));
    }

    GeneratedCorpus corpus;
    corpus.manifest = load_manifest(manifest_path);
    corpus.folds = split;
    corpus.manifest_path = manifest_path;
    corpus.blind_manifest_path = blind_path;
    corpus.folds_dir = out_dir / "folds";
    validate_split(corpus.folds, corpus.manifest);
    return corpus;
}

}  // namespace respscreen
