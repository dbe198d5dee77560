#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace respscreen {

/// Per-file probability scores keyed by file id.
struct ScoreSet {
    std::vector<std::string> ids;
    std::vector<double> probabilities;

    std::size_t size() const { return ids.size(); }
};

/// Decision thresholds run from 0 to 1 in steps of 1/kRocGridSteps.
constexpr int kRocGridSteps = 10000;

struct RocPoint {
    double threshold = 0.0;  // +inf marks the (0, 0) anchor above the grid
    double fpr = 0.0;
    double tpr = 0.0;
};

struct RocSummary {
    std::vector<RocPoint> points;
    double auc = 0.0;                 // percent
    double spec_at_80_sens = 0.0;     // percent
};

/// ROC over the fixed threshold grid, classifying positive when
/// score >= threshold. Points are ordered by descending threshold, start at
/// the (0,0) anchor, end at (1,1), with consecutive duplicates removed.
/// Throws SingleClassLabels unless both classes are present.
std::vector<RocPoint> roc_curve(std::span<const double> scores,
                                std::span<const std::uint8_t> labels);

/// Trapezoidal area under the curve, in percent.
double auc_percent(std::span<const RocPoint> points);

/// Maximum specificity (percent) over grid thresholds whose TPR reaches the
/// target sensitivity.
double specificity_at_sensitivity(std::span<const RocPoint> points, double target = 0.8);

/// roc_curve + auc + specificity at 80% sensitivity in one call.
RocSummary evaluate_scores(std::span<const double> scores,
                           std::span<const std::uint8_t> labels);

/// Score CSV: header "id,probability", probabilities with 6 decimal places.
ScoreSet read_scores(const std::filesystem::path& path);
void write_scores(const ScoreSet& scores, const std::filesystem::path& path);

/// CSV of (threshold, fpr, tpr) rows for plotting; the anchor threshold is
/// written as "inf".
void write_roc_csv(std::span<const RocPoint> points, const std::filesystem::path& path);

/// Standalone SVG of the ROC curve with a chance diagonal.
void write_roc_svg(const RocSummary& roc, const std::filesystem::path& path,
                   const std::string& title);

}  // namespace respscreen
