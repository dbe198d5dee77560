#include "respscreen/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "respscreen/errors.hpp"

namespace respscreen {

std::vector<RocPoint> roc_curve(std::span<const double> scores,
                                std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size()) {
        throw DimensionMismatch("roc_curve: scores and labels differ in length");
    }
    std::size_t n_pos = 0;
    for (std::uint8_t y : labels) {
        n_pos += y ? 1 : 0;
    }
    const std::size_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw SingleClassLabels("roc_curve: both label classes required");
    }

    // scores sorted descending; walking thresholds downward then admits
    // files one pointer step at a time
    std::vector<std::pair<double, std::uint8_t>> order(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        order[i] = {scores[i], labels[i]};
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<RocPoint> points;
    points.reserve(128);
    points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});  // anchor

    std::size_t admitted = 0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    for (int k = kRocGridSteps; k >= 0; --k) {
        const double threshold = static_cast<double>(k) / kRocGridSteps;
        while (admitted < order.size() && order[admitted].first >= threshold) {
            if (order[admitted].second) {
                ++tp;
            } else {
                ++fp;
            }
            ++admitted;
        }
        const double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
        const double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
        if (points.back().fpr == fpr && points.back().tpr == tpr) {
            continue;
        }
        points.push_back({threshold, fpr, tpr});
    }
    return points;
}

double auc_percent(std::span<const RocPoint> points) {
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const double dx = points[i].fpr - points[i - 1].fpr;
        area += dx * (points[i].tpr + points[i - 1].tpr) / 2.0;
    }
    return area * 100.0;
}

double specificity_at_sensitivity(std::span<const RocPoint> points, double target) {
    double best = 0.0;
    for (const RocPoint& p : points) {
        if (std::isinf(p.threshold)) {
            continue;  // anchor, not an operating point
        }
        if (p.tpr >= target) {
            best = std::max(best, 1.0 - p.fpr);
        }
    }
    return best * 100.0;
}

RocSummary evaluate_scores(std::span<const double> scores,
                           std::span<const std::uint8_t> labels) {
    RocSummary summary;
    summary.points = roc_curve(scores, labels);
    summary.auc = auc_percent(summary.points);
    summary.spec_at_80_sens = specificity_at_sensitivity(summary.points, 0.8);
    return summary;
}

ScoreSet read_scores(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("score file not found: " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("score file missing header: " + path.string());
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "id,probability") {
        throw ParseError("bad score file header '" + line + "': " + path.string());
    }

    ScoreSet set;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || comma == 0) {
            throw ParseError("malformed score row at line " + std::to_string(line_no) + ": " +
                             path.string());
        }
        const std::string id = line.substr(0, comma);
        double p = 0.0;
        try {
            std::size_t used = 0;
            p = std::stod(line.substr(comma + 1), &used);
            if (used != line.size() - comma - 1) {
                throw std::invalid_argument("trailing junk");
            }
        } catch (const std::exception&) {
            throw ParseError("bad probability at line " + std::to_string(line_no) + ": " +
                             path.string());
        }
        if (!(p >= 0.0 && p <= 1.0)) {
            throw OutOfRangeProbability("probability " + std::to_string(p) + " out of [0,1] at line " +
                                        std::to_string(line_no) + ": " + path.string());
        }
        set.ids.push_back(id);
        set.probabilities.push_back(p);
    }
    return set;
}

void write_scores(const ScoreSet& scores, const std::filesystem::path& path) {
    if (scores.ids.size() != scores.probabilities.size()) {
        throw DimensionMismatch("write_scores: ids and probabilities differ in length");
    }
    std::ostringstream out;
    out << "id,probability\n";
    char buf[32];
    for (std::size_t i = 0; i < scores.ids.size(); ++i) {
        const double p = scores.probabilities[i];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw OutOfRangeProbability("write_scores: probability out of [0,1] for id '" +
                                        scores.ids[i] + "'");
        }
        std::snprintf(buf, sizeof(buf), "%.6f", p);
        out << scores.ids[i] << ',' << buf << '\n';
    }
    std::ofstream f(path, std::ios::trunc);
    if (!f) {
        throw IoError("cannot write score file: " + path.string());
    }
    f << out.str();
    if (!f) {
        throw IoError("short write on score file: " + path.string());
    }
}

void write_roc_csv(std::span<const RocPoint> points, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::trunc);
    if (!f) {
        throw IoError("cannot write ROC csv: " + path.string());
    }
    f << "threshold,fpr,tpr\n";
    char buf[96];
    for (const RocPoint& p : points) {
        if (std::isinf(p.threshold)) {
            std::snprintf(buf, sizeof(buf), "inf,%.6f,%.6f", p.fpr, p.tpr);
        } else {
            std::snprintf(buf, sizeof(buf), "%.4f,%.6f,%.6f", p.threshold, p.fpr, p.tpr);
        }
        f << buf << '\n';
    }
}

}  // namespace respscreen
