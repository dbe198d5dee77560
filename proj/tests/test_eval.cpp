#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>

#include "respscreen/errors.hpp"
#include "respscreen/eval.hpp"
#include "respscreen/rng.hpp"
#include "test_util.hpp"

using namespace respscreen;
using namespace testutil;

namespace {

/// O(N * T) direct count over every grid threshold, deduplicated the same
/// way as the production curve.
std::vector<RocPoint> roc_oracle(const std::vector<double>& scores,
                                 const std::vector<std::uint8_t>& labels) {
    std::size_t n_pos = 0;
    for (std::uint8_t y : labels) {
        n_pos += y ? 1 : 0;
    }
    const std::size_t n_neg = labels.size() - n_pos;

    std::vector<RocPoint> points;
    points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    for (int k = kRocGridSteps; k >= 0; --k) {
        const double t = static_cast<double>(k) / kRocGridSteps;
        std::size_t tp = 0;
        std::size_t fp = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] >= t) {
                (labels[i] ? tp : fp) += 1;
            }
        }
        const double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
        const double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
        if (points.back().fpr != fpr || points.back().tpr != tpr) {
            points.push_back({t, fpr, tpr});
        }
    }
    return points;
}

/// Exact tie-corrected rank-statistic AUC (percent): pairs won plus half
/// the ties, over all positive-negative pairs.
double mann_whitney_auc(const std::vector<double>& scores,
                        const std::vector<std::uint8_t>& labels) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) {
            continue;
        }
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) {
                continue;
            }
            ++pairs;
            if (scores[i] > scores[j]) {
                wins += 1.0;
            } else if (scores[i] == scores[j]) {
                wins += 0.5;
            }
        }
    }
    return 100.0 * wins / static_cast<double>(pairs);
}

struct RandomScores {
    std::vector<double> scores;
    std::vector<std::uint8_t> labels;
};

RandomScores random_scores(Rng& rng, std::size_t n, bool inject_ties) {
    RandomScores out;
    out.scores.resize(n);
    out.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.scores[i] = rng.uniform();
        out.labels[i] = rng.uniform() < 0.4 ? 1 : 0;
    }
    // ensure both classes
    out.labels[0] = 1;
    out.labels[n - 1] = 0;
    if (inject_ties) {
        for (std::size_t i = 0; i + 1 < n; i += 3) {
            out.scores[i + 1] = out.scores[i];
        }
    }
    return out;
}

}  // namespace

TEST_CASE("roc_curve: separable pair passes through (0, 1)") {
    const std::vector<double> scores{0.9, 0.1};
    const std::vector<std::uint8_t> labels{1, 0};
    const auto points = roc_curve(scores, labels);
    REQUIRE(points.front().fpr == 0.0);
    REQUIRE(points.front().tpr == 0.0);
    REQUIRE(points.back().fpr == 1.0);
    REQUIRE(points.back().tpr == 1.0);
    bool hits_corner = false;
    for (const auto& p : points) {
        if (p.fpr == 0.0 && p.tpr == 1.0) {
            hits_corner = true;
        }
    }
    CHECK(hits_corner);
    CHECK(auc_percent(points) == doctest::Approx(100.0));
}

TEST_CASE("roc_curve: identical scores collapse to the chance diagonal") {
    const std::vector<double> scores{0.3, 0.3, 0.3, 0.3};
    const std::vector<std::uint8_t> labels{1, 0, 1, 0};
    const auto points = roc_curve(scores, labels);
    REQUIRE(points.size() == 2);
    CHECK(points[0].tpr == 0.0);
    CHECK(points[0].fpr == 0.0);
    CHECK(points[1].tpr == 1.0);
    CHECK(points[1].fpr == 1.0);
    CHECK(auc_percent(points) == doctest::Approx(50.0));
    CHECK(specificity_at_sensitivity(points, 0.8) == doctest::Approx(0.0));
}

TEST_CASE("roc_curve: single-class labels rejected") {
    const std::vector<double> scores{0.2, 0.4};
    const std::vector<std::uint8_t> ones{1, 1};
    CHECK_THROWS_AS(roc_curve(scores, ones), SingleClassLabels);
}

TEST_CASE("roc_curve: every grid point matches the direct count") {
    Rng rng(101);
    for (int trial = 0; trial < 6; ++trial) {
        const auto data = random_scores(rng, 10 + rng.uniform_int(150), trial % 2 == 0);
        const auto expected = roc_oracle(data.scores, data.labels);
        const auto got = roc_curve(data.scores, data.labels);
        REQUIRE(got.size() == expected.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            REQUIRE(got[i].fpr == expected[i].fpr);
            REQUIRE(got[i].tpr == expected[i].tpr);
            REQUIRE(got[i].threshold == expected[i].threshold);  // same grid values
        }
    }
}

TEST_CASE("roc_curve: monotone in both rates along the list") {
    Rng rng(55);
    const auto data = random_scores(rng, 200, true);
    const auto points = roc_curve(data.scores, data.labels);
    for (std::size_t i = 1; i < points.size(); ++i) {
        REQUIRE(points[i].fpr >= points[i - 1].fpr);
        REQUIRE(points[i].tpr >= points[i - 1].tpr);
    }
}

TEST_CASE("auc: grid value tracks the rank statistic within 0.05 points") {
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        const auto data = random_scores(rng, 10 + rng.uniform_int(300), true);
        const double grid = auc_percent(roc_curve(data.scores, data.labels));
        const double exact = mann_whitney_auc(data.scores, data.labels);
        REQUIRE(std::abs(grid - exact) < 0.05);
    }
}

TEST_CASE("auc: invariant under monotone transforms, against the exact oracle") {
    Rng rng(91);
    const auto data = random_scores(rng, 200, true);
    const double exact = mann_whitney_auc(data.scores, data.labels);

    auto grid_auc = [](const std::vector<double>& s, const std::vector<std::uint8_t>& y) {
        return auc_percent(roc_curve(s, y));
    };
    REQUIRE(std::abs(grid_auc(data.scores, data.labels) - exact) < 0.05);

    std::vector<double> affine(data.scores.size());
    std::vector<double> cubed(data.scores.size());
    for (std::size_t i = 0; i < data.scores.size(); ++i) {
        affine[i] = 0.5 + data.scores[i] / 2.0;
        cubed[i] = data.scores[i] * data.scores[i] * data.scores[i];
    }
    REQUIRE(std::abs(grid_auc(affine, data.labels) - exact) < 0.05);
    REQUIRE(std::abs(grid_auc(cubed, data.labels) - exact) < 0.05);
}

TEST_CASE("auc: swapping labels mirrors the area") {
    Rng rng(13);
    const auto data = random_scores(rng, 150, false);
    std::vector<std::uint8_t> flipped(data.labels.size());
    for (std::size_t i = 0; i < flipped.size(); ++i) {
        flipped[i] = data.labels[i] ? 0 : 1;
    }
    const double auc = auc_percent(roc_curve(data.scores, data.labels));
    const double mirrored = auc_percent(roc_curve(data.scores, flipped));
    CHECK(auc + mirrored == doctest::Approx(100.0).epsilon(0.002));
}

TEST_CASE("specificity at 80% sensitivity: perfect and hand-computed cases") {
    const std::vector<double> perfect{0.9, 0.8, 0.2, 0.1};
    const std::vector<std::uint8_t> labels{1, 1, 0, 0};
    const auto points = roc_curve(perfect, labels);
    CHECK(specificity_at_sensitivity(points, 0.8) == doctest::Approx(100.0));

    // five positives (one low), five negatives (one high): the best grid
    // threshold reaching TPR 0.8 is 0.8 itself, with one false positive
    const std::vector<double> scores{0.95, 0.9, 0.85, 0.8, 0.3, 0.82, 0.6, 0.4, 0.2, 0.1};
    const std::vector<std::uint8_t> y{1, 1, 1, 1, 1, 0, 0, 0, 0, 0};
    const auto curve = roc_curve(scores, y);
    CHECK(specificity_at_sensitivity(curve, 0.8) == doctest::Approx(80.0));
}

TEST_CASE("score files: round trip, range check, header handling") {
    const auto dir = temp_dir("eval_scores");

    ScoreSet set;
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        set.ids.push_back("file_" + std::to_string(i));
        set.probabilities.push_back(rng.uniform());
    }
    write_scores(set, dir / "scores.csv");
    const ScoreSet back = read_scores(dir / "scores.csv");
    REQUIRE(back.size() == set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        REQUIRE(back.ids[i] == set.ids[i]);
        REQUIRE(back.probabilities[i] ==
                doctest::Approx(set.probabilities[i]).epsilon(1e-6));
    }

    ScoreSet bad;
    bad.ids = {"x"};
    bad.probabilities = {1.5};
    CHECK_THROWS_AS(write_scores(bad, dir / "bad.csv"), OutOfRangeProbability);

    {
        std::ofstream f(dir / "range.csv");
        f << "id,probability\nx,1.500000\n";
    }
    CHECK_THROWS_AS(read_scores(dir / "range.csv"), OutOfRangeProbability);

    {
        std::ofstream f(dir / "header_only.csv");
        f << "id,probability\n";
    }
    CHECK(read_scores(dir / "header_only.csv").size() == 0);

    {
        std::ofstream f(dir / "empty.csv");
    }
    CHECK_THROWS_AS(read_scores(dir / "empty.csv"), ParseError);

    {
        std::ofstream f(dir / "bad_header.csv");
        f << "file,score\n";
    }
    CHECK_THROWS_AS(read_scores(dir / "bad_header.csv"), ParseError);
}

TEST_CASE("roc csv and svg exports") {
    const auto dir = temp_dir("eval_export");
    const std::vector<double> scores{0.9, 0.7, 0.4, 0.2};
    const std::vector<std::uint8_t> labels{1, 1, 0, 0};
    const RocSummary roc = evaluate_scores(scores, labels);

    write_roc_csv(roc.points, dir / "roc.csv");
    const auto lines = read_lines(dir / "roc.csv");
    REQUIRE(lines.size() == roc.points.size() + 1);
    CHECK(lines[0] == "threshold,fpr,tpr");
    CHECK(lines[1].substr(0, 4) == "inf,");

    write_roc_svg(roc, dir / "roc.svg", "test");
    const std::string svg = read_file(dir / "roc.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("polyline") != std::string::npos);
}
