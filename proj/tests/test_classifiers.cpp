#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "respscreen/classifiers.hpp"
#include "respscreen/errors.hpp"
#include "respscreen/rng.hpp"
#include "test_util.hpp"

using namespace respscreen;
using namespace testutil;

namespace {

LabeledFrameSet make_set(const std::vector<std::vector<double>>& rows,
                         const std::vector<std::uint8_t>& labels) {
    LabeledFrameSet set;
    set.features = Matrix(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            set.features(i, j) = rows[i][j];
        }
    }
    set.labels = labels;
    set.file_ids.assign(labels.size(), 0);
    return set;
}

LabeledFrameSet random_set(Rng& rng, std::size_t rows, std::size_t cols, double shift) {
    LabeledFrameSet set;
    set.features = Matrix(rows, cols);
    set.labels.resize(rows);
    set.file_ids.assign(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
        const bool positive = rng.uniform() < 0.5;
        set.labels[i] = positive ? 1 : 0;
        for (std::size_t j = 0; j < cols; ++j) {
            set.features(i, j) = rng.uniform(-1.0, 1.0) + (positive ? shift : 0.0);
        }
    }
    // both classes guaranteed
    set.labels[0] = 1;
    set.labels[rows - 1] = 0;
    return set;
}

// --- independent objective + optimizer for the LR oracle --------------------

struct IndependentLrObjective {
    const LabeledFrameSet& set;
    double c;
    std::vector<double> sample_weight;

    IndependentLrObjective(const LabeledFrameSet& s, double c_in) : set(s), c(c_in) {
        std::size_t pos = 0;
        for (std::uint8_t y : set.labels) {
            pos += y;
        }
        const double m = static_cast<double>(set.labels.size());
        const double w_pos = m / (2.0 * static_cast<double>(pos));
        const double w_neg = m / (2.0 * static_cast<double>(set.labels.size() - pos));
        for (std::uint8_t y : set.labels) {
            sample_weight.push_back(y ? w_pos : w_neg);
        }
    }

    double value(const std::vector<double>& theta) const {  // theta = [w..., b]
        const std::size_t d = set.features.cols();
        double loss = 0.0;
        for (std::size_t i = 0; i < set.size(); ++i) {
            double z = theta[d];
            for (std::size_t j = 0; j < d; ++j) {
                z += set.features(i, j) * theta[j];
            }
            const double y = set.labels[i] ? 1.0 : 0.0;
            const double sp = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
            loss += sample_weight[i] * (sp - y * z);
        }
        double penalty = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            penalty += theta[j] * theta[j];
        }
        return c * loss + 0.5 * penalty;
    }

    std::vector<double> gradient(const std::vector<double>& theta) const {
        const std::size_t d = set.features.cols();
        std::vector<double> g(d + 1, 0.0);
        for (std::size_t i = 0; i < set.size(); ++i) {
            double z = theta[d];
            for (std::size_t j = 0; j < d; ++j) {
                z += set.features(i, j) * theta[j];
            }
            const double p = z >= 0.0 ? 1.0 / (1.0 + std::exp(-z))
                                      : std::exp(z) / (1.0 + std::exp(z));
            const double r = sample_weight[i] * (p - (set.labels[i] ? 1.0 : 0.0));
            for (std::size_t j = 0; j < d; ++j) {
                g[j] += r * set.features(i, j);
            }
            g[d] += r;
        }
        for (std::size_t j = 0; j <= d; ++j) {
            g[j] *= c;
        }
        for (std::size_t j = 0; j < d; ++j) {
            g[j] += theta[j];
        }
        return g;
    }
};

/// Plain gradient descent with backtracking; slow but entirely generic.
std::vector<double> gd_minimize(const IndependentLrObjective& obj, std::size_t dim) {
    std::vector<double> theta(dim, 0.0);
    double value = obj.value(theta);
    double step = 1.0;
    for (int iter = 0; iter < 200000; ++iter) {
        const auto g = obj.gradient(theta);
        double norm = 0.0;
        for (double v : g) {
            norm = std::max(norm, std::abs(v));
        }
        if (norm < 1e-12) {
            break;
        }
        step *= 2.0;  // allow growth again after cautious iterations
        while (true) {
            std::vector<double> trial(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                trial[j] = theta[j] - step * g[j];
            }
            const double trial_value = obj.value(trial);
            if (trial_value < value) {
                theta = std::move(trial);
                value = trial_value;
                break;
            }
            step *= 0.5;
            if (step < 1e-18) {
                return theta;
            }
        }
    }
    return theta;
}

}  // namespace

TEST_CASE("balanced_weights: formula, balance, and single-class rejection") {
    std::vector<std::uint8_t> labels(100, 0);
    for (int i = 0; i < 10; ++i) {
        labels[static_cast<std::size_t>(i)] = 1;
    }
    const ClassWeights w = balanced_weights(labels);
    CHECK(w.positive == doctest::Approx(5.0));
    CHECK(w.negative == doctest::Approx(100.0 / 180.0));

    // weighted class totals match: sum of weights over the set equals M
    const double total = 10 * w.positive + 90 * w.negative;
    CHECK(total == doctest::Approx(100.0).epsilon(1e-12));

    std::vector<std::uint8_t> even(10, 0);
    for (int i = 0; i < 5; ++i) {
        even[static_cast<std::size_t>(i)] = 1;
    }
    const ClassWeights balanced = balanced_weights(even);
    CHECK(balanced.positive == doctest::Approx(1.0));
    CHECK(balanced.negative == doctest::Approx(1.0));

    const std::vector<std::uint8_t> single(5, 1);
    CHECK_THROWS_AS(balanced_weights(single), SingleClass);
}

TEST_CASE("oversample: counts, determinism, untouched majority") {
    Rng rng(5);
    LabeledFrameSet set;
    set.features = Matrix(125, 3);
    for (double& v : set.features.data()) {
        v = rng.uniform(-1.0, 1.0);
    }
    set.labels.assign(125, 0);
    for (std::size_t i = 0; i < 25; ++i) {
        set.labels[i] = 1;
    }
    set.file_ids.resize(125);
    for (std::size_t i = 0; i < 125; ++i) {
        set.file_ids[i] = static_cast<std::int32_t>(i);
    }

    const LabeledFrameSet out = oversample(set, 99);
    REQUIRE(out.size() == 200);
    std::size_t pos = 0;
    for (std::uint8_t y : out.labels) {
        pos += y;
    }
    CHECK(pos == 100);

    // original rows pass through unchanged, duplicates appended
    for (std::size_t i = 0; i < set.size(); ++i) {
        REQUIRE(out.labels[i] == set.labels[i]);
        REQUIRE(out.file_ids[i] == set.file_ids[i]);
        for (std::size_t j = 0; j < 3; ++j) {
            REQUIRE(out.features(i, j) == set.features(i, j));
        }
    }
    // every appended row is a copy of a minority row
    for (std::size_t i = set.size(); i < out.size(); ++i) {
        REQUIRE(out.labels[i] == 1);
        REQUIRE(out.file_ids[i] < 25);
    }

    const LabeledFrameSet again = oversample(set, 99);
    CHECK(again.features.data() == out.features.data());
    CHECK(again.file_ids == out.file_ids);

    // already balanced input comes back unchanged
    LabeledFrameSet even = make_set({{0.0}, {1.0}}, {0, 1});
    const LabeledFrameSet same = oversample(even, 7);
    CHECK(same.size() == 2);
    CHECK(same.features.data() == even.features.data());
}

TEST_CASE("train_lr: symmetric separable toy set") {
    std::vector<std::vector<double>> rows;
    std::vector<std::uint8_t> labels;
    for (int i = 0; i < 50; ++i) {
        rows.push_back({-1.0});
        labels.push_back(0);
        rows.push_back({1.0});
        labels.push_back(1);
    }
    const LrModel model = train_lr(make_set(rows, labels));
    CHECK(model.weights[0] > 0.0);
    CHECK(std::abs(model.bias) < 1e-6);  // decision boundary at x = 0 by symmetry
}

TEST_CASE("train_lr: duplicating rows is exactly doubling the data weight") {
    Rng rng(8);
    const LabeledFrameSet set = random_set(rng, 60, 3, 0.8);

    LabeledFrameSet doubled;
    doubled.features = Matrix(120, 3);
    for (std::size_t i = 0; i < 60; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            doubled.features(i, j) = set.features(i, j);
            doubled.features(60 + i, j) = set.features(i, j);
        }
    }
    doubled.labels = set.labels;
    doubled.labels.insert(doubled.labels.end(), set.labels.begin(), set.labels.end());
    doubled.file_ids.assign(120, 0);

    LrConfig base;
    base.max_iterations = 200;
    LrConfig twice = base;
    twice.c = 2.0 * base.c;

    // balanced weights are unchanged by duplication, so the duplicated
    // objective is identical to the original one with c doubled
    const LrModel a = train_lr(doubled, base);
    const LrModel b = train_lr(set, twice);
    for (std::size_t j = 0; j < 3; ++j) {
        REQUIRE(a.weights[j] == doctest::Approx(b.weights[j]).epsilon(1e-8));
    }
    REQUIRE(a.bias == doctest::Approx(b.bias).epsilon(1e-8));
}

TEST_CASE("train_lr: agrees with an independent convex optimizer") {
    Rng rng(21);
    for (int trial = 0; trial < 3; ++trial) {
        const LabeledFrameSet set = random_set(rng, 40, 2, 1.2);

        LrConfig cfg;
        cfg.max_iterations = 500;  // cap lifted for the oracle comparison
        cfg.tolerance = 1e-12;
        const LrModel model = train_lr(set, cfg);

        // gradient norm at the reported solution
        std::vector<double> grad;
        lr_objective(set, cfg, model.weights, model.bias, &grad);
        double norm = 0.0;
        for (double g : grad) {
            norm = std::max(norm, std::abs(g));
        }
        REQUIRE(norm < 1e-6);

        const IndependentLrObjective oracle(set, cfg.c);
        const std::vector<double> reference = gd_minimize(oracle, 3);
        REQUIRE(model.weights[0] == doctest::Approx(reference[0]).epsilon(1e-3));
        REQUIRE(model.weights[1] == doctest::Approx(reference[1]).epsilon(1e-3));
        REQUIRE(model.bias == doctest::Approx(reference[2]).epsilon(1e-3));
    }
}

TEST_CASE("train_lr: single class and trivial sets rejected") {
    CHECK_THROWS_AS(train_lr(make_set({{1.0}, {2.0}}, {1, 1})), SingleClass);
    CHECK_THROWS_AS(train_lr(make_set({{1.0}}, {1})), Error);
}

TEST_CASE("predict_frames(lr): zero model gives one half everywhere") {
    LrModel model;
    model.weights.assign(4, 0.0);
    model.bias = 0.0;
    Matrix x(5, 4);
    Rng rng(2);
    for (double& v : x.data()) {
        v = rng.uniform(-10.0, 10.0);
    }
    for (double p : predict_frames(model, x)) {
        REQUIRE(p == 0.5);
    }
    Matrix wrong(2, 3);
    CHECK_THROWS_AS(predict_frames(model, wrong), DimensionMismatch);
}

TEST_CASE("mlp: zero output layer predicts one half") {
    MlpModel model;
    model.hidden_weights = Matrix(3, 25, 0.1);
    model.hidden_bias.assign(25, 0.2);
    model.output_weights.assign(25, 0.0);
    model.output_bias = 0.0;
    Matrix x(4, 3, 0.7);
    for (double p : predict_frames(model, x)) {
        REQUIRE(p == 0.5);
    }
}

TEST_CASE("mlp: forward pass matches a manual computation") {
    Rng rng(33);
    const std::size_t d = 117;
    const std::size_t h = 25;
    MlpModel model;
    model.hidden_weights = Matrix(d, h);
    for (double& v : model.hidden_weights.data()) {
        v = rng.uniform(-0.5, 0.5);
    }
    model.hidden_bias.resize(h);
    model.output_weights.resize(h);
    for (std::size_t j = 0; j < h; ++j) {
        model.hidden_bias[j] = rng.uniform(-0.5, 0.5);
        model.output_weights[j] = rng.uniform(-0.5, 0.5);
    }
    model.output_bias = rng.uniform(-0.5, 0.5);

    Matrix x(1, d);
    for (double& v : x.data()) {
        v = rng.uniform(-2.0, 2.0);
    }

    double z2 = model.output_bias;
    for (std::size_t j = 0; j < h; ++j) {
        double z1 = model.hidden_bias[j];
        for (std::size_t k = 0; k < d; ++k) {
            z1 += x(0, k) * model.hidden_weights(k, j);
        }
        z2 += std::tanh(z1) * model.output_weights[j];
    }
    const double expected = 1.0 / (1.0 + std::exp(-z2));
    const double got = predict_frames(model, x)[0];
    CHECK(got == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("mlp: analytic gradient matches central finite differences") {
    Rng rng(44);
    const std::size_t d = 7;
    const std::size_t h = 5;
    const std::size_t rows = 10;

    MlpModel model;
    model.config.alpha = 1e-3;
    model.hidden_weights = Matrix(d, h);
    for (double& v : model.hidden_weights.data()) {
        v = rng.uniform(-0.7, 0.7);
    }
    model.hidden_bias.resize(h);
    model.output_weights.resize(h);
    for (std::size_t j = 0; j < h; ++j) {
        model.hidden_bias[j] = rng.uniform(-0.7, 0.7);
        model.output_weights[j] = rng.uniform(-0.7, 0.7);
    }
    model.output_bias = rng.uniform(-0.7, 0.7);

    Matrix x(rows, d);
    std::vector<std::uint8_t> y(rows);
    for (double& v : x.data()) {
        v = rng.uniform(-1.5, 1.5);
    }
    for (auto& v : y) {
        v = rng.uniform() < 0.5 ? 1 : 0;
    }

    MlpGradients grads;
    mlp_loss_and_gradients(model, x, y, grads);

    const double step = 1e-5;
    auto check_param = [&](double* param, double analytic) {
        const double saved = *param;
        *param = saved + step;
        MlpGradients scratch;
        const double up = mlp_loss_and_gradients(model, x, y, scratch);
        *param = saved - step;
        const double down = mlp_loss_and_gradients(model, x, y, scratch);
        *param = saved;
        const double fd = (up - down) / (2.0 * step);
        const double diff = std::abs(analytic - fd);
        // central differences bottom out around 1e-9 at this step size
        REQUIRE((diff <= 1e-5 * std::max(std::abs(analytic), std::abs(fd)) || diff <= 1e-9));
    };

    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < h; ++j) {
            check_param(&model.hidden_weights(k, j), grads.hidden_weights(k, j));
        }
    }
    for (std::size_t j = 0; j < h; ++j) {
        check_param(&model.hidden_bias[j], grads.hidden_bias[j]);
        check_param(&model.output_weights[j], grads.output_weights[j]);
    }
    check_param(&model.output_bias, grads.output_bias);
}

TEST_CASE("train_mlp: solves an XOR-style cluster problem") {
    Rng rng(60);
    LabeledFrameSet set;
    const std::size_t per_cluster = 500;
    set.features = Matrix(4 * per_cluster, 2);
    set.labels.resize(4 * per_cluster);
    set.file_ids.assign(4 * per_cluster, 0);
    std::size_t row = 0;
    for (int cx = 0; cx < 2; ++cx) {
        for (int cy = 0; cy < 2; ++cy) {
            for (std::size_t i = 0; i < per_cluster; ++i, ++row) {
                set.features(row, 0) = (cx ? 1.0 : -1.0) + rng.uniform(-0.3, 0.3);
                set.features(row, 1) = (cy ? 1.0 : -1.0) + rng.uniform(-0.3, 0.3);
                set.labels[row] = static_cast<std::uint8_t>(cx ^ cy);
            }
        }
    }

    const MlpModel model = train_mlp(set, 17);
    const std::vector<double> probs = predict_frames(model, set.features);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        correct += (probs[i] >= 0.5) == (set.labels[i] == 1) ? 1 : 0;
    }
    const double accuracy = static_cast<double>(correct) / static_cast<double>(probs.size());
    CHECK(accuracy >= 0.95);
}

TEST_CASE("train_mlp: deterministic given the seed, diverges with absurd rates") {
    Rng rng(71);
    const LabeledFrameSet set = random_set(rng, 50, 4, 0.5);
    MlpConfig quick;
    quick.max_epochs = 5;
    const MlpModel a = train_mlp(set, 123, quick);
    const MlpModel b = train_mlp(set, 123, quick);
    CHECK(a.hidden_weights.data() == b.hidden_weights.data());
    CHECK(a.output_weights == b.output_weights);
    CHECK(a.output_bias == b.output_bias);

    MlpConfig absurd;
    absurd.learning_rate = 1e300;
    absurd.max_epochs = 5;
    CHECK_THROWS_AS(train_mlp(set, 1, absurd), NonFiniteLoss);

    CHECK_THROWS_AS(train_mlp(make_set({{1.0}, {2.0}}, {1, 1}), 3), SingleClass);
}

TEST_CASE("train_rf: deterministic, separable, and structurally sound") {
    Rng rng(81);

    // deterministic forests, node for node
    const LabeledFrameSet noise = random_set(rng, 120, 6, 0.0);
    RfConfig cfg;
    cfg.n_trees = 11;
    const RfModel m1 = train_rf(noise, 42, cfg);
    const RfModel m2 = train_rf(noise, 42, cfg);
    REQUIRE(m1.trees.size() == m2.trees.size());
    for (std::size_t t = 0; t < m1.trees.size(); ++t) {
        REQUIRE(m1.trees[t].nodes.size() == m2.trees[t].nodes.size());
        for (std::size_t n = 0; n < m1.trees[t].nodes.size(); ++n) {
            const RfNode& a = m1.trees[t].nodes[n];
            const RfNode& b = m2.trees[t].nodes[n];
            REQUIRE(a.feature == b.feature);
            REQUIRE(a.threshold == b.threshold);
            REQUIRE(a.left == b.left);
            REQUIRE(a.right == b.right);
            REQUIRE(a.weight_negative == b.weight_negative);
            REQUIRE(a.weight_positive == b.weight_positive);
        }
    }

    // separable one-dimensional data is learned perfectly on the training set
    std::vector<std::vector<double>> rows;
    std::vector<std::uint8_t> labels;
    Rng sep(9);
    for (int i = 0; i < 100; ++i) {
        const bool positive = i % 2 == 0;
        rows.push_back({positive ? sep.uniform(0.5, 1.5) : sep.uniform(-1.5, -0.5)});
        labels.push_back(positive ? 1 : 0);
    }
    const LabeledFrameSet separable = make_set(rows, labels);
    const RfModel forest = train_rf(separable, 3);
    const std::vector<double> probs = predict_frames(forest, separable.features);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        REQUIRE((probs[i] >= 0.5) == (labels[i] == 1));
    }
}

TEST_CASE("train_rf: recorded splits never increase weighted gini") {
    Rng rng(92);
    const LabeledFrameSet data = random_set(rng, 200, 5, 0.2);
    const RfModel model = train_rf(data, 7);

    auto gini = [](double wn, double wp) {
        const double w = wn + wp;
        return w > 0.0 ? 1.0 - (wn / w) * (wn / w) - (wp / w) * (wp / w) : 0.0;
    };

    std::size_t splits = 0;
    for (const RfTree& tree : model.trees) {
        REQUIRE(!tree.nodes.empty());
        for (const RfNode& node : tree.nodes) {
            REQUIRE(node.weight_negative >= 0.0);
            REQUIRE(node.weight_positive >= 0.0);
            REQUIRE(node.weight_negative + node.weight_positive > 0.0);
            if (node.is_leaf()) {
                REQUIRE(node.left == -1);
                REQUIRE(node.right == -1);
                continue;
            }
            ++splits;
            REQUIRE(node.left >= 0);
            REQUIRE(node.right >= 0);
            const RfNode& l = tree.nodes[static_cast<std::size_t>(node.left)];
            const RfNode& r = tree.nodes[static_cast<std::size_t>(node.right)];
            // children partition the parent mass
            REQUIRE(l.weight_negative + r.weight_negative ==
                    doctest::Approx(node.weight_negative).epsilon(1e-9));
            REQUIRE(l.weight_positive + r.weight_positive ==
                    doctest::Approx(node.weight_positive).epsilon(1e-9));

            const double w = node.weight_negative + node.weight_positive;
            const double wl = l.weight_negative + l.weight_positive;
            const double wr = r.weight_negative + r.weight_positive;
            const double decrease =
                gini(node.weight_negative, node.weight_positive) -
                (wl * gini(l.weight_negative, l.weight_positive) +
                 wr * gini(r.weight_negative, r.weight_positive)) /
                    w;
            REQUIRE(decrease >= -1e-12);
        }
    }
    CHECK(splits > 0);
}

TEST_CASE("predict_frames(rf): leaf fraction and tree-order invariance") {
    // single-leaf tree with weighted counts (pos 3, neg 1)
    RfModel model;
    RfTree tree;
    RfNode leaf;
    leaf.weight_positive = 3.0;
    leaf.weight_negative = 1.0;
    tree.nodes.push_back(leaf);
    model.trees.push_back(tree);

    Matrix x(1, 4, 0.0);
    CHECK(predict_frames(model, x)[0] == doctest::Approx(0.75));

    Rng rng(15);
    const LabeledFrameSet data = random_set(rng, 80, 3, 0.5);
    RfModel forest = train_rf(data, 5);
    Matrix probe(10, 3);
    for (double& v : probe.data()) {
        v = rng.uniform(-1.0, 1.0);
    }
    const std::vector<double> before = predict_frames(forest, probe);
    std::reverse(forest.trees.begin(), forest.trees.end());
    const std::vector<double> after = predict_frames(forest, probe);
    for (std::size_t i = 0; i < before.size(); ++i) {
        REQUIRE(after[i] == doctest::Approx(before[i]).epsilon(1e-12));
    }
}

TEST_CASE("all models emit probabilities inside [0, 1]") {
    Rng rng(27);
    const LabeledFrameSet data = random_set(rng, 150, 4, 0.6);

    std::vector<Model> models;
    models.emplace_back(train_lr(data));
    MlpConfig quick;
    quick.max_epochs = 20;
    models.emplace_back(train_mlp(data, 2, quick));
    RfConfig small;
    small.n_trees = 9;
    models.emplace_back(train_rf(data, 2, small));

    Matrix probe(50, 4);
    for (double& v : probe.data()) {
        v = rng.uniform(-5.0, 5.0);
    }
    for (const Model& m : models) {
        for (double p : predict_frames(m, probe)) {
            REQUIRE(std::isfinite(p));
            REQUIRE(p >= 0.0);
            REQUIRE(p <= 1.0);
        }
    }
}

TEST_CASE("model persistence: exact round trips and version gate") {
    const auto dir = temp_dir("models");
    Rng rng(3);
    const LabeledFrameSet data = random_set(rng, 90, 4, 0.7);
    Matrix probe(20, 4);
    for (double& v : probe.data()) {
        v = rng.uniform(-2.0, 2.0);
    }

    MlpConfig quick;
    quick.max_epochs = 15;
    RfConfig small;
    small.n_trees = 7;
    const std::vector<Model> models = {
        Model(train_lr(data)),
        Model(train_mlp(data, 9, quick)),
        Model(train_rf(data, 9, small)),
    };

    for (const Model& model : models) {
        const auto path = dir / (to_string(model_kind(model)) + ".json");
        save_model(model, path);
        const Model loaded = load_model(path);
        REQUIRE(model_kind(loaded) == model_kind(model));
        const auto expected = predict_frames(model, probe);
        const auto got = predict_frames(loaded, probe);
        for (std::size_t i = 0; i < expected.size(); ++i) {
            REQUIRE(got[i] == expected[i]);  // bit-exact reload
        }
    }

    {
        std::ofstream f(dir / "future.json");
        f << R"({"format_version": 99, "kind": "lr"})";
    }
    CHECK_THROWS_AS(load_model(dir / "future.json"), ParseError);
    CHECK_THROWS_AS(load_model(dir / "missing.json"), FileNotFound);
}
