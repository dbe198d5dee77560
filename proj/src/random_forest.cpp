#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "respscreen/classifiers.hpp"
#include "respscreen/errors.hpp"
#include "respscreen/rng.hpp"
#include "respscreen/threading.hpp"

namespace respscreen {

namespace {

struct SortItem {
    double value;
    std::uint8_t label;
};

struct NodeTask {
    std::int32_t node;
    std::size_t begin;
    std::size_t end;
};

double gini(double w_neg, double w_pos) {
    const double total = w_neg + w_pos;
    if (total <= 0.0) {
        return 0.0;
    }
    const double pn = w_neg / total;
    const double pp = w_pos / total;
    return 1.0 - pn * pn - pp * pp;
}

RfTree build_tree(const LabeledFrameSet& set, const ClassWeights& weights,
                  std::uint64_t tree_seed, int max_features, int min_samples_split) {
    const std::size_t m = set.size();
    const std::size_t d = set.features.cols();
    Rng rng(tree_seed);

    // bootstrap sample, same size as the input
    std::vector<std::uint32_t> indices(m);
    for (std::size_t i = 0; i < m; ++i) {
        indices[i] = static_cast<std::uint32_t>(rng.uniform_int(m));
    }

    std::vector<std::size_t> feature_pool(d);
    std::iota(feature_pool.begin(), feature_pool.end(), 0);
    std::vector<SortItem> items;

    RfTree tree;
    tree.nodes.reserve(64);
    tree.nodes.emplace_back();

    std::vector<NodeTask> stack;
    stack.push_back({0, 0, m});

    while (!stack.empty()) {
        const NodeTask task = stack.back();
        stack.pop_back();
        const std::size_t n = task.end - task.begin;

        double w_neg = 0.0;
        double w_pos = 0.0;
        for (std::size_t i = task.begin; i < task.end; ++i) {
            if (set.labels[indices[i]]) {
                w_pos += weights.positive;
            } else {
                w_neg += weights.negative;
            }
        }
        RfNode& node = tree.nodes[static_cast<std::size_t>(task.node)];
        node.weight_negative = w_neg;
        node.weight_positive = w_pos;

        if (w_pos == 0.0 || w_neg == 0.0 || n < static_cast<std::size_t>(min_samples_split)) {
            continue;  // leaf
        }

        // candidate features: partial Fisher-Yates over the shared pool
        const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(max_features), d);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + rng.uniform_int(d - i);
            std::swap(feature_pool[i], feature_pool[j]);
        }

        const double w_total = w_neg + w_pos;
        const double parent_gini = gini(w_neg, w_pos);
        double best_decrease = 0.0;
        std::int32_t best_feature = -1;
        double best_threshold = 0.0;

        for (std::size_t fi = 0; fi < k; ++fi) {
            const std::size_t feature = feature_pool[fi];
            items.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint32_t row = indices[task.begin + i];
                items[i] = {set.features(row, feature), set.labels[row]};
            }
            std::sort(items.begin(), items.end(),
                      [](const SortItem& a, const SortItem& b) { return a.value < b.value; });

            double left_neg = 0.0;
            double left_pos = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                if (items[i].label) {
                    left_pos += weights.positive;
                } else {
                    left_neg += weights.negative;
                }
                if (items[i].value >= items[i + 1].value) {
                    continue;  // only split between distinct values
                }
                const double left_total = left_neg + left_pos;
                const double right_neg = w_neg - left_neg;
                const double right_pos = w_pos - left_pos;
                const double decrease =
                    parent_gini - (left_total * gini(left_neg, left_pos) +
                                   (w_total - left_total) * gini(right_neg, right_pos)) /
                                      w_total;
                if (decrease > best_decrease || best_feature < 0) {
                    best_decrease = decrease;
                    best_feature = static_cast<std::int32_t>(feature);
                    best_threshold = (items[i].value + items[i + 1].value) / 2.0;
                }
            }
        }

        if (best_feature < 0) {
            continue;  // all candidate features constant here
        }

        auto* base = indices.data();
        auto* mid = std::partition(base + task.begin, base + task.end,
                                   [&](std::uint32_t row) {
                                       return set.features(row, static_cast<std::size_t>(
                                                                    best_feature)) <=
                                              best_threshold;
                                   });
        const std::size_t split = static_cast<std::size_t>(mid - base);
        if (split == task.begin || split == task.end) {
            continue;  // degenerate midpoint rounding; keep as leaf
        }

        const std::int32_t left_index = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        const std::int32_t right_index = static_cast<std::int32_t>(tree.nodes.size());
        tree.nodes.emplace_back();
        // emplace_back may reallocate; re-take the reference
        RfNode& parent = tree.nodes[static_cast<std::size_t>(task.node)];
        parent.feature = best_feature;
        parent.threshold = best_threshold;
        parent.left = left_index;
        parent.right = right_index;
        stack.push_back({right_index, split, task.end});
        stack.push_back({left_index, task.begin, split});
    }
    return tree;
}

}  // namespace

RfModel train_rf(const LabeledFrameSet& set, std::uint64_t seed, const RfConfig& config) {
    set.validate();
    const ClassWeights weights = balanced_weights(set.labels);
    const std::size_t d = set.features.cols();
    const int max_features = config.max_features > 0
                                 ? config.max_features
                                 : static_cast<int>(std::floor(std::sqrt(static_cast<double>(d))));

    RfModel model;
    model.config = config;
    model.class_weights = weights;
    model.seed = seed;
    model.trees.resize(static_cast<std::size_t>(config.n_trees));

    Rng master(seed);
    std::vector<std::uint64_t> tree_seeds(model.trees.size());
    for (auto& s : tree_seeds) {
        s = master.next_u64();
    }

    parallel_for(model.trees.size(), config.jobs, [&](std::size_t t) {
        model.trees[t] =
            build_tree(set, weights, tree_seeds[t], max_features, config.min_samples_split);
    });
    return model;
}

std::vector<double> predict_frames(const RfModel& model, const Matrix& features) {
    if (model.trees.empty()) {
        throw Error("predict_frames(rf): model has no trees");
    }
    std::vector<double> out(features.rows(), 0.0);
    const double inv_trees = 1.0 / static_cast<double>(model.trees.size());
    for (std::size_t i = 0; i < features.rows(); ++i) {
        const auto x = features.row(i);
        double acc = 0.0;
        for (const RfTree& tree : model.trees) {
            std::size_t node = 0;
            while (!tree.nodes[node].is_leaf()) {
                const RfNode& nd = tree.nodes[node];
                if (static_cast<std::size_t>(nd.feature) >= x.size()) {
                    throw DimensionMismatch("predict_frames(rf): feature width mismatch");
                }
                node = static_cast<std::size_t>(x[static_cast<std::size_t>(nd.feature)] <=
                                                        nd.threshold
                                                    ? nd.left
                                                    : nd.right);
            }
            const RfNode& leaf = tree.nodes[node];
            acc += leaf.weight_positive / (leaf.weight_positive + leaf.weight_negative);
        }
        out[i] = acc * inv_trees;
    }
    return out;
}

}  // namespace respscreen
