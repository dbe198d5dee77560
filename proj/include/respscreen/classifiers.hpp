#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "respscreen/matrix.hpp"

namespace respscreen {

/// Frames with their binary labels (1 = positive class) and the index of
/// the source file each frame came from.
struct LabeledFrameSet {
    Matrix features;
    std::vector<std::uint8_t> labels;
    std::vector<std::int32_t> file_ids;

    std::size_t size() const { return labels.size(); }
    void validate() const;  // throws DimensionMismatch
};

/// Per-class weights w_c = M / (2 * count_c); weighted class totals come
/// out equal. Throws SingleClass when a class is missing.
struct ClassWeights {
    double negative = 1.0;
    double positive = 1.0;

    double of(std::uint8_t label) const { return label ? positive : negative; }
};

ClassWeights balanced_weights(std::span<const std::uint8_t> labels);

/// Duplicate random minority rows (with replacement, seeded) until class
/// counts match. Majority rows pass through untouched.
LabeledFrameSet oversample(const LabeledFrameSet& set, std::uint64_t seed);

// ---------------------------------------------------------------------------
// logistic regression

struct LrConfig {
    double c = 0.01;               // multiplier on the data term; penalty is 0.5*|w|^2
    int max_iterations = 25;
    bool class_balanced = true;
    double tolerance = 1e-10;      // stop early when the gradient norm falls below this
};

struct LrModel {
    std::vector<double> weights;
    double bias = 0.0;
    LrConfig config;
};

/// Damped-Newton fit of the weighted L2-penalized logistic objective
///   J(w, b) = c * sum_i v_i * logloss_i + 0.5 * |w|^2      (bias unpenalized)
/// Deterministic given input order. Throws SingleClass, DidNotImprove.
LrModel train_lr(const LabeledFrameSet& set, const LrConfig& config = {});

/// Objective value and gradient at the given parameters; exposed for the
/// convexity checks.
double lr_objective(const LabeledFrameSet& set, const LrConfig& config,
                    std::span<const double> weights, double bias,
                    std::vector<double>* gradient = nullptr);

// ---------------------------------------------------------------------------
// multi-layer perceptron

struct MlpConfig {
    int hidden_units = 25;         // tanh hidden layer
    double alpha = 1e-3;           // L2 penalty on weights (not biases)
    double learning_rate = 1e-3;   // Adam initial step
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int batch_size = 200;          // actual batch is min(batch_size, M)
    int max_epochs = 200;
    double tolerance = 1e-4;       // minimum loss improvement that counts
    int patience = 10;             // epochs without improvement before stopping
};

struct MlpModel {
    Matrix hidden_weights;              // D x H
    std::vector<double> hidden_bias;    // H
    std::vector<double> output_weights; // H
    double output_bias = 0.0;
    MlpConfig config;
    std::uint64_t seed = 0;
};

/// Adam minimization of mean logistic loss + (alpha/2)*|weights|^2 with
/// per-epoch shuffled mini-batches. Callers balance classes by oversampling
/// beforehand. Deterministic given the seed. Throws SingleClass,
/// NonFiniteLoss.
MlpModel train_mlp(const LabeledFrameSet& set, std::uint64_t seed,
                   const MlpConfig& config = {});

struct MlpGradients {
    Matrix hidden_weights;
    std::vector<double> hidden_bias;
    std::vector<double> output_weights;
    double output_bias = 0.0;
};

/// Full-batch loss (mean logistic + L2 penalty) and its analytic gradient;
/// the training step and the finite-difference checks share this.
double mlp_loss_and_gradients(const MlpModel& model, const Matrix& features,
                              std::span<const std::uint8_t> labels, MlpGradients& grads);

// ---------------------------------------------------------------------------
// random forest

struct RfConfig {
    int n_trees = 50;
    int max_features = 0;       // candidate features per split; 0 means floor(sqrt(D))
    int min_samples_split = 2;
    int jobs = 0;               // tree-building threads; 0 means all cores
};

struct RfNode {
    std::int32_t feature = -1;  // -1 on leaves
    double threshold = 0.0;     // go left when x[feature] <= threshold
    std::int32_t left = -1;
    std::int32_t right = -1;
    double weight_negative = 0.0;  // class-weighted sample mass at this node
    double weight_positive = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct RfTree {
    std::vector<RfNode> nodes;  // nodes[0] is the root
};

struct RfModel {
    std::vector<RfTree> trees;
    RfConfig config;
    ClassWeights class_weights;
    std::uint64_t seed = 0;
};

/// Bootstrap-bagged trees split on the best weighted-gini decrease among a
/// random feature subset, grown until pure. Class weights come from
/// balanced_weights on the full training set. Deterministic given the seed.
RfModel train_rf(const LabeledFrameSet& set, std::uint64_t seed, const RfConfig& config = {});

// ---------------------------------------------------------------------------
// prediction and persistence

std::vector<double> predict_frames(const LrModel& model, const Matrix& features);
std::vector<double> predict_frames(const MlpModel& model, const Matrix& features);
std::vector<double> predict_frames(const RfModel& model, const Matrix& features);

using Model = std::variant<LrModel, MlpModel, RfModel>;

enum class ModelKind { lr, mlp, rf };

ModelKind model_kind(const Model& model);
std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

std::vector<double> predict_frames(const Model& model, const Matrix& features);

/// Versioned JSON persistence. Loading rejects unknown format versions.
void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace respscreen
