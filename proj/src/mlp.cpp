#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "respscreen/classifiers.hpp"
#include "respscreen/errors.hpp"
#include "respscreen/rng.hpp"

namespace respscreen {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double softplus(double z) {
    if (z > 0.0) {
        return z + std::log1p(std::exp(-z));
    }
    return std::log1p(std::exp(z));
}

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}

    void update(std::span<double> params, std::span<const double> grads, const MlpConfig& cfg,
                int t) {
        const double correct1 = 1.0 - std::pow(cfg.beta1, t);
        const double correct2 = 1.0 - std::pow(cfg.beta2, t);
        for (std::size_t i = 0; i < params.size(); ++i) {
            m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grads[i];
            v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
            const double mhat = m[i] / correct1;
            const double vhat = v[i] / correct2;
            params[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.epsilon);
        }
    }
};

}  // namespace

double mlp_loss_and_gradients(const MlpModel& model, const Matrix& features,
                              std::span<const std::uint8_t> labels, MlpGradients& grads) {
    const std::size_t b = features.rows();
    const std::size_t d = features.cols();
    const std::size_t h = model.hidden_bias.size();
    if (d != model.hidden_weights.rows() || labels.size() != b) {
        throw DimensionMismatch("mlp_loss_and_gradients: shape mismatch");
    }

    grads.hidden_weights = Matrix(d, h, 0.0);
    grads.hidden_bias.assign(h, 0.0);
    grads.output_weights.assign(h, 0.0);
    grads.output_bias = 0.0;

    std::vector<double> hidden(h);
    std::vector<double> delta_hidden(h);
    const double inv_b = 1.0 / static_cast<double>(b);

    double loss = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
        const auto x = features.row(i);
        for (std::size_t j = 0; j < h; ++j) {
            hidden[j] = model.hidden_bias[j];
        }
        for (std::size_t k = 0; k < d; ++k) {
            const double xk = x[k];
            const auto w = model.hidden_weights.row(k);
            for (std::size_t j = 0; j < h; ++j) {
                hidden[j] += xk * w[j];
            }
        }
        double z = model.output_bias;
        for (std::size_t j = 0; j < h; ++j) {
            hidden[j] = std::tanh(hidden[j]);
            z += hidden[j] * model.output_weights[j];
        }

        const double y = labels[i] ? 1.0 : 0.0;
        loss += (softplus(z) - y * z) * inv_b;

        const double delta_out = (sigmoid(z) - y) * inv_b;
        grads.output_bias += delta_out;
        for (std::size_t j = 0; j < h; ++j) {
            grads.output_weights[j] += delta_out * hidden[j];
            delta_hidden[j] = delta_out * model.output_weights[j] * (1.0 - hidden[j] * hidden[j]);
            grads.hidden_bias[j] += delta_hidden[j];
        }
        for (std::size_t k = 0; k < d; ++k) {
            const double xk = x[k];
            auto g = grads.hidden_weights.row(k);
            for (std::size_t j = 0; j < h; ++j) {
                g[j] += xk * delta_hidden[j];
            }
        }
    }

    // L2 penalty on weights only
    double penalty = 0.0;
    for (std::size_t i = 0; i < model.hidden_weights.data().size(); ++i) {
        const double w = model.hidden_weights.data()[i];
        penalty += w * w;
        grads.hidden_weights.data()[i] += model.config.alpha * w;
    }
    for (std::size_t j = 0; j < h; ++j) {
        const double w = model.output_weights[j];
        penalty += w * w;
        grads.output_weights[j] += model.config.alpha * w;
    }
    loss += 0.5 * model.config.alpha * penalty;
    return loss;
}

MlpModel train_mlp(const LabeledFrameSet& set, std::uint64_t seed, const MlpConfig& config) {
    set.validate();
    balanced_weights(set.labels);  // rejects single-class input

    const std::size_t m = set.size();
    const std::size_t d = set.features.cols();
    const std::size_t h = static_cast<std::size_t>(config.hidden_units);

    MlpModel model;
    model.config = config;
    model.seed = seed;
    model.hidden_weights = Matrix(d, h);
    model.hidden_bias.assign(h, 0.0);
    model.output_weights.assign(h, 0.0);
    model.output_bias = 0.0;

    Rng rng(seed);
    const double bound_hidden = std::sqrt(6.0 / static_cast<double>(d + h));
    for (double& w : model.hidden_weights.data()) {
        w = rng.uniform(-bound_hidden, bound_hidden);
    }
    const double bound_out = std::sqrt(6.0 / static_cast<double>(h + 1));
    for (double& w : model.output_weights) {
        w = rng.uniform(-bound_out, bound_out);
    }

    AdamState adam_hw(d * h);
    AdamState adam_hb(h);
    AdamState adam_ow(h);
    AdamState adam_ob(1);

    const std::size_t batch = std::min<std::size_t>(
        static_cast<std::size_t>(std::max(1, config.batch_size)), m);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);

    MlpGradients grads;
    std::vector<std::uint8_t> batch_labels;
    double best_loss = std::numeric_limits<double>::infinity();
    int no_improvement = 0;
    int step = 0;

    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        rng.shuffle(order);
        double epoch_loss = 0.0;

        for (std::size_t begin = 0; begin < m; begin += batch) {
            const std::size_t end = std::min(begin + batch, m);
            const std::size_t rows = end - begin;

            Matrix batch_x(rows, d);
            batch_labels.resize(rows);
            for (std::size_t r = 0; r < rows; ++r) {
                const std::size_t src = order[begin + r];
                std::copy(set.features.row(src).begin(), set.features.row(src).end(),
                          batch_x.row(r).begin());
                batch_labels[r] = set.labels[src];
            }

            const double loss = mlp_loss_and_gradients(model, batch_x, batch_labels, grads);
            if (!std::isfinite(loss)) {
                throw NonFiniteLoss("train_mlp: loss diverged");
            }
            epoch_loss += loss * static_cast<double>(rows);

            ++step;
            adam_hw.update(model.hidden_weights.data(), grads.hidden_weights.data(), config, step);
            adam_hb.update(model.hidden_bias, grads.hidden_bias, config, step);
            adam_ow.update(model.output_weights, grads.output_weights, config, step);
            std::span<double> ob(&model.output_bias, 1);
            std::span<const double> gob(&grads.output_bias, 1);
            adam_ob.update(ob, gob, config, step);
        }

        epoch_loss /= static_cast<double>(m);
        if (epoch_loss > best_loss - config.tolerance) {
            ++no_improvement;
        } else {
            no_improvement = 0;
        }
        best_loss = std::min(best_loss, epoch_loss);
        if (no_improvement >= config.patience) {
            break;
        }
    }
    return model;
}

std::vector<double> predict_frames(const MlpModel& model, const Matrix& features) {
    const std::size_t d = model.hidden_weights.rows();
    const std::size_t h = model.hidden_bias.size();
    if (features.cols() != d) {
        throw DimensionMismatch("predict_frames(mlp): feature width mismatch");
    }
    std::vector<double> out(features.rows());
    std::vector<double> hidden(h);
    for (std::size_t i = 0; i < features.rows(); ++i) {
        const auto x = features.row(i);
        for (std::size_t j = 0; j < h; ++j) {
            hidden[j] = model.hidden_bias[j];
        }
        for (std::size_t k = 0; k < d; ++k) {
            const double xk = x[k];
            const auto w = model.hidden_weights.row(k);
            for (std::size_t j = 0; j < h; ++j) {
                hidden[j] += xk * w[j];
            }
        }
        double z = model.output_bias;
        for (std::size_t j = 0; j < h; ++j) {
            z += std::tanh(hidden[j]) * model.output_weights[j];
        }
        out[i] = sigmoid(z);
    }
    return out;
}

}  // namespace respscreen
