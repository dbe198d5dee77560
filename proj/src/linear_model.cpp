#include <cmath>
#include <vector>

#include "respscreen/classifiers.hpp"
#include "respscreen/errors.hpp"

namespace respscreen {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow
double softplus(double z) {
    if (z > 0.0) {
        return z + std::log1p(std::exp(-z));
    }
    return std::log1p(std::exp(z));
}

/// In-place Cholesky solve of the SPD system a * x = rhs (a is n x n,
/// row-major, destroyed). Returns false if a is not positive definite.
bool cholesky_solve(std::vector<double>& a, std::vector<double>& rhs, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) {
            d -= a[j * n + k] * a[j * n + k];
        }
        if (d <= 0.0 || !std::isfinite(d)) {
            return false;
        }
        const double ljj = std::sqrt(d);
        a[j * n + j] = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / ljj;
        }
    }
    // forward then backward substitution
    for (std::size_t i = 0; i < n; ++i) {
        double s = rhs[i];
        for (std::size_t k = 0; k < i; ++k) {
            s -= a[i * n + k] * rhs[k];
        }
        rhs[i] = s / a[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = rhs[ii];
        for (std::size_t k = ii + 1; k < n; ++k) {
            s -= a[k * n + ii] * rhs[k];
        }
        rhs[ii] = s / a[ii * n + ii];
    }
    return true;
}

std::vector<double> sample_weights(const LabeledFrameSet& set, const LrConfig& config) {
    std::vector<double> v(set.size(), 1.0);
    if (config.class_balanced) {
        const ClassWeights cw = balanced_weights(set.labels);
        for (std::size_t i = 0; i < set.size(); ++i) {
            v[i] = cw.of(set.labels[i]);
        }
    }
    return v;
}

}  // namespace

double lr_objective(const LabeledFrameSet& set, const LrConfig& config,
                    std::span<const double> weights, double bias,
                    std::vector<double>* gradient) {
    set.validate();
    const std::size_t m = set.size();
    const std::size_t d = set.features.cols();
    if (weights.size() != d) {
        throw DimensionMismatch("lr_objective: weight vector width mismatch");
    }
    const std::vector<double> v = sample_weights(set, config);

    if (gradient) {
        gradient->assign(d + 1, 0.0);
    }
    double loss = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto x = set.features.row(i);
        double z = bias;
        for (std::size_t j = 0; j < d; ++j) {
            z += x[j] * weights[j];
        }
        const double y = set.labels[i] ? 1.0 : 0.0;
        loss += v[i] * (softplus(z) - y * z);
        if (gradient) {
            const double r = v[i] * (sigmoid(z) - y);
            for (std::size_t j = 0; j < d; ++j) {
                (*gradient)[j] += r * x[j];
            }
            (*gradient)[d] += r;
        }
    }
    loss *= config.c;
    double penalty = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        penalty += weights[j] * weights[j];
    }
    loss += 0.5 * penalty;
    if (gradient) {
        for (std::size_t j = 0; j <= d; ++j) {
            (*gradient)[j] *= config.c;
        }
        for (std::size_t j = 0; j < d; ++j) {
            (*gradient)[j] += weights[j];
        }
    }
    return loss;
}

LrModel train_lr(const LabeledFrameSet& set, const LrConfig& config) {
    set.validate();
    if (set.size() < 2) {
        throw Error("train_lr: need at least two rows");
    }
    balanced_weights(set.labels);  // rejects single-class input either way

    const std::size_t m = set.size();
    const std::size_t d = set.features.cols();
    const std::size_t dim = d + 1;  // bias last
    const std::vector<double> v = sample_weights(set, config);

    LrModel model;
    model.config = config;
    model.weights.assign(d, 0.0);
    model.bias = 0.0;

    std::vector<double> grad;
    double loss = lr_objective(set, config, model.weights, model.bias, &grad);

    std::vector<double> hess(dim * dim);
    std::vector<double> step(dim);
    std::vector<double> trial_w(d);

    for (int iter = 0; iter < config.max_iterations; ++iter) {
        double grad_norm = 0.0;
        for (double g : grad) {
            grad_norm = std::max(grad_norm, std::abs(g));
        }
        if (grad_norm < config.tolerance) {
            break;
        }

        // Hessian = c * X't diag(v * p * (1-p)) X't + ridge on the weight block
        std::fill(hess.begin(), hess.end(), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const auto x = set.features.row(i);
            double z = model.bias;
            for (std::size_t j = 0; j < d; ++j) {
                z += x[j] * model.weights[j];
            }
            const double p = sigmoid(z);
            const double s = config.c * v[i] * p * (1.0 - p);
            if (s == 0.0) {
                continue;
            }
            for (std::size_t a = 0; a < d; ++a) {
                const double sa = s * x[a];
                double* row = hess.data() + a * dim;
                for (std::size_t b = a; b < d; ++b) {
                    row[b] += sa * x[b];
                }
                row[d] += sa;
            }
            hess[d * dim + d] += s;
        }
        for (std::size_t j = 0; j < d; ++j) {
            hess[j * dim + j] += 1.0;
        }
        // mirror the upper triangle
        for (std::size_t a = 0; a < dim; ++a) {
            for (std::size_t b = a + 1; b < dim; ++b) {
                hess[b * dim + a] = hess[a * dim + b];
            }
        }

        std::copy(grad.begin(), grad.end(), step.begin());
        std::vector<double> factor = hess;
        double jitter = 1e-10;
        while (!cholesky_solve(factor, step, dim)) {
            factor = hess;
            for (std::size_t j = 0; j < dim; ++j) {
                factor[j * dim + j] += jitter;
            }
            std::copy(grad.begin(), grad.end(), step.begin());
            jitter *= 10.0;
            if (jitter > 1.0) {
                throw DidNotImprove("train_lr: Hessian factorization failed");
            }
        }

        double descent = 0.0;  // g . step, step being the Newton direction
        for (std::size_t j = 0; j < dim; ++j) {
            descent += grad[j] * step[j];
        }

        // backtracking line search on the convex objective
        double t = 1.0;
        bool accepted = false;
        double trial_loss = 0.0;
        double trial_bias = 0.0;
        while (t > 1e-16) {
            for (std::size_t j = 0; j < d; ++j) {
                trial_w[j] = model.weights[j] - t * step[j];
            }
            trial_bias = model.bias - t * step[d];
            trial_loss = lr_objective(set, config, trial_w, trial_bias, nullptr);
            if (trial_loss <= loss - 1e-4 * t * descent) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            throw DidNotImprove("train_lr: line search failed to reduce the loss");
        }

        std::copy(trial_w.begin(), trial_w.end(), model.weights.begin());
        model.bias = trial_bias;
        loss = lr_objective(set, config, model.weights, model.bias, &grad);
        if (!std::isfinite(loss)) {
            throw NonFiniteLoss("train_lr: loss diverged");
        }
        if (loss > trial_loss + 1e-12) {
            throw DidNotImprove("train_lr: loss increased after accepted step");
        }
    }
    return model;
}

std::vector<double> predict_frames(const LrModel& model, const Matrix& features) {
    if (features.cols() != model.weights.size()) {
        throw DimensionMismatch("predict_frames(lr): feature width mismatch");
    }
    std::vector<double> out(features.rows());
    for (std::size_t i = 0; i < features.rows(); ++i) {
        const auto x = features.row(i);
        double z = model.bias;
        for (std::size_t j = 0; j < x.size(); ++j) {
            z += x[j] * model.weights[j];
        }
        out[i] = sigmoid(z);
    }
    return out;
}

}  // namespace respscreen
