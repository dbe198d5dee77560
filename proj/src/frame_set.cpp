#include <algorithm>

#include "respscreen/classifiers.hpp"
#include "respscreen/errors.hpp"
#include "respscreen/rng.hpp"

namespace respscreen {

void LabeledFrameSet::validate() const {
    if (features.rows() != labels.size() || features.rows() != file_ids.size()) {
        throw DimensionMismatch("LabeledFrameSet: row counts disagree");
    }
}

ClassWeights balanced_weights(std::span<const std::uint8_t> labels) {
    std::size_t positive = 0;
    for (std::uint8_t y : labels) {
        positive += y ? 1 : 0;
    }
    const std::size_t negative = labels.size() - positive;
    if (positive == 0 || negative == 0) {
        throw SingleClass("balanced_weights: both classes required");
    }
    const double m = static_cast<double>(labels.size());
    return {m / (2.0 * static_cast<double>(negative)),
            m / (2.0 * static_cast<double>(positive))};
}

LabeledFrameSet oversample(const LabeledFrameSet& set, std::uint64_t seed) {
    set.validate();
    std::vector<std::size_t> positive_rows;
    std::vector<std::size_t> negative_rows;
    for (std::size_t i = 0; i < set.labels.size(); ++i) {
        (set.labels[i] ? positive_rows : negative_rows).push_back(i);
    }
    if (positive_rows.empty() || negative_rows.empty()) {
        throw SingleClass("oversample: both classes required");
    }
    if (positive_rows.size() == negative_rows.size()) {
        return set;
    }

    const auto& minority =
        positive_rows.size() < negative_rows.size() ? positive_rows : negative_rows;
    const std::size_t deficit =
        std::max(positive_rows.size(), negative_rows.size()) - minority.size();

    const std::size_t d = set.features.cols();
    LabeledFrameSet out;
    out.features = Matrix(set.size() + deficit, d);
    std::copy(set.features.data().begin(), set.features.data().end(),
              out.features.data().begin());
    out.labels = set.labels;
    out.file_ids = set.file_ids;
    out.labels.reserve(set.size() + deficit);
    out.file_ids.reserve(set.size() + deficit);

    Rng rng(seed);
    for (std::size_t k = 0; k < deficit; ++k) {
        const std::size_t src = minority[rng.uniform_int(minority.size())];
        const std::size_t dst = set.size() + k;
        std::copy(set.features.row(src).begin(), set.features.row(src).end(),
                  out.features.row(dst).begin());
        out.labels.push_back(set.labels[src]);
        out.file_ids.push_back(set.file_ids[src]);
    }
    return out;
}

}  // namespace respscreen
