#include <fstream>

#include <json.hpp>

#include "respscreen/classifiers.hpp"
#include "respscreen/errors.hpp"

namespace respscreen {

namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

json to_json(const Matrix& m) {
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.data()}};
}

Matrix matrix_from_json(const json& j) {
    Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    const auto data = j.at("data").get<std::vector<double>>();
    if (data.size() != m.data().size()) {
        throw ParseError("model file: matrix payload size mismatch");
    }
    m.data() = data;
    return m;
}

json encode(const LrModel& m) {
    return json{
        {"kind", "lr"},
        {"config",
         {{"c", m.config.c},
          {"max_iterations", m.config.max_iterations},
          {"class_balanced", m.config.class_balanced},
          {"tolerance", m.config.tolerance}}},
        {"params", {{"weights", m.weights}, {"bias", m.bias}}},
    };
}

json encode(const MlpModel& m) {
    return json{
        {"kind", "mlp"},
        {"config",
         {{"hidden_units", m.config.hidden_units},
          {"alpha", m.config.alpha},
          {"learning_rate", m.config.learning_rate},
          {"beta1", m.config.beta1},
          {"beta2", m.config.beta2},
          {"epsilon", m.config.epsilon},
          {"batch_size", m.config.batch_size},
          {"max_epochs", m.config.max_epochs},
          {"tolerance", m.config.tolerance},
          {"patience", m.config.patience}}},
        {"params",
         {{"hidden_weights", to_json(m.hidden_weights)},
          {"hidden_bias", m.hidden_bias},
          {"output_weights", m.output_weights},
          {"output_bias", m.output_bias}}},
        {"seed", m.seed},
    };
}

json encode(const RfModel& m) {
    json trees = json::array();
    for (const RfTree& tree : m.trees) {
        json t;
        auto& feature = t["feature"] = json::array();
        auto& threshold = t["threshold"] = json::array();
        auto& left = t["left"] = json::array();
        auto& right = t["right"] = json::array();
        auto& wn = t["weight_negative"] = json::array();
        auto& wp = t["weight_positive"] = json::array();
        for (const RfNode& n : tree.nodes) {
            feature.push_back(n.feature);
            threshold.push_back(n.threshold);
            left.push_back(n.left);
            right.push_back(n.right);
            wn.push_back(n.weight_negative);
            wp.push_back(n.weight_positive);
        }
        trees.push_back(std::move(t));
    }
    return json{
        {"kind", "rf"},
        {"config",
         {{"n_trees", m.config.n_trees},
          {"max_features", m.config.max_features},
          {"min_samples_split", m.config.min_samples_split}}},
        {"class_weights", {{"negative", m.class_weights.negative},
                           {"positive", m.class_weights.positive}}},
        {"params", {{"trees", std::move(trees)}}},
        {"seed", m.seed},
    };
}

LrModel decode_lr(const json& j) {
    LrModel m;
    const auto& cfg = j.at("config");
    m.config.c = cfg.at("c").get<double>();
    m.config.max_iterations = cfg.at("max_iterations").get<int>();
    m.config.class_balanced = cfg.at("class_balanced").get<bool>();
    m.config.tolerance = cfg.at("tolerance").get<double>();
    const auto& params = j.at("params");
    m.weights = params.at("weights").get<std::vector<double>>();
    m.bias = params.at("bias").get<double>();
    return m;
}

MlpModel decode_mlp(const json& j) {
    MlpModel m;
    const auto& cfg = j.at("config");
    m.config.hidden_units = cfg.at("hidden_units").get<int>();
    m.config.alpha = cfg.at("alpha").get<double>();
    m.config.learning_rate = cfg.at("learning_rate").get<double>();
    m.config.beta1 = cfg.at("beta1").get<double>();
    m.config.beta2 = cfg.at("beta2").get<double>();
    m.config.epsilon = cfg.at("epsilon").get<double>();
    m.config.batch_size = cfg.at("batch_size").get<int>();
    m.config.max_epochs = cfg.at("max_epochs").get<int>();
    m.config.tolerance = cfg.at("tolerance").get<double>();
    m.config.patience = cfg.at("patience").get<int>();
    const auto& params = j.at("params");
    m.hidden_weights = matrix_from_json(params.at("hidden_weights"));
    m.hidden_bias = params.at("hidden_bias").get<std::vector<double>>();
    m.output_weights = params.at("output_weights").get<std::vector<double>>();
    m.output_bias = params.at("output_bias").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
    return m;
}

RfModel decode_rf(const json& j) {
    RfModel m;
    const auto& cfg = j.at("config");
    m.config.n_trees = cfg.at("n_trees").get<int>();
    m.config.max_features = cfg.at("max_features").get<int>();
    m.config.min_samples_split = cfg.at("min_samples_split").get<int>();
    m.class_weights.negative = j.at("class_weights").at("negative").get<double>();
    m.class_weights.positive = j.at("class_weights").at("positive").get<double>();
    m.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& t : j.at("params").at("trees")) {
        RfTree tree;
        const auto feature = t.at("feature").get<std::vector<std::int32_t>>();
        const auto threshold = t.at("threshold").get<std::vector<double>>();
        const auto left = t.at("left").get<std::vector<std::int32_t>>();
        const auto right = t.at("right").get<std::vector<std::int32_t>>();
        const auto wn = t.at("weight_negative").get<std::vector<double>>();
        const auto wp = t.at("weight_positive").get<std::vector<double>>();
        const std::size_t n = feature.size();
        if (threshold.size() != n || left.size() != n || right.size() != n ||
            wn.size() != n || wp.size() != n) {
            throw ParseError("model file: ragged tree arrays");
        }
        tree.nodes.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            tree.nodes[i] = {feature[i], threshold[i], left[i], right[i], wn[i], wp[i]};
        }
        m.trees.push_back(std::move(tree));
    }
    return m;
}

}  // namespace

ModelKind model_kind(const Model& model) {
    switch (model.index()) {
        case 0:
            return ModelKind::lr;
        case 1:
            return ModelKind::mlp;
        default:
            return ModelKind::rf;
    }
}

std::string to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::lr:
            return "lr";
        case ModelKind::mlp:
            return "mlp";
        default:
            return "rf";
    }
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "lr") {
        return ModelKind::lr;
    }
    if (name == "mlp") {
        return ModelKind::mlp;
    }
    if (name == "rf") {
        return ModelKind::rf;
    }
    throw Error("unknown model kind '" + name + "' (expected lr, mlp or rf)");
}

std::vector<double> predict_frames(const Model& model, const Matrix& features) {
    return std::visit([&](const auto& m) { return predict_frames(m, features); }, model);
}

void save_model(const Model& model, const std::filesystem::path& path) {
    json j = std::visit([](const auto& m) { return encode(m); }, model);
    j["format_version"] = kModelFormatVersion;

    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write model file: " + path.string());
    }
    out << j.dump(1, '\t') << '\n';
    if (!out) {
        throw IoError("short write on model file: " + path.string());
    }
}

Model load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("model file not found: " + path.string());
    }
    json j;
    try {
        in >> j;
        const int version = j.at("format_version").get<int>();
        if (version != kModelFormatVersion) {
            throw ParseError("unsupported model format version " + std::to_string(version) +
                             ": " + path.string());
        }
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "lr") {
            return decode_lr(j);
        }
        if (kind == "mlp") {
            return decode_mlp(j);
        }
        if (kind == "rf") {
            return decode_rf(j);
        }
        throw ParseError("unknown model kind '" + kind + "': " + path.string());
    } catch (const json::exception& e) {
        throw ParseError("malformed model file " + path.string() + ": " + e.what());
    }
}

}  // namespace respscreen
