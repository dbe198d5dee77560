#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "respscreen/errors.hpp"
#include "respscreen/pipeline.hpp"

namespace respscreen {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

}  // namespace

bool Manifest::labeled() const {
    for (const ManifestEntry& e : entries) {
        if (!e.positive.has_value()) {
            return false;
        }
    }
    return !entries.empty();
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("manifest not found: " + path.string());
    }
    const std::filesystem::path base = path.parent_path();

    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("manifest is empty: " + path.string());
    }
    line = strip_cr(line);
    bool with_labels;
    if (line == "id,path,label") {
        with_labels = true;
    } else if (line == "id,path") {
        with_labels = false;
    } else {
        throw ParseError("bad manifest header '" + line + "': " + path.string());
    }

    Manifest manifest;
    std::set<std::string> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) {
            continue;
        }
        const auto fields = split_csv_row(line);
        const std::size_t expected = with_labels ? 3 : 2;
        if (fields.size() != expected || fields[0].empty() || fields[1].empty()) {
            throw ParseError("malformed manifest row at line " + std::to_string(line_no) + ": " +
                             path.string());
        }

        ManifestEntry entry;
        entry.id = fields[0];
        std::filesystem::path file(fields[1]);
        entry.path = file.is_absolute() ? file : base / file;
        if (with_labels) {
            if (fields[2] == "p") {
                entry.positive = true;
            } else if (fields[2] == "n") {
                entry.positive = false;
            } else {
                throw ParseError("bad label '" + fields[2] + "' at line " +
                                 std::to_string(line_no) + " (expected p or n): " + path.string());
            }
        }

        if (!seen.insert(entry.id).second) {
            throw DuplicateId("duplicate file id '" + entry.id + "': " + path.string());
        }
        std::error_code ec;
        if (!std::filesystem::exists(entry.path, ec)) {
            throw MissingFile("manifest entry '" + entry.id + "' points to missing file " +
                              entry.path.string());
        }
        manifest.entries.push_back(std::move(entry));
    }
    return manifest;
}

namespace {

std::vector<std::string> read_id_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FileNotFound("fold list not found: " + path.string());
    }
    std::vector<std::string> ids;
    std::string line;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (!line.empty()) {
            ids.push_back(line);
        }
    }
    return ids;
}

}  // namespace

FoldSplit load_fold_split(const std::filesystem::path& dir, int n_folds) {
    FoldSplit split;
    for (int k = 1; k <= n_folds; ++k) {
        FoldSplit::Fold fold;
        fold.train_ids = read_id_list(dir / ("train_fold_" + std::to_string(k) + ".txt"));
        fold.validation_ids = read_id_list(dir / ("val_fold_" + std::to_string(k) + ".txt"));
        split.folds.push_back(std::move(fold));
    }
    return split;
}

void validate_split(const FoldSplit& split, const Manifest& manifest) {
    std::set<std::string> known;
    for (const ManifestEntry& e : manifest.entries) {
        known.insert(e.id);
    }

    std::set<std::string> validated;
    for (std::size_t k = 0; k < split.folds.size(); ++k) {
        const auto& fold = split.folds[k];
        std::set<std::string> train(fold.train_ids.begin(), fold.train_ids.end());
        for (const std::string& id : fold.train_ids) {
            if (!known.count(id)) {
                throw FoldLeak("fold " + std::to_string(k + 1) + " train id '" + id +
                               "' is not in the manifest");
            }
        }
        for (const std::string& id : fold.validation_ids) {
            if (!known.count(id)) {
                throw FoldLeak("fold " + std::to_string(k + 1) + " validation id '" + id +
                               "' is not in the manifest");
            }
            if (train.count(id)) {
                throw FoldLeak("id '" + id + "' appears in both train and validation of fold " +
                               std::to_string(k + 1));
            }
            if (!validated.insert(id).second) {
                throw FoldLeak("id '" + id + "' appears in more than one validation set");
            }
        }
    }
    for (const std::string& id : known) {
        if (!validated.count(id)) {
            throw FoldLeak("id '" + id + "' is missing from every validation set");
        }
    }
}

}  // namespace respscreen
