#include "readmit/sparse.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "readmit/errors.hpp"

namespace readmit {

double SparseVector::l2_norm() const {
    double acc = 0.0;
    for (double v : values) acc += v * v;
    return std::sqrt(acc);
}

void SparseVector::validate() const {
    if (indices.size() != values.size())
        throw ContractError("sparse vector: index/value length mismatch");
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] >= dimension)
            throw ContractError("sparse vector: index " + std::to_string(indices[k]) +
                                " out of range for dimension " + std::to_string(dimension));
        if (k > 0 && indices[k - 1] >= indices[k])
            throw ContractError("sparse vector: indices not strictly increasing");
        if (!std::isfinite(values[k]) || values[k] == 0.0)
            throw ContractError("sparse vector: values must be finite and non-zero");
    }
}

std::size_t Dataset::positives() const {
    std::size_t count = 0;
    for (std::uint8_t y : labels) count += y;
    return count;
}

void Dataset::validate() const {
    if (vectors.size() != labels.size())
        throw ContractError("dataset: vector/label count mismatch");
    for (const SparseVector& v : vectors) {
        if (v.dimension != dimension) throw ContractError("dataset: inconsistent vector dimension");
        v.validate();
    }
    for (std::uint8_t y : labels)
        if (y > 1) throw ContractError("dataset: labels must be 0 or 1");
}

Dataset subset(const Dataset& data, const std::vector<std::uint32_t>& indices) {
    Dataset out;
    out.dimension = data.dimension;
    out.vectors.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (std::uint32_t i : indices) {
        if (i >= data.size()) throw ContractError("dataset subset: row index out of range");
        out.vectors.push_back(data.vectors[i]);
        out.labels.push_back(data.labels[i]);
    }
    return out;
}

void write_dataset(std::ostream& out, const DatasetFile& file) {
    nlohmann::ordered_json header;
    header["type"] = "dataset";
    header["feature_set"] = file.feature_set;
    header["dimension"] = file.data.dimension;
    header["rows"] = file.data.size();
    out << header.dump() << '\n';
    for (std::size_t i = 0; i < file.data.size(); ++i) {
        nlohmann::ordered_json row;
        row["hadm_id"] = file.hadm_ids[i];
        row["label"] = static_cast<int>(file.data.labels[i]);
        row["indices"] = file.data.vectors[i].indices;
        row["values"] = file.data.vectors[i].values;
        out << row.dump() << '\n';
    }
}

DatasetFile read_dataset(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw DataError(name + ": empty dataset file");
    DatasetFile file;
    std::size_t expected_rows = 0;
    try {
        nlohmann::json header = nlohmann::json::parse(line);
        if (header.at("type").get<std::string>() != "dataset")
            throw DataError(name + ": not a dataset file");
        file.feature_set = header.at("feature_set").get<std::string>();
        file.data.dimension = header.at("dimension").get<std::uint32_t>();
        expected_rows = header.at("rows").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
        throw DataError(name + ": bad dataset header: " + e.what());
    }
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty()) continue;
        try {
            nlohmann::json row = nlohmann::json::parse(line);
            file.hadm_ids.push_back(row.at("hadm_id").get<std::int64_t>());
            int label = row.at("label").get<int>();
            if (label != 0 && label != 1)
                throw DataError(name + ": line " + std::to_string(line_number) + ": label must be 0 or 1");
            file.data.labels.push_back(static_cast<std::uint8_t>(label));
            SparseVector v;
            v.dimension = file.data.dimension;
            v.indices = row.at("indices").get<std::vector<std::uint32_t>>();
            v.values = row.at("values").get<std::vector<double>>();
            v.validate();
            file.data.vectors.push_back(std::move(v));
        } catch (const nlohmann::json::exception& e) {
            throw DataError(name + ": line " + std::to_string(line_number) + ": " + e.what());
        }
    }
    if (file.data.size() != expected_rows)
        throw DataError(name + ": header promised " + std::to_string(expected_rows) + " rows, found " +
                        std::to_string(file.data.size()));
    return file;
}

}  // namespace readmit
