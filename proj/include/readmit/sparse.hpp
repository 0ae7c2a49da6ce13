#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace readmit {

/// Sparse feature vector. Indices are strictly increasing, values finite and
/// non-zero, all indices < dimension.
struct SparseVector {
    std::vector<std::uint32_t> indices;
    std::vector<double> values;
    std::uint32_t dimension = 0;

    std::size_t nnz() const { return indices.size(); }

    /// Dot product against a dense weight vector of length >= dimension.
    double dot(const std::vector<double>& weights) const {
        double acc = 0.0;
        for (std::size_t k = 0; k < indices.size(); ++k) acc += weights[indices[k]] * values[k];
        return acc;
    }

    double l2_norm() const;

    /// Throws ContractError if the structural invariants do not hold.
    void validate() const;
};

/// Labeled sparse dataset with a shared dimension.
struct Dataset {
    std::vector<SparseVector> vectors;
    std::vector<std::uint8_t> labels;  // 0 or 1
    std::uint32_t dimension = 0;

    std::size_t size() const { return vectors.size(); }
    std::size_t positives() const;
    void validate() const;
};

/// Extracts the rows named by `indices` (in that order).
Dataset subset(const Dataset& data, const std::vector<std::uint32_t>& indices);

/// A dataset as persisted: rows keyed by the admission they came from,
/// in cohort order.
struct DatasetFile {
    std::string feature_set;
    std::vector<std::int64_t> hadm_ids;
    Dataset data;
};

/// JSON-lines persistence: a header object, then one object per row.
void write_dataset(std::ostream& out, const DatasetFile& file);
DatasetFile read_dataset(std::istream& in, const std::string& name);

}  // namespace readmit
