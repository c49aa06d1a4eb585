#pragma once

#include <cstddef>
#include <vector>

#include "portrisk/errors.hpp"

namespace portrisk {

// Minimal dense row-major matrix. The pipeline's matrices are small
// (ports x ports); no linear algebra library needed.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool same_shape(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// row vector u -> u * A  (the building block of multi-hop exposure)
inline std::vector<double> rowvec_times(const std::vector<double>& u, const Matrix& a) {
    if (u.size() != a.rows()) throw DimensionError("rowvec_times: size mismatch");
    std::vector<double> out(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double ui = u[i];
        if (ui == 0.0) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) out[j] += ui * a(i, j);
    }
    return out;
}

}  // namespace portrisk
