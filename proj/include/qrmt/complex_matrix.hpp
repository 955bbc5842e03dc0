#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qrmt {

/// Dense row-major complex matrix. Just enough linear algebra for the
/// embedding layer and the Hermitian eigensolver; not a general BLAS.
struct ComplexMatrix {
    std::size_t rows{0};
    std::size_t cols{0};
    std::vector<std::complex<double>> data;

    ComplexMatrix() = default;
    ComplexMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    std::complex<double>& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const std::complex<double>& operator()(std::size_t r, std::size_t c) const {
        return data[r * cols + c];
    }

    std::complex<double>* row(std::size_t r) { return data.data() + r * cols; }
    const std::complex<double>* row(std::size_t r) const { return data.data() + r * cols; }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix m(cols, rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : data) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : data) s += std::norm(z);
        return std::sqrt(s);
    }

    std::complex<double> trace() const {
        std::complex<double> t = 0.0;
        for (std::size_t i = 0; i < rows && i < cols; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_hermitian(double tol) const {
        if (rows != cols) return false;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c <= r; ++c)
                if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
        return true;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols != b.rows) throw std::invalid_argument("complex matmul: dimension mismatch");
        ComplexMatrix c(a.rows, b.cols);
        for (std::size_t i = 0; i < a.rows; ++i) {
            for (std::size_t k = 0; k < a.cols; ++k) {
                const std::complex<double> x = a(i, k);
                if (x == std::complex<double>(0.0)) continue;
                const std::complex<double>* brow = b.row(k);
                std::complex<double>* crow = c.row(i);
                for (std::size_t j = 0; j < b.cols; ++j) crow[j] += x * brow[j];
            }
        }
        return c;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.rows != b.rows || a.cols != b.cols)
            throw std::invalid_argument("complex subtraction: shape mismatch");
        ComplexMatrix c(a.rows, a.cols);
        for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] - b.data[i];
        return c;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.rows != b.rows || a.cols != b.cols)
            throw std::invalid_argument("complex addition: shape mismatch");
        ComplexMatrix c(a.rows, a.cols);
        for (std::size_t i = 0; i < a.data.size(); ++i) c.data[i] = a.data[i] + b.data[i];
        return c;
    }
};

}  // namespace qrmt
