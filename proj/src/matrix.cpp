#include "qwalk/matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "qwalk/errors.hpp"

namespace qwalk {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vec Matrix::column(std::size_t j) const {
    Vec v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Vec Matrix::multiply(const Vec& v) const {
    Vec out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double acc = 0.0;
        const double* row = data_.data() + i * cols_;
        for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

Matrix Matrix::multiply(const Matrix& other) const {
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const double a = (*this)(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                out(i, j) += a * other(k, j);
        }
    }
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

double Matrix::frobenius_norm() const {
    double acc = 0.0;
    for (double x : data_) acc += x * x;
    return std::sqrt(acc);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

double Matrix::symmetry_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
    return m;
}

double dot(const Vec& a, const Vec& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

void normalize(Vec& v) {
    const double n = norm2(v);
    if (n == 0.0) throw DomainError("cannot normalize the zero vector");
    for (double& x : v) x /= n;
}

} // namespace qwalk
