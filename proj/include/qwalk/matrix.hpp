#ifndef QWALK_MATRIX_HPP
#define QWALK_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace qwalk {

using Vec = std::vector<double>;

/// Dense row-major real matrix. Small and value-semantic; all the
/// matrices in this project are modest (n up to a couple thousand).
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Vec column(std::size_t j) const;
    void set_column(std::size_t j, const Vec& v);

    Vec multiply(const Vec& v) const;
    Matrix multiply(const Matrix& other) const;
    Matrix transposed() const;

    double frobenius_norm() const;
    double max_abs() const;
    /// Largest |a_ij - a_ji| over all pairs; zero for exactly symmetric data.
    double symmetry_defect() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& v);
/// Scales v to unit Euclidean norm. Throws DomainError on the zero vector.
void normalize(Vec& v);

} // namespace qwalk

#endif
