#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "exmat/errors.hpp"

namespace exmat {

using cplx = std::complex<double>;

// Dense row-major complex matrix. The universe of all computation here;
// immutable by convention once built (operations return new values).
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {
        if (rows == 0 || cols == 0) throw InvalidInput("matrix dimensions must be positive");
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (rows == 0 || cols == 0) throw InvalidInput("matrix dimensions must be positive");
        if (a_.size() != rows * cols) throw InvalidInput("entry count does not match dimensions");
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<cplx>& d) {
        ComplexMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }

    bool finite() const {
        for (const cplx& z : a_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    void require_finite(const char* what) const {
        if (!finite()) throw InvalidInput(std::string(what) + ": non-finite entries");
    }

    ComplexMatrix conj() const {
        ComplexMatrix m(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = std::conj(a_[k]);
        return m;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    ComplexMatrix adjoint() const { return conj().transpose(); }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        check_same_shape(o);
        ComplexMatrix m(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] + o.a_[k];
        return m;
    }

    ComplexMatrix operator-(const ComplexMatrix& o) const {
        check_same_shape(o);
        ComplexMatrix m(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] - o.a_[k];
        return m;
    }

    ComplexMatrix operator*(const ComplexMatrix& o) const {
        if (cols_ != o.rows_) throw InvalidInput("matrix product shape mismatch");
        ComplexMatrix m(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const cplx aik = (*this)(i, k);
                if (aik == cplx{}) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) m(i, j) += aik * o(k, j);
            }
        }
        return m;
    }

    ComplexMatrix operator*(cplx s) const {
        ComplexMatrix m(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = a_[k] * s;
        return m;
    }

    friend ComplexMatrix operator*(cplx s, const ComplexMatrix& m) { return m * s; }

    std::vector<cplx> apply(const std::vector<cplx>& v) const {
        if (v.size() != cols_) throw InvalidInput("matvec shape mismatch");
        std::vector<cplx> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            cplx s{};
            for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
            r[i] = s;
        }
        return r;
    }

    std::vector<cplx> apply_adjoint(const std::vector<cplx>& v) const {
        if (v.size() != rows_) throw InvalidInput("matvec shape mismatch");
        std::vector<cplx> r(cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            const cplx vi = v[i];
            for (std::size_t j = 0; j < cols_; ++j) r[j] += std::conj((*this)(i, j)) * vi;
        }
        return r;
    }

    cplx trace() const {
        if (!square()) throw InvalidInput("trace of non-square matrix");
        cplx t{};
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0;
        for (const cplx& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0;
        for (const cplx& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    // E oplus F, block diagonal.
    ComplexMatrix direct_sum(const ComplexMatrix& o) const {
        if (!square() || !o.square()) throw InvalidInput("direct sum needs square blocks");
        ComplexMatrix m(rows_ + o.rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
        for (std::size_t i = 0; i < o.rows_; ++i)
            for (std::size_t j = 0; j < o.cols_; ++j) m(rows_ + i, cols_ + j) = o(i, j);
        return m;
    }

private:
    void check_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> a_;
};

inline double vec_norm(const std::vector<cplx>& v) {
    double s = 0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

inline cplx vec_dot(const std::vector<cplx>& x, const std::vector<cplx>& y) {
    // <y, x> convention: conj(x)^T y would differ; here returns sum conj(x_i) y_i.
    cplx s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

}  // namespace exmat
