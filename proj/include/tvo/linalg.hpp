#pragma once

#include "tvo/scalar.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvo {

/// Dense square-or-rectangular matrix over Scalar, row-major.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = Scalar(1);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const
    {
        for (const auto& x : a_) {
            if (!x.is_zero()) {
                return false;
            }
        }
        return true;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y)
    {
        check_shape(x, y);
        Matrix r(x);
        for (std::size_t i = 0; i < r.a_.size(); ++i) {
            if (!y.a_[i].is_zero()) {
                r.a_[i] += y.a_[i];
            }
        }
        return r;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y)
    {
        check_shape(x, y);
        Matrix r(x);
        for (std::size_t i = 0; i < r.a_.size(); ++i) {
            if (!y.a_[i].is_zero()) {
                r.a_[i] -= y.a_[i];
            }
        }
        return r;
    }
    friend Matrix operator*(const Scalar& s, const Matrix& x)
    {
        Matrix r(x);
        for (auto& v : r.a_) {
            if (!v.is_zero()) {
                v = s * v;
            }
        }
        return r;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y)
    {
        if (x.cols_ != y.rows_) {
            throw std::invalid_argument("matrix shapes do not compose");
        }
        Matrix r(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i) {
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const Scalar& xv = x(i, k);
                if (xv.is_zero()) {
                    continue;
                }
                for (std::size_t j = 0; j < y.cols_; ++j) {
                    const Scalar& yv = y(k, j);
                    if (!yv.is_zero()) {
                        r(i, j) += xv * yv;
                    }
                }
            }
        }
        return r;
    }

    friend bool operator==(const Matrix& x, const Matrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

    /// Rank by exact Gaussian elimination.
    std::size_t rank() const
    {
        Matrix m(*this);
        return m.eliminate();
    }

    /// Solves this * x = b for square invertible matrices.
    std::vector<Scalar> solve(const std::vector<Scalar>& b) const
    {
        if (rows_ != cols_ || b.size() != rows_) {
            throw std::invalid_argument("solve needs a square system");
        }
        Matrix aug(rows_, cols_ + 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                aug(i, j) = (*this)(i, j);
            }
            aug(i, cols_) = b[i];
        }
        if (aug.eliminate(cols_) != rows_) {
            throw std::domain_error("singular system");
        }
        // eliminate() leaves reduced row echelon form with unit pivots on the diagonal
        std::vector<Scalar> x(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            x[i] = aug(i, cols_);
        }
        return x;
    }

    /// Reduced row echelon form in place over the first `ncols` columns; returns the rank.
    std::size_t eliminate(std::size_t ncols = static_cast<std::size_t>(-1))
    {
        if (ncols > cols_) {
            ncols = cols_;
        }
        std::size_t r = 0;
        for (std::size_t c = 0; c < ncols && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && (*this)(p, c).is_zero()) {
                ++p;
            }
            if (p == rows_) {
                continue;
            }
            if (p != r) {
                for (std::size_t j = 0; j < cols_; ++j) {
                    std::swap((*this)(p, j), (*this)(r, j));
                }
            }
            Scalar piv = (*this)(r, c).inv();
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!(*this)(r, j).is_zero()) {
                    (*this)(r, j) = (*this)(r, j) * piv;
                }
            }
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == r || (*this)(i, c).is_zero()) {
                    continue;
                }
                Scalar f = (*this)(i, c);
                for (std::size_t j = 0; j < cols_; ++j) {
                    if (!(*this)(r, j).is_zero()) {
                        (*this)(i, j) -= f * (*this)(r, j);
                    }
                }
            }
            ++r;
        }
        return r;
    }

    std::string str() const
    {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            s += "[";
            for (std::size_t j = 0; j < cols_; ++j) {
                s += (j ? ", " : "") + (*this)(i, j).str();
            }
            s += "]\n";
        }
        return s;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> a_;

    static void check_shape(const Matrix& x, const Matrix& y)
    {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_) {
            throw std::invalid_argument("matrix shapes differ");
        }
    }
};

inline Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

}  // namespace tvo
