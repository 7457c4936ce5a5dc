#pragma once

#include "tvo/scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace tvo {

/// coeff * (z-w)^a (z+w)^b z^p w^q
struct KernelTerm {
    Scalar coeff;
    int a = 0;
    int b = 0;
    int p = 0;
    int q = 0;
};

/// A finite sum of kernel terms, kept sorted by exponents with like terms merged.
class Kernel {
public:
    Kernel() = default;
    Kernel(std::initializer_list<KernelTerm> terms)
    {
        for (const auto& t : terms) {
            add(t);
        }
    }

    static Kernel term(const Scalar& coeff, int a, int b, int p = 0, int q = 0) { return Kernel{{coeff, a, b, p, q}}; }

    void add(const KernelTerm& t)
    {
        auto key = std::tie(t.a, t.b, t.p, t.q);
        auto it = std::lower_bound(terms_.begin(), terms_.end(), t, [](const KernelTerm& x, const KernelTerm& y) {
            return std::tie(x.a, x.b, x.p, x.q) < std::tie(y.a, y.b, y.p, y.q);
        });
        if (it != terms_.end() && std::tie(it->a, it->b, it->p, it->q) == key) {
            it->coeff += t.coeff;
            if (it->coeff.is_zero()) {
                terms_.erase(it);
            }
        } else if (!t.coeff.is_zero()) {
            terms_.insert(it, t);
        }
    }

    const std::vector<KernelTerm>& terms() const { return terms_; }

    friend Kernel operator+(Kernel x, const Kernel& y)
    {
        for (const auto& t : y.terms_) {
            x.add(t);
        }
        return x;
    }
    friend Kernel operator-(Kernel x, const Kernel& y)
    {
        for (auto t : y.terms_) {
            t.coeff = -t.coeff;
            x.add(t);
        }
        return x;
    }
    friend Kernel operator*(const Scalar& c, Kernel x)
    {
        Kernel out;
        for (auto t : x.terms_) {
            t.coeff *= c;
            out.add(t);
        }
        return out;
    }

private:
    std::vector<KernelTerm> terms_;
};

/// Coefficients of z^{-m} w^{-k} for |m| <= mz, |k| <= mw. Entries outside are not represented.
class BiSeriesWindow {
public:
    BiSeriesWindow(int mz, int mw) : mz_(mz), mw_(mw), data_(static_cast<std::size_t>((2 * mz + 1) * (2 * mw + 1)))
    {
        if (mz < 0 || mw < 0) {
            throw std::invalid_argument("negative window bound");
        }
    }

    int mz() const { return mz_; }
    int mw() const { return mw_; }
    bool contains(int m, int k) const { return m >= -mz_ && m <= mz_ && k >= -mw_ && k <= mw_; }

    const Scalar& at(int m, int k) const { return data_[index(m, k)]; }
    Scalar& at(int m, int k) { return data_[index(m, k)]; }

    friend BiSeriesWindow operator+(BiSeriesWindow x, const BiSeriesWindow& y)
    {
        x.check_shape(y);
        for (std::size_t t = 0; t < x.data_.size(); ++t) {
            x.data_[t] += y.data_[t];
        }
        return x;
    }
    friend BiSeriesWindow operator-(BiSeriesWindow x, const BiSeriesWindow& y)
    {
        x.check_shape(y);
        for (std::size_t t = 0; t < x.data_.size(); ++t) {
            x.data_[t] -= y.data_[t];
        }
        return x;
    }
    friend BiSeriesWindow operator*(const Scalar& c, BiSeriesWindow x)
    {
        for (auto& s : x.data_) {
            s *= c;
        }
        return x;
    }
    friend bool operator==(const BiSeriesWindow& x, const BiSeriesWindow& y)
    {
        return x.mz_ == y.mz_ && x.mw_ == y.mw_ && x.data_ == y.data_;
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
    }

    /// Rows m, columns k; header row lists k.
    std::string tsv() const
    {
        std::ostringstream os;
        os << "m\\k";
        for (int k = -mw_; k <= mw_; ++k) {
            os << '\t' << k;
        }
        os << '\n';
        for (int m = -mz_; m <= mz_; ++m) {
            os << m;
            for (int k = -mw_; k <= mw_; ++k) {
                os << '\t' << at(m, k).str();
            }
            os << '\n';
        }
        return os.str();
    }

private:
    std::size_t index(int m, int k) const
    {
        if (!contains(m, k)) {
            throw std::out_of_range("mode outside window");
        }
        return static_cast<std::size_t>((m + mz_) * (2 * mw_ + 1) + (k + mw_));
    }
    void check_shape(const BiSeriesWindow& y) const
    {
        if (mz_ != y.mz_ || mw_ != y.mw_) {
            throw std::invalid_argument("window shapes differ");
        }
    }

    int mz_;
    int mw_;
    std::vector<Scalar> data_;
};

enum class Region { zw, wz };

/// Generalized binomial coefficient a choose t, t >= 0.
inline Rational binomial(int a, int t)
{
    Rational out(1);
    for (int s = 0; s < t; ++s) {
        out *= Rational(a - s, s + 1);
    }
    return out;
}

namespace detail {

// Coefficient of x^t in (1 - x)^a (1 + x)^b.
inline Rational mixed_binomial(int a, int b, int t)
{
    Rational out(0);
    for (int t1 = 0; t1 <= t; ++t1) {
        Rational s = binomial(a, t1) * binomial(b, t - t1);
        out += t1 % 2 == 0 ? s : -s;
    }
    return out;
}

}  // namespace detail

/**
 * Expansion of K in the region |z| > |w| (zw) or |w| > |z| (wz).
 *
 * zw: (z-w)^a (z+w)^b = sum_t c_t z^{a+b-t} w^t with c_t from (1-x)^a (1+x)^b.
 * wz: (z-w)^a (z+w)^b = (-1)^a sum_t c_t w^{a+b-t} z^t.
 */
inline BiSeriesWindow iota_expand(const Kernel& K, Region region, int mz, int mw)
{
    BiSeriesWindow out(mz, mw);
    for (const auto& term : K.terms()) {
        int total = term.a + term.b + term.p + term.q;
        for (int m = -mz; m <= mz; ++m) {
            int k = -total - m;
            if (k < -mw || k > mw) {
                continue;
            }
            // exponent of the small variable contributed by the binomial part
            int t = region == Region::zw ? -k - term.q : -m - term.p;
            if (t < 0) {
                continue;
            }
            Rational c = detail::mixed_binomial(term.a, term.b, t);
            if (region == Region::wz && term.a % 2 != 0) {
                c = -c;
            }
            out.at(m, k) += term.coeff * Scalar(c);
        }
    }
    return out;
}

inline BiSeriesWindow iota_diff(const Kernel& K, int mz, int mw)
{
    return iota_expand(K, Region::zw, mz, mw) - iota_expand(K, Region::wz, mz, mw);
}

/// 1 at (r+1, -r) for odd r.
inline BiSeriesWindow odd_delta(int mz, int mw)
{
    BiSeriesWindow out(mz, mw);
    for (int m = -mz; m <= mz; ++m) {
        int r = m - 1;
        if (r % 2 != 0 && -r >= -mw && -r <= mw) {
            out.at(m, -r) = Scalar(1);
        }
    }
    return out;
}

/// Kernels used by the commutator formulas.
namespace kernels {

inline Kernel inv_z_minus_w() { return Kernel::term(Scalar(1), -1, 0); }
inline Kernel inv_z_plus_w() { return Kernel::term(Scalar(1), 0, -1); }
inline Kernel w_over_z_plus_w() { return Kernel::term(Scalar(1), 0, -1, 0, 1); }
inline Kernel w_over_z_minus_w() { return Kernel::term(Scalar(1), -1, 0, 0, 1); }
inline Kernel w2_over_z_plus_w_sq() { return Kernel::term(Scalar(1), 0, -2, 0, 2); }
inline Kernel w2_over_z_plus_w() { return Kernel::term(Scalar(1), 0, -1, 0, 2); }

}  // namespace kernels

}  // namespace tvo
