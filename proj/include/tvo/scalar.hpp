#pragma once

#include "tvo/rational.hpp"

#include <ostream>
#include <string>

namespace tvo {

/**
 * Element a + b i + c r2 + d i r2 of Q(i, sqrt 2).
 */
class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : a_(v) {}
    Scalar(long v) : a_(v) {}
    Scalar(long long v) : a_(v) {}
    Scalar(const Rational& v) : a_(v) {}
    Scalar(Rational a, Rational b, Rational c, Rational d)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
    {
    }

    static Scalar i() { return Scalar(0, 1, 0, 0); }
    static Scalar sqrt2() { return Scalar(0, 0, 1, 0); }
    static Scalar half() { return Scalar(Rational(1, 2)); }
    static Scalar rational(long long num, long long den) { return Scalar(Rational(num, den)); }

    const Rational& re() const { return a_; }
    const Rational& im() const { return b_; }
    const Rational& r2() const { return c_; }
    const Rational& ir2() const { return d_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero() && c_.is_zero() && d_.is_zero(); }

    friend Scalar operator+(const Scalar& x, const Scalar& y)
    {
        return Scalar(x.a_ + y.a_, x.b_ + y.b_, x.c_ + y.c_, x.d_ + y.d_);
    }
    friend Scalar operator-(const Scalar& x) { return Scalar(-x.a_, -x.b_, -x.c_, -x.d_); }
    friend Scalar operator-(const Scalar& x, const Scalar& y)
    {
        return Scalar(x.a_ - y.a_, x.b_ - y.b_, x.c_ - y.c_, x.d_ - y.d_);
    }

    friend Scalar operator*(const Scalar& x, const Scalar& y)
    {
        // i^2 = -1, r2^2 = 2, (i r2)^2 = -2.
        Scalar z;
        const Rational* xs[4] = {&x.a_, &x.b_, &x.c_, &x.d_};
        const Rational* ys[4] = {&y.a_, &y.b_, &y.c_, &y.d_};
        Rational* zs[4] = {&z.a_, &z.b_, &z.c_, &z.d_};
        // product of basis elements p*q = kSign[p][q] * kMult[p][q] * basis[kIdx[p][q]]
        static constexpr int kIdx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static constexpr int kCoef[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, 2, 2}, {1, -1, 2, -2}};
        for (int p = 0; p < 4; ++p) {
            if (xs[p]->is_zero()) {
                continue;
            }
            for (int q = 0; q < 4; ++q) {
                if (ys[q]->is_zero()) {
                    continue;
                }
                Rational t = *xs[p] * *ys[q];
                if (kCoef[p][q] != 1) {
                    t *= Rational(kCoef[p][q]);
                }
                *zs[kIdx[p][q]] += t;
            }
        }
        return z;
    }

    Scalar inv() const
    {
        if (is_zero()) {
            throw std::domain_error("division by zero");
        }
        // x = P + iQ with P, Q in Q(r2); 1/x = (P - iQ) / (P^2 + Q^2).
        Rational e = a_ * a_ + b_ * b_ + Rational(2) * (c_ * c_ + d_ * d_);
        Rational f = Rational(2) * (a_ * c_ + b_ * d_);
        Rational den = e * e - Rational(2) * f * f;
        Scalar conj_n(e / den, 0, -f / den, 0);
        Scalar p_minus_iq(a_, -b_, c_, -d_);
        return p_minus_iq * conj_n;
    }

    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inv(); }

    Scalar& operator+=(const Scalar& y)
    {
        a_ += y.a_;
        b_ += y.b_;
        c_ += y.c_;
        d_ += y.d_;
        return *this;
    }
    Scalar& operator-=(const Scalar& y)
    {
        a_ -= y.a_;
        b_ -= y.b_;
        c_ -= y.c_;
        d_ -= y.d_;
        return *this;
    }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    friend bool operator==(const Scalar& x, const Scalar& y)
    {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
    }

    /// Rendering "a + b*i + c*r2 + d*i*r2", zero parts omitted.
    std::string str() const
    {
        static const char* kUnit[4] = {"", "*i", "*r2", "*i*r2"};
        const Rational* parts[4] = {&a_, &b_, &c_, &d_};
        std::string out;
        for (int p = 0; p < 4; ++p) {
            const Rational& v = *parts[p];
            if (v.is_zero()) {
                continue;
            }
            std::string mag = (v.sign() < 0 ? -v : v).str();
            if (out.empty()) {
                out = (v.sign() < 0 ? "-" : "") + mag + kUnit[p];
            } else {
                out += (v.sign() < 0 ? " - " : " + ") + mag + kUnit[p];
            }
        }
        return out.empty() ? "0" : out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.str(); }

private:
    Rational a_, b_, c_, d_;
};

inline Scalar add(const Scalar& x, const Scalar& y) { return x + y; }
inline Scalar mul(const Scalar& x, const Scalar& y) { return x * y; }
inline Scalar inv(const Scalar& x) { return x.inv(); }

}  // namespace tvo
