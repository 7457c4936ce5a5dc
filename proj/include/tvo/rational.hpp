#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tvo {

/**
 * Exact rational number.
 *
 * Values whose numerator and denominator fit in 63 bits live inline; anything
 * larger is promoted to a shared, immutable mpq_class. The representation is
 * canonical: a value that fits inline is never stored as a big number, so
 * equality can compare representations directly.
 */
class Rational {
public:
    Rational() = default;
    Rational(long long v) { set_small_checked(v, 1); }
    Rational(long v) { set_small_checked(v, 1); }
    Rational(int v) : num_(v) {}
    Rational(long long num, long long den)
    {
        if (den == 0) {
            throw std::domain_error("rational with zero denominator");
        }
        from_i128(num, den);
    }
    explicit Rational(const mpq_class& q) { from_mpq(q); }

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    int sign() const
    {
        if (big_) {
            return sgn(*big_);
        }
        return (num_ > 0) - (num_ < 0);
    }
    bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

    mpq_class to_mpq() const
    {
        if (big_) {
            return *big_;
        }
        mpq_class q(mpz_from_i64(num_), mpz_from_i64(den_));
        return q;
    }

    std::string str() const
    {
        if (big_) {
            return big_->get_str();
        }
        if (den_ == 1) {
            return std::to_string(num_);
        }
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend Rational operator+(const Rational& x, const Rational& y)
    {
        if (x.is_zero()) {
            return y;
        }
        if (y.is_zero()) {
            return x;
        }
        if (!x.big_ && !y.big_) {
            Rational r;
            if (x.den_ == y.den_) {
                r.from_i128(static_cast<__int128>(x.num_) + y.num_, x.den_);
            } else {
                __int128 n = static_cast<__int128>(x.num_) * y.den_ + static_cast<__int128>(y.num_) * x.den_;
                __int128 d = static_cast<__int128>(x.den_) * y.den_;
                r.from_i128(n, d);
            }
            return r;
        }
        return Rational(x.to_mpq() + y.to_mpq());
    }

    friend Rational operator-(const Rational& x)
    {
        if (x.big_) {
            return Rational(mpq_class(-*x.big_));
        }
        Rational r;
        r.num_ = -x.num_;
        r.den_ = x.den_;
        return r;
    }

    friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }

    friend Rational operator*(const Rational& x, const Rational& y)
    {
        if (x.is_zero() || y.is_zero()) {
            return Rational();
        }
        if (x.is_one()) {
            return y;
        }
        if (y.is_one()) {
            return x;
        }
        if (!x.big_ && !y.big_) {
            long long g1 = std::gcd(x.num_, y.den_);
            long long g2 = std::gcd(y.num_, x.den_);
            __int128 n = static_cast<__int128>(x.num_ / g1) * (y.num_ / g2);
            __int128 d = static_cast<__int128>(x.den_ / g2) * (y.den_ / g1);
            Rational r;
            r.assign_reduced(n, d);
            return r;
        }
        return Rational(x.to_mpq() * y.to_mpq());
    }

    Rational inv() const
    {
        if (is_zero()) {
            throw std::domain_error("division by zero");
        }
        if (big_) {
            return Rational(mpq_class(1 / *big_));
        }
        Rational r;
        if (num_ < 0) {
            r.num_ = -den_;
            r.den_ = -num_;
        } else {
            r.num_ = den_;
            r.den_ = num_;
        }
        return r;
    }

    friend Rational operator/(const Rational& x, const Rational& y) { return x * y.inv(); }

    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    Rational& operator/=(const Rational& y) { return *this = *this / y; }

    friend bool operator==(const Rational& x, const Rational& y)
    {
        if (x.big_ || y.big_) {
            if (!x.big_ || !y.big_) {
                return false;
            }
            return *x.big_ == *y.big_;
        }
        return x.num_ == y.num_ && x.den_ == y.den_;
    }

    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y)
    {
        if (!x.big_ && !y.big_) {
            __int128 l = static_cast<__int128>(x.num_) * y.den_;
            __int128 r = static_cast<__int128>(y.num_) * x.den_;
            return l <=> r;
        }
        int c = cmp(x.to_mpq(), y.to_mpq());
        return c <=> 0;
    }

private:
    static constexpr long long kMax = std::numeric_limits<long long>::max();

    long long num_ = 0;
    long long den_ = 1;
    std::shared_ptr<const mpq_class> big_;

    static mpz_class mpz_from_i64(long long v)
    {
        mpz_class z;
        mpz_set_si(z.get_mpz_t(), v);
        return z;
    }

    static mpz_class mpz_from_i128(__int128 v)
    {
        bool neg = v < 0;
        unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
        mpz_class hi;
        mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(u >> 64));
        mpz_class lo;
        mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(u & 0xffffffffffffffffULL));
        mpz_class z = (hi << 64) + lo;
        return neg ? mpz_class(-z) : z;
    }

    static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b)
    {
        while (b != 0) {
            unsigned __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    static bool fits(__int128 v) { return v <= kMax && v >= -kMax; }

    void set_small_checked(long long n, long long d)
    {
        if (n == std::numeric_limits<long long>::min()) {
            from_i128(n, d);
            return;
        }
        num_ = n;
        den_ = d;
    }

    void from_i128(__int128 n, __int128 d)
    {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        unsigned __int128 un = n < 0 ? -static_cast<unsigned __int128>(n) : static_cast<unsigned __int128>(n);
        unsigned __int128 g = gcd128(un, static_cast<unsigned __int128>(d));
        if (g > 1) {
            n /= static_cast<__int128>(g);
            d /= static_cast<__int128>(g);
        }
        if (n == 0) {
            d = 1;
        }
        assign_reduced(n, d);
    }

    // n/d is already in lowest terms with d > 0.
    void assign_reduced(__int128 n, __int128 d)
    {
        if (fits(n) && fits(d)) {
            num_ = static_cast<long long>(n);
            den_ = static_cast<long long>(d);
            big_.reset();
            return;
        }
        mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
        big_ = std::make_shared<const mpq_class>(q);
        num_ = 0;
        den_ = 1;
    }

    void from_mpq(mpq_class q)
    {
        q.canonicalize();
        const mpz_class& n = q.get_num();
        const mpz_class& d = q.get_den();
        if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t())) {
            long long nn = mpz_get_si(n.get_mpz_t());
            long long dd = mpz_get_si(d.get_mpz_t());
            if (nn != std::numeric_limits<long long>::min()) {
                num_ = nn;
                den_ = dd;
                big_.reset();
                return;
            }
        }
        big_ = std::make_shared<const mpq_class>(q);
        num_ = 0;
        den_ = 1;
    }
};

inline Rational inv(const Rational& x) { return x.inv(); }

}  // namespace tvo
