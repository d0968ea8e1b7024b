#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace superloop {

/// Exact rational number.
///
/// Values whose numerator and denominator fit in 64 bits are kept inline and
/// combined through 128-bit intermediates; anything larger is promoted to a
/// shared immutable GMP rational. The representation is always canonical:
/// lowest terms, positive denominator, and small whenever the value fits.
class Scalar {
public:
    Scalar() = default;
    Scalar(long long v) : num_(v) {} // NOLINT(google-explicit-constructor)
    Scalar(int v) : num_(v) {}       // NOLINT(google-explicit-constructor)
    Scalar(long long num, long long den);
    explicit Scalar(const mpq_class& q);

    /// Parses "p", "-p" or "p/q" (q nonzero). Throws std::invalid_argument.
    static Scalar parse(std::string_view text);

    bool is_zero() const { return !big_ && num_ == 0; }
    bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
    bool is_integer() const;
    int sign() const;

    mpq_class to_mpq() const;
    mpz_class numerator() const;
    mpz_class denominator() const;
    /// Throws std::overflow_error when the value is not a 64-bit integer.
    long long to_int64() const;
    double to_double() const;
    /// "p/q", or "p" for integers.
    std::string str() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

    Scalar inverse() const;
    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    std::size_t hash() const;

private:
    void assign_canonical(const mpq_class& q);
    void assign_wide(__int128 num, __int128 den);

    long long num_ = 0;
    long long den_ = 1;
    std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

struct ScalarHash {
    std::size_t operator()(const Scalar& s) const { return s.hash(); }
};

} // namespace superloop
