#include "superloop/scalar.hpp"

#include <climits>
#include <functional>
#include <stdexcept>
#include <utility>

namespace superloop {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr long long kSmallMax = LLONG_MAX;

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b)
{
    while (b != 0) {
        // Dividing in 64 bits when possible is much faster than the 128-bit path.
        if ((a >> 64) == 0 && (b >> 64) == 0) {
            // Binary gcd.
            auto x = static_cast<unsigned long long>(a);
            auto y = static_cast<unsigned long long>(b);
            if (x == 0)
                return y;
            int shift = __builtin_ctzll(x | y);
            x >>= __builtin_ctzll(x);
            do {
                y >>= __builtin_ctzll(y);
                if (x > y)
                    std::swap(x, y);
                y -= x;
            } while (y != 0);
            return static_cast<u128>(x) << shift;
        }
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool fits_small(i128 v) { return v <= kSmallMax && v >= -kSmallMax; }

mpz_class mpz_from(i128 v)
{
    bool neg = v < 0;
    u128 u = uabs(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<unsigned long long>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<unsigned long long>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

bool mpz_small(const mpz_class& z, long long& out)
{
    if (!z.fits_slong_p())
        return false;
    long v = z.get_si();
    if (v == LLONG_MIN)
        return false;
    out = v;
    return true;
}

} // namespace

Scalar::Scalar(long long num, long long den)
{
    if (den == 0)
        throw std::domain_error("Scalar: zero denominator");
    assign_wide(num, den);
}

Scalar::Scalar(const mpq_class& q) { assign_canonical(q); }

void Scalar::assign_wide(i128 num, i128 den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num == 0) {
        num_ = 0;
        den_ = 1;
        big_.reset();
        return;
    }
    if (den != 1) {
        u128 g = gcd128(uabs(num), static_cast<u128>(den));
        if (g > 1) {
            num /= static_cast<i128>(g);
            den /= static_cast<i128>(g);
        }
    }
    if (fits_small(num) && fits_small(den)) {
        num_ = static_cast<long long>(num);
        den_ = static_cast<long long>(den);
        big_.reset();
        return;
    }
    mpq_class q(mpz_from(num), mpz_from(den));
    big_ = std::make_shared<const mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
}

void Scalar::assign_canonical(const mpq_class& q0)
{
    mpq_class q = q0;
    q.canonicalize();
    long long n = 0;
    long long d = 0;
    if (mpz_small(q.get_num(), n) && mpz_small(q.get_den(), d)) {
        num_ = n;
        den_ = d;
        big_.reset();
        return;
    }
    big_ = std::make_shared<const mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
}

Scalar Scalar::parse(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
            s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    auto valid_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+'))
            s.remove_prefix(1);
        if (s.empty())
            return false;
        for (char c : s)
            if (c < '0' || c > '9')
                return false;
        return true;
    };
    auto slash = text.find('/');
    std::string_view ns = trim(text.substr(0, slash));
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
    if (!valid_int(ns) || !valid_int(ds) || ds.front() == '-' || ds.front() == '+')
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    if (ns.front() == '+')
        ns.remove_prefix(1);
    mpz_class n{std::string(ns)};
    mpz_class d{std::string(ds)};
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Scalar(mpq_class(n, d));
}

bool Scalar::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Scalar::sign() const
{
    if (big_)
        return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
}

mpq_class Scalar::to_mpq() const
{
    if (big_)
        return *big_;
    mpq_class q(mpz_from(num_), mpz_from(den_));
    return q;
}

mpz_class Scalar::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_from(num_); }
mpz_class Scalar::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_from(den_); }

long long Scalar::to_int64() const
{
    if (big_ || den_ != 1)
        throw std::overflow_error("Scalar " + str() + " is not a 64-bit integer");
    return num_;
}

double Scalar::to_double() const
{
    if (big_)
        return big_->get_d();
    return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Scalar::str() const
{
    if (big_) {
        if (big_->get_den() == 1)
            return big_->get_num().get_str();
        return big_->get_num().get_str() + "/" + big_->get_den().get_str();
    }
    if (den_ == 1)
        return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Scalar Scalar::operator-() const
{
    Scalar r;
    if (big_) {
        r.assign_canonical(-*big_);
        return r;
    }
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            i128 s = static_cast<i128>(num_) + o.num_;
            if (fits_small(s)) {
                num_ = static_cast<long long>(s);
                return *this;
            }
            assign_wide(s, 1);
            return *this;
        }
        assign_wide(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
                    static_cast<i128>(den_) * o.den_);
        return *this;
    }
    assign_canonical(to_mpq() + o.to_mpq());
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (!big_ && !o.big_) {
        if (den_ == 1 && o.den_ == 1) {
            i128 p = static_cast<i128>(num_) * o.num_;
            if (fits_small(p)) {
                num_ = static_cast<long long>(p);
                return *this;
            }
            assign_wide(p, 1);
            return *this;
        }
        assign_wide(static_cast<i128>(num_) * o.num_, static_cast<i128>(den_) * o.den_);
        return *this;
    }
    assign_canonical(to_mpq() * o.to_mpq());
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (o.is_zero())
        throw std::domain_error("Scalar: division by zero");
    if (!big_ && !o.big_) {
        assign_wide(static_cast<i128>(num_) * o.den_, static_cast<i128>(den_) * o.num_);
        return *this;
    }
    assign_canonical(to_mpq() / o.to_mpq());
    return *this;
}

Scalar Scalar::inverse() const { return Scalar(1) / *this; }

bool operator==(const Scalar& a, const Scalar& b)
{
    if (!a.big_ && !b.big_)
        return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_)
        return *a.big_ == *b.big_;
    // Canonical form keeps every value that fits small out of GMP.
    return false;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b)
{
    if (!a.big_ && !b.big_) {
        i128 l = static_cast<i128>(a.num_) * b.den_;
        i128 r = static_cast<i128>(b.num_) * a.den_;
        return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
}

std::size_t Scalar::hash() const
{
    if (big_)
        return std::hash<std::string>{}(big_->get_str());
    std::size_t h = std::hash<long long>{}(num_);
    return h ^ (std::hash<long long>{}(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

} // namespace superloop
