#pragma once

// Exact integer/rational arithmetic and digit-level p-adic primitives.
//
// Big integers are GMP's mpz_class; ExactRational keeps an mpq_class in
// canonical form (reduced, positive denominator, zero is 0/1).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace padic {

using BigInt = mpz_class;

/// Deterministic primality test for 64-bit inputs (Miller-Rabin with the
/// first twelve prime bases, which is exact below 3.3e24).
bool is_prime(std::uint64_t n);

class Prime {
public:
    /// Throws std::invalid_argument if `value` is not prime.
    explicit Prime(std::uint64_t value);

    std::uint64_t value() const { return value_; }
    operator std::uint64_t() const { return value_; }

    friend bool operator==(Prime, Prime) = default;

private:
    std::uint64_t value_;
};

/// A p-adic valuation: a (possibly negative) integer, or +infinity for the
/// valuation of zero.
///
/// Infinite absorbs addition and compares greater than every finite value.
class PadicVal {
public:
    constexpr PadicVal() : value_(0) {}
    static constexpr PadicVal finite(std::int64_t v) { return PadicVal(v); }
    static constexpr PadicVal infinite() { return PadicVal(std::nullopt); }

    constexpr bool is_finite() const { return value_.has_value(); }
    constexpr bool is_infinite() const { return !value_.has_value(); }

    /// Throws std::logic_error on Infinite.
    std::int64_t value() const;

    friend constexpr PadicVal operator+(PadicVal a, PadicVal b) {
        if (a.is_infinite() || b.is_infinite()) return infinite();
        return finite(*a.value_ + *b.value_);
    }
    friend constexpr PadicVal operator+(PadicVal a, std::int64_t c) {
        return a + finite(c);
    }
    friend constexpr PadicVal operator-(PadicVal a, std::int64_t c) {
        return a + finite(-c);
    }

    friend constexpr bool operator==(PadicVal a, PadicVal b) = default;
    friend constexpr std::strong_ordering operator<=>(PadicVal a, PadicVal b) {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() <=> b.is_infinite();
        return *a.value_ <=> *b.value_;
    }

    /// Decimal integer or the literal `inf`.
    std::string to_string() const;
    /// Inverse of to_string; throws std::invalid_argument on bad input.
    static PadicVal parse(std::string_view text);

private:
    constexpr explicit PadicVal(std::optional<std::int64_t> v) : value_(v) {}
    std::optional<std::int64_t> value_;
};

/// Arbitrary-precision rational in lowest terms.
class ExactRational {
public:
    ExactRational() : q_(0) {}
    ExactRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
    explicit ExactRational(const BigInt& v) : q_(v) {}
    /// Throws std::domain_error on a zero denominator.
    ExactRational(const BigInt& num, const BigInt& den);
    explicit ExactRational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Accepts `a`, `-a`, `a/b`; throws std::invalid_argument otherwise.
    static ExactRational parse(std::string_view text);

    const mpz_class& numerator() const { return q_.get_num(); }
    const mpz_class& denominator() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    /// `num/den`, or just `num` when the denominator is 1.
    std::string to_string() const;

    friend ExactRational operator+(const ExactRational& a, const ExactRational& b) {
        return ExactRational(mpq_class(a.q_ + b.q_));
    }
    friend ExactRational operator-(const ExactRational& a, const ExactRational& b) {
        return ExactRational(mpq_class(a.q_ - b.q_));
    }
    friend ExactRational operator*(const ExactRational& a, const ExactRational& b) {
        return ExactRational(mpq_class(a.q_ * b.q_));
    }
    /// Throws std::domain_error on division by zero.
    friend ExactRational operator/(const ExactRational& a, const ExactRational& b);
    ExactRational operator-() const { return ExactRational(mpq_class(-q_)); }

    ExactRational pow(unsigned long e) const;

    friend bool operator==(const ExactRational& a, const ExactRational& b) {
        return a.q_ == b.q_;
    }

private:
    mpq_class q_;
};

PadicVal vp_int(Prime p, const BigInt& n);
PadicVal vp_rat(Prime p, const ExactRational& r);

/// Sum of the base-p digits of n; 0 for n = 0.
std::uint64_t digit_sum(Prime p, std::uint64_t n);

/// Legendre's floor-sum: sum_{i>=1} floor(n / p^i).
std::uint64_t factorial_valuation_floor(Prime p, std::uint64_t n);

/// (n - s_p(n)) / (p - 1).
std::uint64_t factorial_valuation_digits(Prime p, std::uint64_t n);

/// (s_p(k) + s_p(n-k) - s_p(n)) / (p - 1). Throws std::invalid_argument if k > n.
std::uint64_t binomial_valuation_digits(Prime p, std::uint64_t n, std::uint64_t k);

/// Number of carries when adding a and b in base p.
std::uint64_t kummer_carries(Prime p, std::uint64_t a, std::uint64_t b);

/// Exact C(n, k) (0 when k > n).
BigInt binomial(std::uint64_t n, std::uint64_t k);

}  // namespace padic
