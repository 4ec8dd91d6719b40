#include "padic/exact_arith.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace padic {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (e > 0) {
        if (e & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    return result;
}

bool is_valid_integer(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

BigInt parse_integer(std::string_view s) {
    if (!is_valid_integer(s))
        throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    if (s.front() == '+') s.remove_prefix(1);
    return BigInt(std::string(s), 10);
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto b : bases) {
        if (n % b == 0) return n == b;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : bases) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

Prime::Prime(std::uint64_t value) : value_(value) {
    if (!is_prime(value))
        throw std::invalid_argument(std::to_string(value) + " is not prime");
}

std::int64_t PadicVal::value() const {
    if (!value_) throw std::logic_error("value() called on an infinite valuation");
    return *value_;
}

std::string PadicVal::to_string() const {
    return value_ ? std::to_string(*value_) : std::string("inf");
}

PadicVal PadicVal::parse(std::string_view text) {
    if (text == "inf") return infinite();
    std::int64_t v = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty())
        throw std::invalid_argument("bad valuation literal: '" + std::string(text) + "'");
    return finite(v);
}

ExactRational::ExactRational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

ExactRational ExactRational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return ExactRational(parse_integer(text));
    auto den = text.substr(slash + 1);
    if (!den.empty() && den.front() == '-')
        throw std::invalid_argument("denominator must be unsigned: '" + std::string(text) + "'");
    return ExactRational(parse_integer(text.substr(0, slash)), parse_integer(den));
}

std::string ExactRational::to_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

ExactRational operator/(const ExactRational& a, const ExactRational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return ExactRational(mpq_class(a.q_ / b.q_));
}

ExactRational ExactRational::pow(unsigned long e) const {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), q_.get_num_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), q_.get_den_mpz_t(), e);
    mpq_class q;
    q.get_num() = std::move(num);
    q.get_den() = std::move(den);
    // Powers of a reduced fraction stay reduced.
    return ExactRational(std::move(q));
}

PadicVal vp_int(Prime p, const BigInt& n) {
    if (n == 0) return PadicVal::infinite();
    mpz_class rest;
    mpz_class prime(static_cast<unsigned long>(p.value()));
    auto count = mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t());
    return PadicVal::finite(static_cast<std::int64_t>(count));
}

PadicVal vp_rat(Prime p, const ExactRational& r) {
    if (r.is_zero()) return PadicVal::infinite();
    return PadicVal::finite(vp_int(p, r.numerator()).value() - vp_int(p, r.denominator()).value());
}

std::uint64_t digit_sum(Prime p, std::uint64_t n) {
    std::uint64_t s = 0;
    for (; n > 0; n /= p.value()) s += n % p.value();
    return s;
}

std::uint64_t factorial_valuation_floor(Prime p, std::uint64_t n) {
    std::uint64_t total = 0;
    for (std::uint64_t q = n / p.value(); q > 0; q /= p.value()) total += q;
    return total;
}

std::uint64_t factorial_valuation_digits(Prime p, std::uint64_t n) {
    std::uint64_t num = n - digit_sum(p, n);
    if (num % (p.value() - 1) != 0) throw std::logic_error("inexact digit-sum division");
    return num / (p.value() - 1);
}

std::uint64_t binomial_valuation_digits(Prime p, std::uint64_t n, std::uint64_t k) {
    if (k > n) throw std::invalid_argument("binomial_valuation_digits: k > n");
    std::uint64_t num = digit_sum(p, k) + digit_sum(p, n - k) - digit_sum(p, n);
    if (num % (p.value() - 1) != 0) throw std::logic_error("inexact digit-sum division");
    return num / (p.value() - 1);
}

std::uint64_t kummer_carries(Prime p, std::uint64_t a, std::uint64_t b) {
    const std::uint64_t base = p.value();
    std::uint64_t carries = 0;
    std::uint64_t carry = 0;
    while (a > 0 || b > 0 || carry > 0) {
        std::uint64_t column = a % base + b % base + carry;
        carry = column >= base ? 1 : 0;
        carries += carry;
        a /= base;
        b /= base;
    }
    return carries;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    BigInt result;
    if (k > n) return result;
    mpz_bin_uiui(result.get_mpz_t(), n, k);
    return result;
}

}  // namespace padic
