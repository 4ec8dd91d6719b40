#include "padic/polyseq.hpp"

#include <stdexcept>
#include <vector>

namespace padic {

namespace {

// sum_{k=0}^{d} c[k] u^k w^(d-k), by Horner with a running power of w.
BigInt homogeneous_sum(const std::vector<BigInt>& c, const BigInt& u, const BigInt& w) {
    if (c.empty()) return 0;
    const std::size_t d = c.size() - 1;
    const bool u_is_one = (u == 1);
    const bool w_is_one = (w == 1);
    BigInt acc = c[d];
    BigInt w_pow = 1;
    for (std::size_t k = d; k-- > 0;) {
        if (!u_is_one) acc *= u;
        if (w_is_one) {
            acc += c[k];
        } else {
            w_pow *= w;
            mpz_addmul(acc.get_mpz_t(), c[k].get_mpz_t(), w_pow.get_mpz_t());
        }
    }
    return acc;
}

BigInt pow_big(const BigInt& base, std::uint64_t e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

BigInt pow2(std::uint64_t e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

// C(n,k)^2 for k = 0..n.
std::vector<BigInt> squared_binomials(std::uint64_t n) {
    std::vector<BigInt> c(n + 1);
    c[0] = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
        c[k + 1] = c[k];
        mpz_mul_ui(c[k + 1].get_mpz_t(), c[k + 1].get_mpz_t(), (n - k) * (n - k));
        mpz_divexact_ui(c[k + 1].get_mpz_t(), c[k + 1].get_mpz_t(), (k + 1) * (k + 1));
    }
    return c;
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ExactRational legendre_eval_binomial(std::uint64_t n, const ExactRational& x) {
    // c_k = C(n,k) C(n+k,k), stepped along k with exact divisions.
    std::vector<BigInt> c(n + 1);
    c[0] = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
        auto* z = c[k + 1].get_mpz_t();
        mpz_mul_ui(z, c[k].get_mpz_t(), n - k);
        mpz_divexact_ui(z, z, k + 1);
        mpz_mul_ui(z, z, n + k + 1);
        mpz_divexact_ui(z, z, k + 1);
    }
    const ExactRational y = (x - 1) / ExactRational(2);
    BigInt num = homogeneous_sum(c, y.numerator(), y.denominator());
    return ExactRational(num, pow_big(y.denominator(), n));
}

BigInt q_homogeneous(std::uint64_t n, const BigInt& a, const BigInt& b) {
    const std::uint64_t half = n / 2;
    std::vector<BigInt> c(half + 1);
    c[0] = binomial(2 * n, n);
    for (std::uint64_t k = 0; k < half; ++k) {
        auto* z = c[k + 1].get_mpz_t();
        mpz_mul_ui(z, c[k].get_mpz_t(), n - k);
        mpz_divexact_ui(z, z, k + 1);
        mpz_mul_ui(z, z, (n - 2 * k) * (n - 2 * k - 1));
        mpz_divexact_ui(z, z, (2 * n - 2 * k) * (2 * n - 2 * k - 1));
        mpz_neg(z, z);
    }
    BigInt sum = homogeneous_sum(c, BigInt(b * b), BigInt(a * a));
    if (n % 2 == 1) sum *= a;
    return sum;
}

BigInt q_numerator(std::uint64_t n, const ExactRational& x) {
    return q_homogeneous(n, x.numerator(), x.denominator());
}

ExactRational q_eval(std::uint64_t n, const ExactRational& x) {
    return ExactRational(q_numerator(n, x), pow_big(x.denominator(), n));
}

ExactRational legendre_eval_rodrigues(std::uint64_t n, const ExactRational& x) {
    return ExactRational(q_numerator(n, x), BigInt(pow_big(x.denominator(), n) * pow2(n)));
}

ExactRational legendre_eval_square_form(std::uint64_t n, const ExactRational& x) {
    const BigInt& a = x.numerator();
    const BigInt& b = x.denominator();
    BigInt num = homogeneous_sum(squared_binomials(n), BigInt(a - b), BigInt(a + b));
    return ExactRational(num, BigInt(pow_big(b, n) * pow2(n)));
}

ExactRational cigler_eval(std::uint64_t n, const ExactRational& x) {
    const BigInt& a = x.numerator();
    const BigInt& b = x.denominator();
    BigInt num = homogeneous_sum(squared_binomials(n), BigInt(a - b), b);
    return ExactRational(num, pow_big(b, n));
}

BigInt central_delannoy(std::uint64_t n) {
    BigInt sum = 0;
    BigInt lower = 1;  // C(n, i)
    BigInt upper = 1;  // C(n+i, i)
    for (std::uint64_t i = 0;; ++i) {
        mpz_addmul(sum.get_mpz_t(), lower.get_mpz_t(), upper.get_mpz_t());
        if (i == n) break;
        mpz_mul_ui(lower.get_mpz_t(), lower.get_mpz_t(), n - i);
        mpz_divexact_ui(lower.get_mpz_t(), lower.get_mpz_t(), i + 1);
        mpz_mul_ui(upper.get_mpz_t(), upper.get_mpz_t(), n + i + 1);
        mpz_divexact_ui(upper.get_mpz_t(), upper.get_mpz_t(), i + 1);
    }
    return sum;
}

BigInt partial_sum_central_binomial(std::uint64_t n) {
    BigInt sum = 0;
    BigInt central = 1;  // C(2i, i)
    for (std::uint64_t i = 0; i < n; ++i) {
        sum += central;
        mpz_mul_ui(central.get_mpz_t(), central.get_mpz_t(), 2 * (2 * i + 1));
        mpz_divexact_ui(central.get_mpz_t(), central.get_mpz_t(), i + 1);
    }
    return sum;
}

BigInt cube_sum_2k(std::uint64_t n) {
    BigInt sum = 0;
    BigInt c = 1;  // C(n, k)
    BigInt term;
    for (std::uint64_t k = 0;; ++k) {
        mpz_pow_ui(term.get_mpz_t(), c.get_mpz_t(), 3);
        mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), k);
        sum += term;
        if (k == n) break;
        mpz_mul_ui(c.get_mpz_t(), c.get_mpz_t(), n - k);
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), k + 1);
    }
    return sum;
}

ExactRational eval_sequence(const SequenceSpec& spec, std::uint64_t n) {
    return std::visit(
        overloaded{
            [n](const seq::LegendreAt& s) { return legendre_eval_rodrigues(n, s.r); },
            [n](const seq::QAt& s) { return q_eval(n, s.r); },
            [n](const seq::CiglerAt& s) { return cigler_eval(n, s.r); },
            [n](const seq::CentralDelannoy&) { return ExactRational(central_delannoy(n)); },
            [n](const seq::PartialSumCentralBinomial&) {
                return ExactRational(partial_sum_central_binomial(n));
            },
            [n](const seq::CubeSum2k&) { return ExactRational(cube_sum_2k(n)); },
        },
        spec.kind);
}

std::string SequenceSpec::canonical() const {
    return std::visit(
        overloaded{
            [](const seq::LegendreAt& s) { return "legendre(r=" + s.r.to_string() + ")"; },
            [](const seq::QAt& s) { return "q(r=" + s.r.to_string() + ")"; },
            [](const seq::CiglerAt& s) { return "cigler(r=" + s.r.to_string() + ")"; },
            [](const seq::CentralDelannoy&) { return std::string("delannoy"); },
            [](const seq::PartialSumCentralBinomial&) { return std::string("dsum"); },
            [](const seq::CubeSum2k&) { return std::string("cubesum"); },
        },
        kind);
}

SequenceSpec SequenceSpec::from_name(std::string_view name, const std::optional<ExactRational>& r) {
    auto need_r = [&]() -> const ExactRational& {
        if (!r) throw std::invalid_argument("sequence '" + std::string(name) + "' needs --r");
        return *r;
    };
    if (name == "legendre") return {seq::LegendreAt{need_r()}};
    if (name == "q") return {seq::QAt{need_r()}};
    if (name == "cigler") return {seq::CiglerAt{need_r()}};
    if (r) throw std::invalid_argument("sequence '" + std::string(name) + "' takes no argument r");
    if (name == "delannoy") return {seq::CentralDelannoy{}};
    if (name == "dsum") return {seq::PartialSumCentralBinomial{}};
    if (name == "cubesum") return {seq::CubeSum2k{}};
    throw std::invalid_argument("unknown sequence '" + std::string(name) + "'");
}

SequenceSpec SequenceSpec::parse(std::string_view text) {
    auto open = text.find('(');
    if (open == std::string_view::npos) return from_name(text, std::nullopt);
    constexpr std::string_view prefix = "r=";
    auto inner = text.substr(open + 1);
    if (inner.size() < prefix.size() + 2 || inner.substr(0, prefix.size()) != prefix ||
        inner.back() != ')')
        throw std::invalid_argument("malformed sequence spec '" + std::string(text) + "'");
    inner = inner.substr(prefix.size(), inner.size() - prefix.size() - 1);
    return from_name(text.substr(0, open), ExactRational::parse(inner));
}

ExactRational EvalCache::get_or_eval(const SequenceSpec& spec, std::uint64_t n) {
    auto key = std::make_pair(spec.canonical(), n);
    {
        std::lock_guard lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) {
            ++hits_;
            return it->second;
        }
    }
    ExactRational value = eval_sequence(spec, n);
    std::lock_guard lock(mutex_);
    if (entries_.size() < max_entries_) entries_.try_emplace(std::move(key), value);
    return value;
}

std::size_t EvalCache::size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::size_t EvalCache::hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
}

}  // namespace padic
