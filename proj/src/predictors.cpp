#include "padic/predictors.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace padic {

namespace {

const Prime kTwo{2};
const Prime kThree{3};

PadicVal fin(std::uint64_t v) { return PadicVal::finite(static_cast<std::int64_t>(v)); }

PadicVal vp_small(Prime p, std::uint64_t n) {
    if (n == 0) return PadicVal::infinite();
    std::int64_t v = 0;
    for (; n % p.value() == 0; n /= p.value()) ++v;
    return PadicVal::finite(v);
}

void require_odd_prime(Prime p, const char* who) {
    if (p.value() == 2)
        throw std::invalid_argument(std::string(who) + " requires p >= 3");
}

// vp(C(2m, m))
PadicVal central_binomial_vp(Prime p, std::uint64_t m) {
    return fin(binomial_valuation_digits(p, 2 * m, m));
}

}  // namespace

PredictionContext::PredictionContext(Prime p) : p_(p), vp_r_(PadicVal::infinite()) {}

PredictionContext::PredictionContext(Prime p, ExactRational r)
    : p_(p), r_(std::move(r)), vp_r_(vp_rat(p, *r_)) {
    if (vp_r_ < PadicVal::finite(1))
        throw std::invalid_argument("hypothesis vp(r) >= 1 violated: v_" +
                                    std::to_string(p.value()) + "(" + r_->to_string() +
                                    ") = " + vp_r_.to_string());
}

PadicVal PredictionContext::vp_r() const {
    if (!r_) throw std::logic_error("prediction context has no r");
    return vp_r_;
}

PadicVal predict_vp_legendre_general(const PredictionContext& ctx, std::uint64_t n) {
    const Prime p = ctx.p();
    const auto vr = ctx.vp_r();
    const auto nn = static_cast<std::int64_t>(n);
    if (n % 2 == 0) {
        auto base = fin(binomial_valuation_digits(p, n, n / 2));
        return p.value() == 2 ? base - nn : base;
    }
    auto base = fin(binomial_valuation_digits(p, n - 1, (n - 1) / 2));
    if (p.value() == 2) return base + vr + (1 - nn);
    return base + vr + vp_small(p, n);
}

PadicVal predict_vp_legendre_general_oneline(const PredictionContext& ctx, std::uint64_t n) {
    const Prime p = ctx.p();
    auto v = fin(binomial_valuation_digits(p, n, n / 2));
    if (p.value() == 2) v = v - static_cast<std::int64_t>(n);
    if (n % 2 == 1) v = v + ctx.vp_r() + vp_small(p, n + 1);
    return v;
}

PadicVal predict_vp_legendre_at_p_cases(Prime p, std::uint64_t n) {
    require_odd_prime(p, "predict_vp_legendre_at_p_cases");
    const std::uint64_t m = n / 2;
    if (n % 2 == 0) return central_binomial_vp(p, m);
    return central_binomial_vp(p, m) + vp_small(p, 2 * m + 1) + 1;
}

PadicVal predict_vp_legendre_at_p_digits(Prime p, std::uint64_t n) {
    require_odd_prime(p, "predict_vp_legendre_at_p_digits");
    // 2 s_p(n/2) >= s_p(n) always, so the numerator is nonnegative.
    const std::uint64_t num =
        2 * digit_sum(p, n / 2) - digit_sum(p, n) + (n % 2) * p.value();
    if (num % (p.value() - 1) != 0) throw std::logic_error("inexact digit formula");
    return fin(num / (p.value() - 1));
}

PadicVal predict_vp_legendre_at_2(std::uint64_t n) {
    return PadicVal::finite(static_cast<std::int64_t>(n % 2) -
                            static_cast<std::int64_t>(factorial_valuation_digits(kTwo, n)));
}

PadicVal recurrence_step(Prime p, PadicVal f_n, std::uint64_t n, std::uint64_t a) {
    require_odd_prime(p, "recurrence_step");
    if (a >= p.value()) throw std::invalid_argument("recurrence_step: digit a out of range");
    if (f_n.is_infinite()) throw std::invalid_argument("recurrence_step: f(n) must be finite");
    const auto parity = static_cast<std::int64_t>(n % 2);
    return a % 2 == 0 ? f_n + parity : f_n + (1 - parity);
}

PadicVal predict_by_recurrence(Prime p, std::uint64_t n) {
    require_odd_prime(p, "predict_by_recurrence");
    std::vector<std::uint64_t> digits;
    for (std::uint64_t m = n; m > 0; m /= p.value()) digits.push_back(m % p.value());
    PadicVal f = PadicVal::finite(0);
    std::uint64_t prefix = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        f = recurrence_step(p, f, prefix, *it);
        prefix = prefix * p.value() + *it;
    }
    return f;
}

PadicVal predict_b_conjecture1(std::uint64_t i) {
    std::int64_t total = 0;
    while (i != 0) {
        if (i % 3 == 1) {
            i /= 9;
            total += 1;
        } else {
            i /= 3;
            total += static_cast<std::int64_t>(i % 2);
        }
    }
    return PadicVal::finite(total);
}

PadicVal predict_strauss_shallit(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("predict_strauss_shallit: n must be >= 1");
    auto v3n = vp_small(kThree, n);
    return central_binomial_vp(kThree, n) + v3n + v3n;
}

PadicVal predict_cube_sum_v3(std::uint64_t n) {
    if (n % 6 == 5) return fin(digit_sum(kThree, (n - 1) / 2) + 1);
    return fin(digit_sum(kThree, (n + 1) / 2));
}

PadicVal predict_vp_Q(const PredictionContext& ctx, std::uint64_t n) {
    const Prime p = ctx.p();
    const auto vr = ctx.vp_r();
    const std::uint64_t m = n / 2;
    if (n % 2 == 0) return central_binomial_vp(p, m);
    if (p.value() == 2) return central_binomial_vp(p, m) + vr + 1;
    return central_binomial_vp(p, m) + vr + vp_small(p, 2 * m + 1);
}

PadicVal predict_vp_cigler(Prime p, std::uint64_t n) {
    require_odd_prime(p, "predict_vp_cigler");
    return predict_vp_legendre_at_p_digits(p, n);
}

std::optional<PredictorInfo> predictor_info(std::string_view id) {
    static constexpr std::array<PredictorInfo, 11> table{{
        {"thm3", "vp(P_n(r)) for vp(r) >= 1", Standing::Proved},
        {"thm4", "vp(P_n(p)) for p >= 3", Standing::Proved},
        {"thm5", "v_2(P_n(2)) = (n mod 2) - v_2(n!)", Standing::Proved},
        {"thm6", "f(pn+a) from f(n) by parity of n and a", Standing::Proved},
        {"thm7", "vp(M_n(p)) = vp(P_n(p)) for p >= 3", Standing::Proved},
        {"conj1", "v_3(a(i)) by recurrence in i mod 3", Standing::Conjectural},
        {"conj2", "v_3(sum C(n,k)^3 2^k) by digit sums", Standing::Conjectural},
        {"strauss", "v_3(d(n)) = v_3(C(2n,n)) + 2 v_3(n)", Standing::Proved},
        {"lemma6", "digit-sum form of vp(2m+1) + vp(C(2m,m))", Standing::Proved},
        {"lemma8", "vp(Q_2m(r)) = vp(C(2m,m))", Standing::Proved},
        {"lemma9", "vp(Q_2m+1(r))", Standing::Proved},
    }};
    for (const auto& info : table)
        if (info.id == id) return info;
    return std::nullopt;
}

}  // namespace padic
