#pragma once

// Closed-form p-adic valuation predictors for Legendre-family values.
//
// Nothing here evaluates a polynomial: every predictor works from base-p
// digit sums and small-integer valuations, so comparing a prediction with
// vp_rat of an exact evaluation is a check between independent routes.

#include "padic/exact_arith.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace padic {

/// A prime p and, for predictors that need it, an evaluation point r with
/// vp(r) >= 1. Construction throws std::invalid_argument when r violates
/// that hypothesis.
class PredictionContext {
public:
    explicit PredictionContext(Prime p);
    PredictionContext(Prime p, ExactRational r);

    Prime p() const { return p_; }
    const std::optional<ExactRational>& r() const { return r_; }
    /// vp(r); throws std::logic_error when no r was given.
    PadicVal vp_r() const;

private:
    Prime p_;
    std::optional<ExactRational> r_;
    PadicVal vp_r_;
};

/// Four-case formula for vp(P_n(r)), vp(r) >= 1.
PadicVal predict_vp_legendre_general(const PredictionContext& ctx, std::uint64_t n);

/// vp(C(n, n/2) / 2^n) + (n mod 2) vp(r (n+1)).
PadicVal predict_vp_legendre_general_oneline(const PredictionContext& ctx, std::uint64_t n);

/// vp(P_n(p)) for p >= 3 by parity cases. Throws std::invalid_argument for p = 2.
PadicVal predict_vp_legendre_at_p_cases(Prime p, std::uint64_t n);

/// (2 s_p(n/2) - s_p(n) + (n mod 2) p) / (p - 1), p >= 3.
PadicVal predict_vp_legendre_at_p_digits(Prime p, std::uint64_t n);

/// vp_2(P_n(2)) = (n mod 2) - v_2(n!).
PadicVal predict_vp_legendre_at_2(std::uint64_t n);

/// f(pn + a) from f(n), where f(n) = vp(P_n(p)), p >= 3.
/// Throws std::invalid_argument if a >= p, f_n is infinite, or p = 2.
PadicVal recurrence_step(Prime p, PadicVal f_n, std::uint64_t n, std::uint64_t a);

/// Folds recurrence_step over the base-p digits of n, most significant
/// first, starting from f(0) = 0.
PadicVal predict_by_recurrence(Prime p, std::uint64_t n);

/// 3-adic valuation of the central Delannoy number a(i) by the two-branch
/// recurrence in i mod 3. Conjectural form (since proved).
PadicVal predict_b_conjecture1(std::uint64_t i);

/// v_3(d(n)) = v_3(C(2n,n)) + 2 v_3(n); throws std::invalid_argument for n = 0.
PadicVal predict_strauss_shallit(std::uint64_t n);

/// v_3(sum_k C(n,k)^3 2^k). Conjectural.
PadicVal predict_cube_sum_v3(std::uint64_t n);

/// vp(Q_n(r)), vp(r) >= 1.
PadicVal predict_vp_Q(const PredictionContext& ctx, std::uint64_t n);

/// vp(M_n(p)) = vp(P_n(p)) for p >= 3. Throws std::invalid_argument for p = 2.
PadicVal predict_vp_cigler(Prime p, std::uint64_t n);

/// Metadata on whether a predictor encodes a proved statement or an open one.
enum class Standing { Proved, Conjectural };

struct PredictorInfo {
    std::string_view id;
    std::string_view statement;
    Standing standing;
};

/// Looks up a predictor by its verification id (thm3, conj2, ...).
std::optional<PredictorInfo> predictor_info(std::string_view id);

}  // namespace padic
