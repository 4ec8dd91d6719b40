#pragma once

// Exact evaluation of Legendre-family polynomials and the integer
// sequences built from central binomial sums.
//
// Each Legendre formula is implemented on its own so the three can be
// cross-checked; none calls another.

#include "padic/exact_arith.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace padic {

namespace seq {
struct LegendreAt {
    ExactRational r;
    friend bool operator==(const LegendreAt&, const LegendreAt&) = default;
};
struct QAt {
    ExactRational r;
    friend bool operator==(const QAt&, const QAt&) = default;
};
struct CiglerAt {
    ExactRational r;
    friend bool operator==(const CiglerAt&, const CiglerAt&) = default;
};
struct CentralDelannoy {
    friend bool operator==(const CentralDelannoy&, const CentralDelannoy&) = default;
};
struct PartialSumCentralBinomial {
    friend bool operator==(const PartialSumCentralBinomial&, const PartialSumCentralBinomial&) = default;
};
struct CubeSum2k {
    friend bool operator==(const CubeSum2k&, const CubeSum2k&) = default;
};
}  // namespace seq

/// Selects the sequence a value or valuation table is built from.
struct SequenceSpec {
    using Variant = std::variant<seq::LegendreAt, seq::QAt, seq::CiglerAt, seq::CentralDelannoy,
                                 seq::PartialSumCentralBinomial, seq::CubeSum2k>;
    Variant kind;

    /// Canonical text form: `legendre(r=3)`, `q(r=1/2)`, `cigler(r=3)`,
    /// `delannoy`, `dsum`, `cubesum`.
    std::string canonical() const;
    /// Inverse of canonical(); throws std::invalid_argument.
    static SequenceSpec parse(std::string_view text);
    /// Builds from a short CLI name plus optional argument r. Names are
    /// legendre, q, cigler (all need r), delannoy, dsum, cubesum.
    static SequenceSpec from_name(std::string_view name, const std::optional<ExactRational>& r);

    friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;
};

/// P_n(x) = sum_k C(n,k) C(n+k,k) ((x-1)/2)^k.
ExactRational legendre_eval_binomial(std::uint64_t n, const ExactRational& x);

/// P_n(x) = 2^-n sum_{k<=n/2} (-1)^k C(n,k) C(2n-2k,n) x^(n-2k).
ExactRational legendre_eval_rodrigues(std::uint64_t n, const ExactRational& x);

/// P_n(x) = 2^-n sum_k C(n,k)^2 (x-1)^k (x+1)^(n-k).
ExactRational legendre_eval_square_form(std::uint64_t n, const ExactRational& x);

/// Q_n(x) = 2^n P_n(x), from its integer-coefficient alternating sum.
ExactRational q_eval(std::uint64_t n, const ExactRational& x);

/// Integer b^n Q_n(a/b) for x = a/b in lowest terms.
BigInt q_numerator(std::uint64_t n, const ExactRational& x);

/// The degree-n form b^n Q_n(a/b) for arbitrary integers a, b (b may be 0
/// or share factors with a). Depends on b only through b^2.
BigInt q_homogeneous(std::uint64_t n, const BigInt& a, const BigInt& b);

/// M_n(x) = sum_k C(n,k)^2 (x-1)^k.
ExactRational cigler_eval(std::uint64_t n, const ExactRational& x);

/// a(n) = sum_i C(n,i) C(n+i,i).
BigInt central_delannoy(std::uint64_t n);

/// d(n) = sum_{i<n} C(2i,i); d(0) = 0.
BigInt partial_sum_central_binomial(std::uint64_t n);

/// sum_k C(n,k)^3 2^k.
BigInt cube_sum_2k(std::uint64_t n);

/// Dispatches on spec. LegendreAt uses the alternating-sum formula.
ExactRational eval_sequence(const SequenceSpec& spec, std::uint64_t n);

/// Thread-safe memo of eval_sequence results, keyed by (spec, n). Stops
/// inserting once `max_entries` values are held.
class EvalCache {
public:
    explicit EvalCache(std::size_t max_entries) : max_entries_(max_entries) {}

    ExactRational get_or_eval(const SequenceSpec& spec, std::uint64_t n);

    std::size_t size() const;
    std::size_t hits() const;
    std::size_t max_entries() const { return max_entries_; }

private:
    std::size_t max_entries_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::string, std::uint64_t>, ExactRational> entries_;
    std::size_t hits_ = 0;
};

}  // namespace padic
