#include "oracles.hpp"
#include "padic/exact_arith.hpp"

#include <gtest/gtest.h>

using namespace padic;

namespace {

const Prime P2(2), P3(3), P5(5), P7(7);

PadicVal from_oracle(std::optional<std::int64_t> v) {
    return v ? PadicVal::finite(*v) : PadicVal::infinite();
}

}  // namespace

TEST(Prime, RejectsNonPrimes) {
    for (std::uint64_t n : {0, 1, 4, 9, 91, 561}) EXPECT_THROW(Prime{n}, std::invalid_argument);
    EXPECT_EQ(Prime(2).value(), 2u);
    EXPECT_NO_THROW(Prime(1000000007));
}

TEST(Prime, MillerRabinMatchesTrialDivision) {
    auto trial = [](std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    };
    for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), trial(n)) << n;
    EXPECT_TRUE(is_prime(18446744073709551557ULL));
    EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(PadicVal, OrderingAndArithmetic) {
    const auto inf = PadicVal::infinite();
    EXPECT_LT(PadicVal::finite(5), inf);
    EXPECT_LT(PadicVal::finite(-3), PadicVal::finite(0));
    EXPECT_EQ(inf + PadicVal::finite(2), inf);
    EXPECT_EQ(PadicVal::finite(2) + 3, PadicVal::finite(5));
    EXPECT_THROW((void)inf.value(), std::logic_error);
    for (const auto& v : {inf, PadicVal::finite(-7), PadicVal::finite(0)})
        EXPECT_EQ(PadicVal::parse(v.to_string()), v);
    EXPECT_EQ(inf.to_string(), "inf");
}

TEST(ExactRational, CanonicalText) {
    EXPECT_EQ(ExactRational::parse("6/4").to_string(), "3/2");
    EXPECT_EQ(ExactRational::parse("-8/4").to_string(), "-2");
    EXPECT_EQ(ExactRational::parse("0/5").to_string(), "0");
    EXPECT_THROW(ExactRational::parse("1/0"), std::domain_error);
    EXPECT_THROW(ExactRational::parse("x"), std::invalid_argument);
    EXPECT_THROW(ExactRational(1) / ExactRational(0), std::domain_error);
    EXPECT_EQ(ExactRational::parse("2/3").pow(3), ExactRational(8, 27));
}

TEST(Valuation, IntegerExamples) {
    EXPECT_TRUE(vp_int(P3, 0).is_infinite());
    EXPECT_EQ(vp_int(P3, 63), PadicVal::finite(2));
    EXPECT_EQ(vp_int(P5, -7), PadicVal::finite(0));
}

TEST(Valuation, RationalExamples) {
    EXPECT_EQ(vp_rat(P2, ExactRational(11, 2)), PadicVal::finite(-1));
    EXPECT_EQ(vp_rat(P3, ExactRational(9, 5)), PadicVal::finite(2));
    EXPECT_TRUE(vp_rat(P7, ExactRational(0)).is_infinite());
}

TEST(Valuation, MatchesTrialDivisionOnRandomRationals) {
    auto& gen = oracle::rng();
    std::uniform_int_distribution<long> num(-2000000, 2000000), den(1, 2000000);
    for (int t = 0; t < 5000; ++t) {
        mpq_class q(num(gen), den(gen));
        q.canonicalize();
        for (Prime p : {P2, P3, P5, P7})
            ASSERT_EQ(vp_rat(p, ExactRational(q)), from_oracle(oracle::vp(p, q))) << q.get_str();
    }
}

TEST(DigitSum, Examples) {
    EXPECT_EQ(digit_sum(P3, 0), 0u);
    EXPECT_EQ(digit_sum(P3, 10), 2u);
    EXPECT_EQ(digit_sum(P2, 7), 3u);
}

TEST(DigitSum, ShiftByOneDigit) {
    auto& gen = oracle::rng();
    std::uniform_int_distribution<std::uint64_t> dist(0, 1ULL << 40);
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        const Prime q(p);
        for (int t = 0; t < 2000; ++t) {
            const auto n = dist(gen);
            for (std::uint64_t a = 0; a < p; ++a)
                ASSERT_EQ(digit_sum(q, n * p + a), digit_sum(q, n) + a) << p << ' ' << n;
        }
    }
}

TEST(FactorialValuation, Examples) {
    EXPECT_EQ(factorial_valuation_floor(P3, 10), 4u);
    EXPECT_EQ(factorial_valuation_floor(P5, 0), 0u);
    EXPECT_EQ(factorial_valuation_floor(P2, 7), 4u);
    EXPECT_EQ(factorial_valuation_digits(P3, 10), 4u);
    EXPECT_EQ(factorial_valuation_digits(P2, 7), 4u);
    EXPECT_EQ(factorial_valuation_digits(P7, 1), 0u);
}

TEST(FactorialValuation, FloorDigitsAndDirectAgree) {
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
        const Prime q(p);
        mpz_class f = 1;
        for (std::uint64_t n = 0; n <= 500; ++n) {
            if (n > 1) f *= n;
            const auto direct = *oracle::vp(p, f);
            ASSERT_EQ(static_cast<std::int64_t>(factorial_valuation_floor(q, n)), direct) << p << ' ' << n;
            ASSERT_EQ(static_cast<std::int64_t>(factorial_valuation_digits(q, n)), direct) << p << ' ' << n;
        }
    }
}

TEST(Binomial, Examples) {
    EXPECT_EQ(binomial_valuation_digits(P3, 10, 4), 1u);
    EXPECT_EQ(binomial_valuation_digits(P5, 17, 0), 0u);
    EXPECT_EQ(binomial_valuation_digits(P2, 8, 4), 1u);
    EXPECT_THROW(binomial_valuation_digits(P2, 3, 4), std::invalid_argument);
    EXPECT_EQ(kummer_carries(P3, 4, 6), 1u);
    EXPECT_EQ(kummer_carries(P7, 30, 0), 0u);
    EXPECT_EQ(kummer_carries(P2, 4, 4), 1u);
    EXPECT_EQ(binomial(10, 4), 210);
}

TEST(Binomial, KummerDigitsAndDirectAgree) {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        const Prime q(p);
        for (std::uint64_t n = 0; n <= 300; ++n)
            for (std::uint64_t k = 0; k <= n; ++k) {
                const auto direct = *oracle::vp(p, oracle::choose(n, k));
                ASSERT_EQ(static_cast<std::int64_t>(binomial_valuation_digits(q, n, k)), direct);
                ASSERT_EQ(static_cast<std::int64_t>(kummer_carries(q, k, n - k)), direct);
            }
    }
}

TEST(Binomial, MatchesPascal) {
    for (std::uint64_t n = 0; n <= 120; ++n)
        for (std::uint64_t k = 0; k <= n; ++k) ASSERT_EQ(binomial(n, k), oracle::choose(n, k));
}

// vp(2m+1) + vp(C(2m,m)) = vp(m+1) + vp(C(2m+1,m)) = (2 s(m) + 1 - s(2m+1)) / (p-1)
TEST(DigitIdentity, OddCentralBinomial) {
    for (std::uint64_t p : {2, 3, 5, 7}) {
        const Prime q(p);
        for (std::uint64_t m = 0; m <= 600; ++m) {
            const auto num = static_cast<std::int64_t>(2 * oracle::digit_sum(p, m) + 1) -
                             static_cast<std::int64_t>(oracle::digit_sum(p, 2 * m + 1));
            ASSERT_EQ(num % static_cast<std::int64_t>(p - 1), 0);
            const auto rhs = num / static_cast<std::int64_t>(p - 1);
            ASSERT_EQ(*oracle::vp(p, mpz_class(2 * m + 1)) + *oracle::vp(p, oracle::choose(2 * m, m)), rhs);
            ASSERT_EQ(*oracle::vp(p, mpz_class(m + 1)) + *oracle::vp(p, oracle::choose(2 * m + 1, m)), rhs);
            ASSERT_EQ(vp_int(q, 2 * m + 1) + vp_int(q, binomial(2 * m, m)), PadicVal::finite(rhs));
        }
    }
}

// vp((2j+1)!) <= 2j-1 and vp((2j)!) <= 2j-1 for j >= 1: the bound used on
// the odd and even coefficient ratios of Q_n.
TEST(DigitIdentity, FactorialBoundForCoefficientRatios) {
    for (std::uint64_t p : {2, 3, 5, 7, 11}) {
        const Prime q(p);
        for (std::uint64_t j = 1; j <= 1000; ++j) {
            ASSERT_LE(factorial_valuation_digits(q, 2 * j + 1), 2 * j - 1) << p << ' ' << j;
            ASSERT_LE(factorial_valuation_digits(q, 2 * j), 2 * j - 1) << p << ' ' << j;
        }
    }
}

// v2(C(2m,m)) = s_2(2m) = 2m - v2((2m)!)
TEST(DigitIdentity, CentralBinomialAtTwo) {
    for (std::uint64_t m = 0; m <= 1500; ++m) {
        const auto s = digit_sum(P2, 2 * m);
        ASSERT_EQ(vp_int(P2, binomial(2 * m, m)), PadicVal::finite(static_cast<std::int64_t>(s)));
        ASSERT_EQ(s, 2 * m - factorial_valuation_digits(P2, 2 * m));
    }
}
