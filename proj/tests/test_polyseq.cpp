#include "oracles.hpp"
#include "padic/polyseq.hpp"

#include <gtest/gtest.h>

#include <thread>

using namespace padic;

namespace {

ExactRational Q(long num, long den = 1) { return ExactRational(BigInt(num), BigInt(den)); }

ExactRational wrap(const mpq_class& q) { return ExactRational(q); }

}  // namespace

TEST(Legendre, BinomialFormExamples) {
    EXPECT_EQ(legendre_eval_binomial(0, Q(17, 3)), Q(1));
    EXPECT_EQ(legendre_eval_binomial(2, Q(3)), Q(13));
    EXPECT_EQ(legendre_eval_binomial(3, Q(3)), Q(63));
}

TEST(Legendre, RodriguesFormExamples) {
    EXPECT_EQ(legendre_eval_rodrigues(1, Q(-4, 7)), Q(-4, 7));
    EXPECT_EQ(legendre_eval_rodrigues(2, Q(2)), Q(11, 2));
    EXPECT_EQ(legendre_eval_rodrigues(3, Q(9)), Q(1809));
}

TEST(Legendre, SquareFormExamples) {
    for (std::uint64_t n : {0, 1, 5, 12}) EXPECT_EQ(legendre_eval_square_form(n, Q(1)), Q(1));
    EXPECT_EQ(legendre_eval_square_form(2, Q(3)), Q(13));
    EXPECT_EQ(legendre_eval_square_form(1, Q(-1)), Q(-1));
}

TEST(Legendre, AllFormsMatchBonnetRecurrence) {
    for (const auto& x : oracle::rational_test_set()) {
        const auto ref = oracle::legendre_values(60, x);
        for (std::uint64_t n = 0; n <= 60; ++n) {
            const auto want = wrap(ref[n]);
            ASSERT_EQ(legendre_eval_binomial(n, wrap(x)), want) << n << " at " << x.get_str();
            ASSERT_EQ(legendre_eval_rodrigues(n, wrap(x)), want) << n << " at " << x.get_str();
            ASSERT_EQ(legendre_eval_square_form(n, wrap(x)), want) << n << " at " << x.get_str();
        }
    }
}

TEST(Legendre, RandomRationalPoints) {
    auto& gen = oracle::rng();
    std::uniform_int_distribution<long> num(-50, 50), den(1, 40);
    std::uniform_int_distribution<std::uint64_t> deg(0, 90);
    for (int t = 0; t < 150; ++t) {
        mpq_class x(num(gen), den(gen));
        x.canonicalize();
        const auto n = deg(gen);
        const auto want = wrap(oracle::legendre_values(n, x)[n]);
        ASSERT_EQ(legendre_eval_rodrigues(n, wrap(x)), want);
        ASSERT_EQ(legendre_eval_binomial(n, wrap(x)), want);
        ASSERT_EQ(legendre_eval_square_form(n, wrap(x)), want);
    }
}

TEST(QPolynomial, Examples) {
    for (long r : {-3, 0, 5}) {
        EXPECT_EQ(q_eval(0, Q(r)), Q(1));
        EXPECT_EQ(q_eval(1, Q(r)), Q(2 * r));
    }
    EXPECT_EQ(q_eval(1, Q(7, 3)), Q(14, 3));
    EXPECT_EQ(q_eval(2, Q(3)), Q(52));
}

TEST(QPolynomial, IsScaledLegendre) {
    for (const auto& x : oracle::rational_test_set()) {
        const auto ref = oracle::legendre_values(40, x);
        for (std::uint64_t n = 0; n <= 40; ++n) {
            const mpq_class scaled = ref[n] * mpq_class(mpz_class(1) << n);
            ASSERT_EQ(q_eval(n, wrap(x)), wrap(scaled)) << n;
        }
    }
}

TEST(QPolynomial, NumeratorClearsDenominator) {
    // Q_n(a/b) b^n is an integer.
    for (const auto& x : oracle::rational_test_set()) {
        for (std::uint64_t n = 0; n <= 30; ++n) {
            const mpz_class bn = [&] {
                mpz_class b;
                mpz_pow_ui(b.get_mpz_t(), x.get_den().get_mpz_t(), n);
                return b;
            }();
            ASSERT_EQ(ExactRational(q_numerator(n, wrap(x))), q_eval(n, wrap(x)) * ExactRational(bn));
        }
    }
}

TEST(Cigler, Examples) {
    for (std::uint64_t n : {0, 3, 9}) EXPECT_EQ(cigler_eval(n, Q(1)), Q(1));
    EXPECT_EQ(cigler_eval(1, Q(3)), Q(3));
    EXPECT_EQ(cigler_eval(2, Q(3)), Q(13));
}

// M_n(x) = sum_k C(n,k)^2 (x-1)^k term by term, and the substitution
// M_n(x) = (2-x)^n P_n(x / (2-x)) for x != 2.
TEST(Cigler, MatchesDefinitionAndSubstitution) {
    for (const auto& x : oracle::rational_test_set()) {
        for (std::uint64_t n = 0; n <= 40; ++n) {
            mpq_class sum = 0, power = 1;
            const mpq_class step = x - 1;
            for (std::uint64_t k = 0; k <= n; ++k) {
                const mpz_class c = oracle::choose(n, k);
                sum += mpq_class(c * c) * power;
                power *= step;
            }
            ASSERT_EQ(cigler_eval(n, wrap(x)), wrap(sum)) << n << " at " << x.get_str();
            if (x == 2) continue;
            const mpq_class y = x / (2 - x);
            mpq_class scale = 1;
            for (std::uint64_t k = 0; k < n; ++k) scale *= 2 - x;
            ASSERT_EQ(cigler_eval(n, wrap(x)), wrap(scale * oracle::legendre_values(n, y)[n]));
        }
    }
}

TEST(Delannoy, Examples) {
    EXPECT_EQ(central_delannoy(0), 1);
    EXPECT_EQ(central_delannoy(2), 13);
    EXPECT_EQ(central_delannoy(4), 321);
}

TEST(Delannoy, MatchesDoubleSumAndLegendreAtThree) {
    const auto P3 = oracle::legendre_values(150, 3);
    for (std::uint64_t n = 0; n <= 150; ++n) {
        ASSERT_EQ(central_delannoy(n), oracle::delannoy(n));
        ASSERT_EQ(mpq_class(central_delannoy(n)), P3[n]);
    }
}

TEST(PartialSum, Examples) {
    EXPECT_EQ(partial_sum_central_binomial(0), 0);
    EXPECT_EQ(partial_sum_central_binomial(2), 3);
    EXPECT_EQ(partial_sum_central_binomial(3), 9);
}

TEST(PartialSum, IncrementIsCentralBinomial) {
    for (std::uint64_t n = 0; n <= 300; ++n) {
        ASSERT_EQ(partial_sum_central_binomial(n + 1) - partial_sum_central_binomial(n),
                  oracle::choose(2 * n, n));
        if (n <= 80) ASSERT_EQ(partial_sum_central_binomial(n), oracle::dsum(n));
    }
}

TEST(CubeSum, Examples) {
    EXPECT_EQ(cube_sum_2k(0), 1);
    EXPECT_EQ(cube_sum_2k(2), 21);
    EXPECT_EQ(cube_sum_2k(5), 14283);
    for (std::uint64_t n = 0; n <= 80; ++n) ASSERT_EQ(cube_sum_2k(n), oracle::cube_sum(n));
}

TEST(Sequences, DispatchExamples) {
    EXPECT_EQ(eval_sequence({seq::CentralDelannoy{}}, 2), Q(13));
    EXPECT_EQ(eval_sequence({seq::LegendreAt{Q(3)}}, 2), Q(13));
    EXPECT_EQ(eval_sequence({seq::CubeSum2k{}}, 0), Q(1));
    EXPECT_EQ(eval_sequence({seq::QAt{Q(1, 2)}}, 1), Q(1));
    EXPECT_EQ(eval_sequence({seq::CiglerAt{Q(3)}}, 2), Q(13));
    EXPECT_EQ(eval_sequence({seq::PartialSumCentralBinomial{}}, 3), Q(9));
}

TEST(Sequences, CanonicalNamesRoundTrip) {
    const std::vector<SequenceSpec> specs{
        {seq::LegendreAt{Q(3)}},          {seq::LegendreAt{Q(-5, 7)}},
        {seq::QAt{Q(1, 2)}},              {seq::CiglerAt{Q(9)}},
        {seq::CentralDelannoy{}},         {seq::PartialSumCentralBinomial{}},
        {seq::CubeSum2k{}},
    };
    for (const auto& s : specs) EXPECT_EQ(SequenceSpec::parse(s.canonical()), s) << s.canonical();
    EXPECT_EQ(SequenceSpec{seq::LegendreAt{Q(3)}}.canonical(), "legendre(r=3)");
    EXPECT_EQ(SequenceSpec{seq::QAt{Q(1, 2)}}.canonical(), "q(r=1/2)");
    EXPECT_THROW(SequenceSpec::parse("legendre"), std::invalid_argument);
    EXPECT_THROW(SequenceSpec::from_name("legendre", std::nullopt), std::invalid_argument);
    EXPECT_THROW(SequenceSpec::from_name("fibonacci", std::nullopt), std::invalid_argument);
}

TEST(EvalCache, HitsAndConcurrentUse) {
    EvalCache cache(64);
    const SequenceSpec spec{seq::CentralDelannoy{}};
    EXPECT_EQ(cache.get_or_eval(spec, 10), ExactRational(central_delannoy(10)));
    EXPECT_EQ(cache.get_or_eval(spec, 10), ExactRational(central_delannoy(10)));
    EXPECT_EQ(cache.hits(), 1u);

    std::vector<std::thread> workers;
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&] {
            for (std::uint64_t n = 0; n < 200; ++n)
                ASSERT_EQ(cache.get_or_eval(spec, n % 50), ExactRational(central_delannoy(n % 50)));
        });
    for (auto& w : workers) w.join();
    EXPECT_LE(cache.size(), cache.max_entries());
}
