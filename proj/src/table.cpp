#include "padic/kernel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>

namespace padic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::uint64_t bit_size(const BigInt& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

std::uint64_t bit_size(const ExactRational& r) {
    return bit_size(r.numerator()) + bit_size(r.denominator());
}

std::int64_t vp_small(Prime p, const BigInt& n) { return vp_int(p, n).value(); }

class BitBudget {
public:
    explicit BitBudget(std::uint64_t cap) : cap_(cap) {}
    void charge(std::uint64_t bits) {
        if (cap_ == 0) return;
        auto total = used_.fetch_add(bits, std::memory_order_relaxed) + bits;
        if (total > cap_)
            throw ResourceBudgetExceeded("table build exceeded bit budget of " +
                                         std::to_string(cap_) + " bits");
    }

private:
    std::uint64_t cap_;
    std::atomic<std::uint64_t> used_{0};
};

// Homogeneous three-term recurrence for R_m = b^m 2^m P_m(a/b):
//   (m+1) R_{m+1} = 2(2m+1) a R_m - 4 m b^2 R_{m-1}.
// The caller converts R_m to a valuation with a per-index shift.
struct LegendreForm {
    BigInt a;
    BigInt b;
    std::int64_t shift_per_index;  // subtract m * shift from vp(R_m)
};

void legendre_form_chunk(const LegendreForm& form, Prime p, std::uint64_t lo, std::uint64_t hi,
                         std::uint64_t offset, std::vector<PadicVal>& out, BitBudget& budget) {
    auto store = [&](std::uint64_t m, const BigInt& r) {
        budget.charge(bit_size(r));
        out[m - offset] = r == 0 ? PadicVal::infinite()
                                 : PadicVal::finite(vp_small(p, r) -
                                                    static_cast<std::int64_t>(m) * form.shift_per_index);
    };
    BigInt prev = q_homogeneous(lo, form.a, form.b);
    store(lo, prev);
    if (hi == lo) return;
    BigInt cur = q_homogeneous(lo + 1, form.a, form.b);
    store(lo + 1, cur);
    const BigInt b2 = form.b * form.b;
    BigInt next, tmp;
    for (std::uint64_t m = lo + 1; m < hi; ++m) {
        mpz_mul(next.get_mpz_t(), cur.get_mpz_t(), form.a.get_mpz_t());
        mpz_mul_ui(next.get_mpz_t(), next.get_mpz_t(), 2 * (2 * m + 1));
        mpz_mul(tmp.get_mpz_t(), prev.get_mpz_t(), b2.get_mpz_t());
        mpz_mul_ui(tmp.get_mpz_t(), tmp.get_mpz_t(), 4 * m);
        next -= tmp;
        mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), m + 1);
        prev.swap(cur);
        cur.swap(next);
        store(m + 1, cur);
    }
}

// m D_m = 3(2m-1) D_{m-1} - (m-1) D_{m-2}
void delannoy_chunk(Prime p, std::uint64_t lo, std::uint64_t hi, std::uint64_t offset,
                    std::vector<PadicVal>& out, BitBudget& budget) {
    auto store = [&](std::uint64_t m, const BigInt& v) {
        budget.charge(bit_size(v));
        out[m - offset] = vp_int(p, v);
    };
    BigInt prev = central_delannoy(lo);
    store(lo, prev);
    if (hi == lo) return;
    BigInt cur = central_delannoy(lo + 1);
    store(lo + 1, cur);
    BigInt next, tmp;
    for (std::uint64_t m = lo + 2; m <= hi; ++m) {
        mpz_mul_ui(next.get_mpz_t(), cur.get_mpz_t(), 3 * (2 * m - 1));
        mpz_mul_ui(tmp.get_mpz_t(), prev.get_mpz_t(), m - 1);
        next -= tmp;
        mpz_divexact_ui(next.get_mpz_t(), next.get_mpz_t(), m);
        prev.swap(cur);
        cur.swap(next);
        store(m, cur);
    }
}

void dsum_chunk(Prime p, std::uint64_t lo, std::uint64_t hi, std::uint64_t offset,
                std::vector<PadicVal>& out, BitBudget& budget) {
    BigInt sum = partial_sum_central_binomial(lo);
    BigInt central = binomial(2 * lo, lo);
    for (std::uint64_t m = lo;; ++m) {
        budget.charge(bit_size(sum));
        out[m - offset] = vp_int(p, sum);
        if (m == hi) break;
        sum += central;
        mpz_mul_ui(central.get_mpz_t(), central.get_mpz_t(), 2 * (2 * m + 1));
        mpz_divexact_ui(central.get_mpz_t(), central.get_mpz_t(), m + 1);
    }
}

std::int64_t vp_two(Prime p) { return p.value() == 2 ? 1 : 0; }

std::uint64_t default_chunk(std::uint64_t count) {
    const auto threads = static_cast<std::uint64_t>(std::max(1, omp_get_max_threads()));
    return std::clamp<std::uint64_t>(count / (threads * 8), 64, 4096);
}

}  // namespace

void parallel_for_index(std::uint64_t first, std::uint64_t last,
                        const std::function<void(std::uint64_t)>& body) {
    if (last < first) return;
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto lo = static_cast<std::int64_t>(first);
    const auto hi = static_cast<std::int64_t>(last);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t n = lo; n <= hi; ++n) {
        {
            std::lock_guard lock(error_mutex);
            if (error) continue;
        }
        try {
            body(static_cast<std::uint64_t>(n));
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

ValuationTable build_table_serial(const SequenceSpec& spec, Prime p, std::uint64_t N,
                                  std::uint64_t offset) {
    ValuationTable table{spec, p, offset, {}};
    table.values.reserve(N + 1);
    for (std::uint64_t n = 0; n <= N; ++n)
        table.values.push_back(vp_rat(p, eval_sequence(spec, n + offset)));
    return table;
}

ValuationTable build_table(const SequenceSpec& spec, Prime p, std::uint64_t N,
                           const BuildOptions& options) {
    const std::uint64_t offset = options.offset;
    ValuationTable table{spec, p, offset, std::vector<PadicVal>(N + 1)};
    BitBudget budget(options.max_total_bits);

    auto direct = [&] {
        parallel_for_index(0, N, [&](std::uint64_t n) {
            auto value = options.cache ? options.cache->get_or_eval(spec, n + offset)
                                       : eval_sequence(spec, n + offset);
            budget.charge(bit_size(value));
            table.values[n] = vp_rat(p, value);
        });
    };
    if (options.strategy == TableStrategy::Direct) {
        direct();
        return table;
    }

    // Chunk kernel over sequence indices [lo, hi]; empty when the sequence
    // has no recurrence.
    using ChunkFn = std::function<void(std::uint64_t, std::uint64_t)>;
    auto legendre = [&](LegendreForm form) -> ChunkFn {
        return [&, form = std::move(form)](std::uint64_t lo, std::uint64_t hi) {
            legendre_form_chunk(form, p, lo, hi, offset, table.values, budget);
        };
    };
    ChunkFn kernel = std::visit(
        overloaded{
            [&](const seq::LegendreAt& s) {
                return legendre({s.r.numerator(), s.r.denominator(),
                                 vp_two(p) + vp_small(p, s.r.denominator())});
            },
            [&](const seq::QAt& s) {
                return legendre({s.r.numerator(), s.r.denominator(),
                                 vp_small(p, s.r.denominator())});
            },
            [&](const seq::CiglerAt& s) {
                // M_n(a/b) = R_n(a, 2b - a) / (2^n b^n)
                const BigInt& a = s.r.numerator();
                const BigInt& b = s.r.denominator();
                return legendre({a, BigInt(2 * b - a), vp_two(p) + vp_small(p, b)});
            },
            [&](const seq::CentralDelannoy&) -> ChunkFn {
                return [&](std::uint64_t lo, std::uint64_t hi) {
                    delannoy_chunk(p, lo, hi, offset, table.values, budget);
                };
            },
            [&](const seq::PartialSumCentralBinomial&) -> ChunkFn {
                return [&](std::uint64_t lo, std::uint64_t hi) {
                    dsum_chunk(p, lo, hi, offset, table.values, budget);
                };
            },
            [&](const seq::CubeSum2k&) -> ChunkFn { return nullptr; },
        },
        spec.kind);

    if (!kernel) {
        direct();
        return table;
    }

    const std::uint64_t chunk = options.chunk ? options.chunk : default_chunk(N + 1);
    const std::uint64_t chunks = (N + chunk) / chunk;
    parallel_for_index(0, chunks - 1, [&](std::uint64_t k) {
        const std::uint64_t lo = k * chunk;
        const std::uint64_t hi = std::min(N, lo + chunk - 1);
        kernel(lo + offset, hi + offset);
    });
    return table;
}

}  // namespace padic
