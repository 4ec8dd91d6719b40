#include "padic/kernel.hpp"

#include <numeric>

namespace padic {

namespace {

std::uint64_t ipow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= base;
    return r;
}

}  // namespace

KernelMatrix kernel_matrix(const ValuationTable& table, unsigned max_e, std::uint64_t prefix_len) {
    if (prefix_len == 0) throw std::invalid_argument("prefix_len must be positive");
    const std::uint64_t p = table.p.value();
    const std::uint64_t top = ipow(p, max_e);
    const std::uint64_t needed = top * (prefix_len - 1) + top - 1;
    if (needed > table.N())
        throw std::invalid_argument("table too short for rank estimate: need N >= " +
                                    std::to_string(needed) + ", have " +
                                    std::to_string(table.N()));

    KernelMatrix m;
    m.rows.emplace_back(prefix_len, BigInt(1));
    for (unsigned e = 0; e <= max_e; ++e) {
        const std::uint64_t scale = ipow(p, e);
        for (std::uint64_t i = 0; i < scale; ++i) {
            std::vector<BigInt> row;
            row.reserve(prefix_len);
            bool finite = true;
            for (std::uint64_t n = 0; n < prefix_len && finite; ++n) {
                const PadicVal& v = table[scale * n + i];
                if (v.is_infinite())
                    finite = false;
                else
                    row.emplace_back(static_cast<long>(v.value()));
            }
            if (finite) {
                m.rows.push_back(std::move(row));
                m.labels.push_back({e, i});
            } else {
                m.dropped.push_back({e, i});
            }
        }
    }
    return m;
}

std::uint64_t bareiss_rank(std::vector<std::vector<BigInt>> rows, std::vector<std::size_t>* pivot_rows) {
    const std::size_t m = rows.size();
    if (m == 0) return 0;
    const std::size_t cols = rows.front().size();
    std::vector<std::size_t> origin(m);
    std::iota(origin.begin(), origin.end(), 0);

    BigInt prev = 1;
    BigInt t;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < m; ++col) {
        std::size_t pivot = rank;
        while (pivot < m && rows[pivot][col] == 0) ++pivot;
        if (pivot == m) continue;
        std::swap(rows[pivot], rows[rank]);
        std::swap(origin[pivot], origin[rank]);
        const auto& prow = rows[rank];
        for (std::size_t r = rank + 1; r < m; ++r) {
            auto& row = rows[r];
            for (std::size_t j = col + 1; j < cols; ++j) {
                // row[j] = (pivot * row[j] - row[col] * prow[j]) / prev
                mpz_mul(t.get_mpz_t(), prow[col].get_mpz_t(), row[j].get_mpz_t());
                mpz_submul(t.get_mpz_t(), row[col].get_mpz_t(), prow[j].get_mpz_t());
                mpz_divexact(row[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            row[col] = 0;
        }
        prev = prow[col];
        if (pivot_rows) pivot_rows->push_back(origin[rank]);
        ++rank;
    }
    return rank;
}

KernelRankEstimate estimate_kernel_rank(const ValuationTable& table, unsigned max_e,
                                        std::uint64_t prefix_len) {
    KernelMatrix m = kernel_matrix(table, max_e, prefix_len);
    KernelRankEstimate est;
    est.prefix_len = prefix_len;
    est.max_e = max_e;
    est.rows_examined = m.rows.size() - 1 + m.dropped.size();
    est.dropped = m.dropped;
    std::vector<std::size_t> pivots;
    est.rank = bareiss_rank(std::move(m.rows), &pivots);
    for (auto row : pivots) {
        if (row == 0)
            est.constant_in_basis = true;
        else
            est.basis_labels.push_back(m.labels[row - 1]);
    }
    return est;
}

}  // namespace padic
