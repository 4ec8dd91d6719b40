#pragma once

// Valuation tables, affine p-kernel relation mining and kernel rank
// estimation.

#include "padic/exact_arith.hpp"
#include "padic/polyseq.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace padic {

/// values[n] = vp(eval_sequence(spec, n + offset)) for n = 0..N.
///
/// offset is 0 unless the caller re-indexes the sequence (for example to
/// match an OEIS offset).
struct ValuationTable {
    SequenceSpec spec;
    Prime p;
    std::uint64_t offset = 0;
    std::vector<PadicVal> values;

    std::uint64_t N() const { return values.empty() ? 0 : values.size() - 1; }
    const PadicVal& operator[](std::uint64_t n) const { return values[n]; }

    friend bool operator==(const ValuationTable&, const ValuationTable&) = default;
};

/// Thrown when a table build would exceed its bit-size budget.
class ResourceBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TableStrategy {
    /// Evaluate every index independently with eval_sequence.
    Direct,
    /// Per-chunk seed plus an exact three-term (or running-sum) recurrence.
    /// Falls back to Direct for sequences without one.
    Incremental,
};

struct BuildOptions {
    TableStrategy strategy = TableStrategy::Incremental;
    /// Cap on the summed bit sizes of all evaluated values; 0 = unlimited.
    std::uint64_t max_total_bits = 0;
    /// Index offset; see ValuationTable.
    std::uint64_t offset = 0;
    /// Indices per work unit in the parallel kernels; 0 picks a default.
    std::uint64_t chunk = 0;
    /// Optional memo consulted by the Direct strategy.
    EvalCache* cache = nullptr;
};

/// OpenMP-parallel table builder. Output is identical for every thread count.
ValuationTable build_table(const SequenceSpec& spec, Prime p, std::uint64_t N,
                           const BuildOptions& options = {});

/// Single-threaded reference: one eval_sequence call per index.
ValuationTable build_table_serial(const SequenceSpec& spec, Prime p, std::uint64_t N,
                                  std::uint64_t offset = 0);

/// Runs body(n) for n in [first, last] across OpenMP threads with dynamic
/// scheduling. The first exception thrown by any body is rethrown.
void parallel_for_index(std::uint64_t first, std::uint64_t last,
                        const std::function<void(std::uint64_t)>& body);

// ---------------------------------------------------------------------------
// Relations

/// Claim: V(p^e n + i) = V(p^rhs_e n + rhs_i) + c for all n >= 0.
struct RelationCandidate {
    unsigned e = 0;
    std::uint64_t i = 0;
    unsigned rhs_e = 0;
    std::uint64_t rhs_i = 0;
    std::int64_t c = 0;

    friend bool operator==(const RelationCandidate&, const RelationCandidate&) = default;
};

struct MinedRelation {
    RelationCandidate candidate;
    std::uint64_t support = 0;     // indices checked with both sides finite
    std::uint64_t violations = 0;
    std::uint64_t skipped = 0;     // indices with an infinite side

    friend bool operator==(const MinedRelation&, const MinedRelation&) = default;
};

struct MineOptions {
    /// |c| bound; 0 selects the default 2p.
    std::int64_t max_offset = 0;
    std::uint64_t min_support = 50;
    /// Skip left-hand sides whose kernel ancestor already has an accepted
    /// relation to a shallower level.
    bool prune_resolved_subtrees = false;
};

/// Checks cand on every index n with p^e n + i and p^rhs_e n + rhs_i in the table.
MinedRelation verify_relation(const ValuationTable& table, const RelationCandidate& cand);

/// Every accepted relation with e <= max_e, one per left-hand side (e, i),
/// chosen by smallest rhs_e, then rhs_i, then |c|, then c >= 0. Sorted by
/// (e, i). Throws std::invalid_argument if the table is too short for
/// min_support indices at level max_e.
std::vector<MinedRelation> mine_relations(const ValuationTable& table, unsigned max_e,
                                          const MineOptions& options = {});

/// `A(9n+4) = A(3n+1) + 1` style rendering.
std::string format_relation(const RelationCandidate& cand, std::uint64_t p,
                            const std::string& name = "V");

// ---------------------------------------------------------------------------
// Rank

struct KernelIndex {
    unsigned e = 0;
    std::uint64_t i = 0;
    friend bool operator==(const KernelIndex&, const KernelIndex&) = default;
};

struct KernelRankEstimate {
    std::uint64_t prefix_len = 0;
    unsigned max_e = 0;
    /// Rank of the span of the kernel prefixes together with the constant
    /// sequence 1.
    std::uint64_t rank = 0;
    /// Kernel subsequences that entered the basis, in pivot order. The
    /// constant row is reported via constant_in_basis.
    std::vector<KernelIndex> basis_labels;
    bool constant_in_basis = false;
    /// Subsequences excluded because their prefix contains Infinite.
    std::vector<KernelIndex> dropped;
    std::uint64_t rows_examined = 0;
};

/// Integer matrix rows used by estimate_kernel_rank: the constant row first,
/// then (e, i) in order. Infinite-containing rows go to `dropped`.
struct KernelMatrix {
    std::vector<std::vector<BigInt>> rows;
    std::vector<KernelIndex> labels;  // labels[k] for rows[k + 1]
    std::vector<KernelIndex> dropped;
};

KernelMatrix kernel_matrix(const ValuationTable& table, unsigned max_e, std::uint64_t prefix_len);

/// Fraction-free (Bareiss) rank of an integer matrix; the indices of the
/// rows chosen as pivots are appended to pivot_rows when given.
std::uint64_t bareiss_rank(std::vector<std::vector<BigInt>> rows,
                           std::vector<std::size_t>* pivot_rows = nullptr);

/// Throws std::invalid_argument if p^max_e (prefix_len - 1) + p^max_e - 1 > N.
KernelRankEstimate estimate_kernel_rank(const ValuationTable& table, unsigned max_e,
                                        std::uint64_t prefix_len);

// ---------------------------------------------------------------------------
// Persistence: `# spec=<spec> p=<p> N=<N>` then `n <value>` per line.
// A nonzero offset is written as an extra ` offset=<k>` header field.

void write_table(std::ostream& out, const ValuationTable& table);
/// Throws std::runtime_error with a line number on malformed input.
ValuationTable read_table(std::istream& in);

}  // namespace padic
