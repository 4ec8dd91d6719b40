#pragma once

// Verification campaigns (predictor vs exact oracle), OEIS b-file checks
// and the CSV / JSON-lines writers shared by the command-line tool.

#include "padic/exact_arith.hpp"
#include "padic/kernel.hpp"
#include "padic/polyseq.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace padic {

/// Inclusive index range `a..b` (or a single index `a`).
struct IndexRange {
    std::uint64_t first = 0;
    std::uint64_t last = 0;

    /// Throws std::invalid_argument on malformed text or first > last.
    static IndexRange parse(std::string_view text);
    std::string to_string() const;
    std::uint64_t size() const { return last - first + 1; }
};

/// Raised when the caller's parameters fall outside what a check supports
/// (a theorem's hypothesis, a missing argument). The CLI maps it to exit 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ReportStatus { Pass, Fail, CounterexampleFound, Skipped };

std::string_view to_string(ReportStatus status);

struct Mismatch {
    std::uint64_t n = 0;
    std::string predicted;
    std::string actual;
    /// Full exact value, filled for conjecture counterexamples.
    std::string exact_value;
};

struct VerificationReport {
    std::string theorem_id;
    std::optional<std::uint64_t> p;
    std::optional<ExactRational> r;
    IndexRange range;
    std::uint64_t checked = 0;
    std::vector<Mismatch> mismatches;
    ReportStatus status = ReportStatus::Pass;
    std::string note;
};

/// Theorem ids accepted by run_verification.
const std::vector<std::string_view>& verification_ids();

struct VerifyRequest {
    std::string theorem_id;
    std::optional<std::uint64_t> p;
    std::optional<ExactRational> r;
    IndexRange range;
    /// How oracle tables are built. Direct evaluates every index with the
    /// defining sums; Incremental uses the exact recurrences.
    TableStrategy oracle = TableStrategy::Direct;
};

/// Compares the predictor for `theorem_id` with exact evaluation at every
/// index in the range. Throws UsageError for unknown ids or violated
/// hypotheses. Conjecture ids report CounterexampleFound instead of Fail.
VerificationReport run_verification(const VerifyRequest& request);

/// Closed-form prediction for `id` at n (ids as in verification_ids(),
/// plus thm3-oneline, thm4-digits, thm6 for the digit-recursive form).
PadicVal predict(std::string_view id, const std::optional<std::uint64_t>& p,
                 const std::optional<ExactRational>& r, std::uint64_t n);

// ---------------------------------------------------------------------------
// OEIS b-files

struct BFileRecord {
    std::int64_t index = 0;
    BigInt value;
};

/// Malformed b-file content; carries the 1-based line number.
class BFileError : public std::runtime_error {
public:
    BFileError(std::uint64_t line, const std::string& what)
        : std::runtime_error("b-file line " + std::to_string(line) + ": " + what), line_(line) {}
    std::uint64_t line() const { return line_; }

private:
    std::uint64_t line_;
};

/// Lines `index value`; blank lines and `#` comments skipped; indices must
/// strictly increase.
std::vector<BFileRecord> parse_bfile(std::istream& in);

struct OeisCheckRequest {
    SequenceSpec spec;
    /// When set, b-file values are compared with vp of the sequence.
    std::optional<std::uint64_t> p;
    std::filesystem::path bfile;
    /// b-file index k is compared with sequence index k + shift.
    std::int64_t shift = 0;
};

struct OeisPreset {
    std::string_view a_number;
    SequenceSpec spec;
    std::optional<std::uint64_t> p;
    std::int64_t shift;
};

/// Known A-numbers: A001850, A006134, A082490, A358360.
std::optional<OeisPreset> oeis_preset(std::string_view a_number);

/// Missing or empty file yields Skipped; parse errors throw BFileError.
VerificationReport oeis_check(const OeisCheckRequest& request);

// ---------------------------------------------------------------------------
// Output

enum class OutputFormat { Csv, Jsonl };

OutputFormat parse_format(std::string_view text);

/// Streams `n,<column>` rows (CSV with header) or `{"n":..,"<column>":..}`.
class ValueWriter {
public:
    ValueWriter(std::ostream& out, OutputFormat format, std::string column);
    void row(std::uint64_t n, const std::string& value);

private:
    std::ostream& out_;
    OutputFormat format_;
    std::string column_;
};

/// Mismatch records followed by one summary record. An empty timestamp
/// leaves the field out (JSON) or blank (CSV).
void write_report(std::ostream& out, OutputFormat format, const VerificationReport& report,
                  const std::string& timestamp);

void write_relations(std::ostream& out, OutputFormat format, const ValuationTable& table,
                     const std::vector<MinedRelation>& relations, const std::string& name,
                     const std::string& timestamp);

void write_rank(std::ostream& out, OutputFormat format, const ValuationTable& table,
                const KernelRankEstimate& estimate, const std::string& timestamp);

/// Current UTC time as ISO 8601.
std::string utc_timestamp();

}  // namespace padic
