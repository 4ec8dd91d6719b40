// padic: exact evaluation, valuation prediction, verification and p-kernel
// mining for Legendre-family sequences.
//
// Exit codes: 0 pass/skipped, 1 mathematical mismatch, 2 usage or parse error.

#include "padic/exact_arith.hpp"
#include "padic/harness.hpp"
#include "padic/kernel.hpp"
#include "padic/polyseq.hpp"
#include "padic/predictors.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace padic;

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct GlobalOptions {
    std::string format = "csv";
    std::string out;
    bool no_timestamp = false;
    int jobs = 0;
    std::string cache;
};

struct SeqOptions {
    std::string seq;
    std::string r;
    std::optional<std::uint64_t> p;
};

std::optional<ExactRational> parse_r(const std::string& text) {
    if (text.empty()) return std::nullopt;
    try {
        return ExactRational::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("--r: ") + e.what());
    }
}

SequenceSpec parse_spec(const SeqOptions& o) {
    try {
        return SequenceSpec::from_name(o.seq, parse_r(o.r));
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Prime parse_prime(std::uint64_t value) {
    try {
        return Prime(value);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--p: ") + e.what());
    }
}

IndexRange parse_range(const std::string& text) {
    try {
        return IndexRange::parse(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--n: ") + e.what());
    }
}

// Default relation name for the sequences the miner is usually run on.
std::string default_name(const SequenceSpec& spec) {
    if (std::holds_alternative<seq::PartialSumCentralBinomial>(spec.kind)) return "A";
    if (std::holds_alternative<seq::CentralDelannoy>(spec.kind)) return "b";
    if (std::holds_alternative<seq::LegendreAt>(spec.kind)) return "f";
    return "V";
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open --out " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// Loads a table from --cache when it matches, otherwise builds and stores it.
ValuationTable cached_table(const GlobalOptions& g, const SequenceSpec& spec, Prime p,
                            std::uint64_t N, std::uint64_t offset) {
    if (!g.cache.empty()) {
        std::ifstream in(g.cache);
        if (in) {
            try {
                ValuationTable t = read_table(in);
                if (t.spec == spec && t.p == p && t.offset == offset && t.N() >= N) {
                    t.values.resize(N + 1);
                    return t;
                }
            } catch (const std::exception& e) {
                std::cerr << "ignoring cache " << g.cache << ": " << e.what() << '\n';
            }
        }
    }
    BuildOptions options;
    options.offset = offset;
    ValuationTable t = build_table(spec, p, N, options);
    if (!g.cache.empty()) {
        std::ofstream out(g.cache);
        if (out) write_table(out, t);
    }
    return t;
}

int report_exit(const VerificationReport& report) {
    switch (report.status) {
        case ReportStatus::Pass:
        case ReportStatus::Skipped: return 0;
        default: return kExitMismatch;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact evaluation and p-adic valuation tools for Legendre-family sequences"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    app.add_option("--out", g.out, "Write output to this file instead of stdout");
    app.add_flag("--no-timestamp", g.no_timestamp, "Omit timestamps from reports");
    app.add_option("--jobs", g.jobs, "Worker threads (default: OpenMP default)")
        ->check(CLI::PositiveNumber);
    app.add_option("--cache", g.cache, "Valuation table file reused by mine and rank");

    auto add_seq = [](CLI::App* cmd, SeqOptions& o, bool with_p, bool p_required) {
        cmd->add_option("--seq", o.seq, "legendre|q|cigler|delannoy|dsum|cubesum")->required();
        cmd->add_option("--r", o.r, "Evaluation point for legendre, q, cigler (e.g. 3, 1/2)");
        if (with_p) {
            auto* opt = cmd->add_option("--p", o.p, "Prime");
            if (p_required) opt->required();
        }
    };

    // eval
    SeqOptions eval_seq;
    std::string eval_range;
    auto* eval = app.add_subcommand("eval", "Exact values of a sequence");
    add_seq(eval, eval_seq, false, false);
    eval->add_option("--n", eval_range, "Index range a..b (inclusive)")->required();

    // valuate
    SeqOptions val_seq;
    std::string val_range;
    auto* valuate = app.add_subcommand("valuate", "p-adic valuations of exact values");
    add_seq(valuate, val_seq, true, true);
    valuate->add_option("--n", val_range, "Index range a..b (inclusive)")->required();

    // predict
    std::string pred_id, pred_r, pred_range;
    std::optional<std::uint64_t> pred_p;
    auto* predict_cmd = app.add_subcommand("predict", "Closed-form valuation predictions");
    predict_cmd->add_option("--theorem", pred_id, "Predictor id")->required();
    predict_cmd->add_option("--p", pred_p, "Prime");
    predict_cmd->add_option("--r", pred_r, "Evaluation point");
    predict_cmd->add_option("--n", pred_range, "Index range a..b (inclusive)")->required();

    // verify
    std::string ver_id, ver_r, ver_range, ver_oracle = "direct";
    std::optional<std::uint64_t> ver_p;
    auto* verify = app.add_subcommand("verify", "Compare a predictor with exact evaluation");
    verify->add_option("--theorem", ver_id, "Theorem id")->required();
    verify->add_option("--p", ver_p, "Prime");
    verify->add_option("--r", ver_r, "Evaluation point");
    verify->add_option("--n", ver_range, "Index range a..b (inclusive)")->required();
    verify->add_option("--oracle", ver_oracle, "Oracle tables: direct sums or exact recurrences")
        ->check(CLI::IsMember({"direct", "recurrence"}))
        ->capture_default_str();

    // mine
    SeqOptions mine_seq;
    std::uint64_t mine_N = 0, mine_offset = 0, mine_min_support = 50;
    unsigned mine_max_e = 2;
    std::int64_t mine_max_offset = 0;
    bool mine_prune = false;
    std::string mine_name;
    auto* mine = app.add_subcommand("mine", "Mine affine p-kernel relations");
    add_seq(mine, mine_seq, true, true);
    mine->add_option("--N", mine_N, "Largest table index")->required();
    mine->add_option("--max-e", mine_max_e, "Deepest kernel level")->capture_default_str();
    mine->add_option("--min-support", mine_min_support, "Minimum checked indices")
        ->capture_default_str();
    mine->add_option("--max-offset", mine_max_offset, "Offset bound |c| (default 2p)");
    mine->add_option("--offset", mine_offset, "Re-index: V(n) = vp(seq(n + offset))");
    mine->add_flag("--prune", mine_prune, "Skip kernel subtrees already resolved");
    mine->add_option("--name", mine_name, "Sequence name used when printing relations");

    // rank
    SeqOptions rank_seq;
    unsigned rank_max_e = 3;
    std::uint64_t rank_prefix = 200, rank_offset = 0;
    auto* rank = app.add_subcommand("rank", "Estimate the rank of the p-kernel");
    add_seq(rank, rank_seq, true, true);
    rank->add_option("--max-e", rank_max_e, "Deepest kernel level")->capture_default_str();
    rank->add_option("--prefix", rank_prefix, "Prefix length of each subsequence")
        ->capture_default_str();
    rank->add_option("--offset", rank_offset, "Re-index: V(n) = vp(seq(n + offset))");

    // oeis-check
    SeqOptions oeis_seq;
    std::string oeis_id, oeis_path;
    std::optional<std::int64_t> oeis_shift;
    auto* oeis = app.add_subcommand("oeis-check", "Compare against a local OEIS b-file");
    oeis->add_option("--oeis", oeis_id, "Preset: A001850, A006134, A082490, A358360");
    oeis->add_option("--seq", oeis_seq.seq, "Sequence (overrides the preset)");
    oeis->add_option("--r", oeis_seq.r, "Evaluation point");
    oeis->add_option("--p", oeis_seq.p, "Compare valuations at this prime");
    oeis->add_option("--shift", oeis_shift, "b-file index k maps to sequence index k + shift");
    oeis->add_option("--bfile", oeis_path, "Path to the b-file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (g.jobs > 0) omp_set_num_threads(g.jobs);
        const OutputFormat format = parse_format(g.format);
        const std::string stamp = g.no_timestamp ? std::string() : utc_timestamp();
        Output output(g.out);
        std::ostream& out = output.stream();

        if (*eval) {
            const auto spec = parse_spec(eval_seq);
            const auto range = parse_range(eval_range);
            ValueWriter w(out, format, "value");
            for (auto n = range.first;; ++n) {
                w.row(n, eval_sequence(spec, n).to_string());
                if (n == range.last) break;
            }
            return 0;
        }
        if (*valuate) {
            const auto spec = parse_spec(val_seq);
            const Prime p = parse_prime(*val_seq.p);
            const auto range = parse_range(val_range);
            BuildOptions options;
            options.offset = range.first;
            const auto table = build_table(spec, p, range.last - range.first, options);
            ValueWriter w(out, format, "valuation");
            for (std::uint64_t k = 0; k <= table.N(); ++k)
                w.row(range.first + k, table[k].to_string());
            return 0;
        }
        if (*predict_cmd) {
            const auto range = parse_range(pred_range);
            const auto r = parse_r(pred_r);
            ValueWriter w(out, format, "predicted");
            for (auto n = range.first;; ++n) {
                w.row(n, predict(pred_id, pred_p, r, n).to_string());
                if (n == range.last) break;
            }
            return 0;
        }
        if (*verify) {
            VerifyRequest req;
            req.theorem_id = ver_id;
            req.p = ver_p;
            req.r = parse_r(ver_r);
            req.range = parse_range(ver_range);
            req.oracle = ver_oracle == "direct" ? TableStrategy::Direct : TableStrategy::Incremental;
            const auto report = run_verification(req);
            write_report(out, format, report, stamp);
            return report_exit(report);
        }
        if (*mine) {
            const auto spec = parse_spec(mine_seq);
            const Prime p = parse_prime(*mine_seq.p);
            const auto table = cached_table(g, spec, p, mine_N, mine_offset);
            MineOptions options;
            options.min_support = mine_min_support;
            options.max_offset = mine_max_offset;
            options.prune_resolved_subtrees = mine_prune;
            std::vector<MinedRelation> relations;
            try {
                relations = mine_relations(table, mine_max_e, options);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            write_relations(out, format, table, relations,
                            mine_name.empty() ? default_name(spec) : mine_name, stamp);
            return 0;
        }
        if (*rank) {
            const auto spec = parse_spec(rank_seq);
            const Prime p = parse_prime(*rank_seq.p);
            std::uint64_t top = 1;
            for (unsigned e = 0; e < rank_max_e; ++e) top *= p.value();
            if (rank_prefix == 0) throw UsageError("--prefix must be positive");
            const auto table = cached_table(g, spec, p, top * rank_prefix - 1, rank_offset);
            write_rank(out, format, table, estimate_kernel_rank(table, rank_max_e, rank_prefix),
                       stamp);
            return 0;
        }
        if (*oeis) {
            OeisCheckRequest req;
            if (!oeis_id.empty()) {
                auto preset = oeis_preset(oeis_id);
                if (!preset) throw UsageError("unknown OEIS preset " + oeis_id);
                req.spec = preset->spec;
                req.p = preset->p;
                req.shift = preset->shift;
            } else if (oeis_seq.seq.empty()) {
                throw UsageError("oeis-check needs --oeis or --seq");
            }
            if (!oeis_seq.seq.empty()) req.spec = parse_spec(oeis_seq);
            if (oeis_seq.p) {
                parse_prime(*oeis_seq.p);
                req.p = oeis_seq.p;
            }
            if (oeis_shift) req.shift = *oeis_shift;
            req.bfile = oeis_path;
            const auto report = oeis_check(req);
            write_report(out, format, report, stamp);
            return report_exit(report);
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BFileError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResourceBudgetExceeded& e) {
        std::cerr << "resource budget exceeded: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
