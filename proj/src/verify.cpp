#include "padic/harness.hpp"
#include "padic/predictors.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <mutex>

namespace padic {

namespace {

// Oracle valuations for sequence indices [first, last].
class OracleTable {
public:
    OracleTable(const SequenceSpec& spec, Prime p, std::uint64_t first, std::uint64_t last,
                TableStrategy strategy)
        : first_(first),
          table_(build_table(spec, p, last - first, BuildOptions{strategy, 0, first, 0, nullptr})) {}

    const PadicVal& at(std::uint64_t n) const { return table_[n - first_]; }

private:
    std::uint64_t first_;
    ValuationTable table_;
};

Prime require_prime(const VerifyRequest& req) {
    if (!req.p) throw UsageError(req.theorem_id + " needs --p");
    try {
        return Prime(*req.p);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Prime require_odd_prime(const VerifyRequest& req) {
    Prime p = require_prime(req);
    if (p.value() == 2)
        throw UsageError("hypothesis p >= 3 violated for " + req.theorem_id + " (got p = 2)");
    return p;
}

Prime fixed_prime(const VerifyRequest& req, std::uint64_t value) {
    if (req.p && *req.p != value)
        throw UsageError(req.theorem_id + " is a statement about p = " + std::to_string(value));
    return Prime(value);
}

const ExactRational& require_r(const VerifyRequest& req) {
    if (!req.r) throw UsageError(req.theorem_id + " needs --r");
    return *req.r;
}

PredictionContext make_context(Prime p, const ExactRational& r) {
    try {
        return PredictionContext(p, r);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

// Records per-index results in index order whatever order workers finish.
class Collector {
public:
    explicit Collector(VerificationReport& report) : report_(report) {}

    void add(Mismatch m) {
        std::lock_guard lock(mutex_);
        report_.mismatches.push_back(std::move(m));
    }

    void count(std::uint64_t k) {
        std::lock_guard lock(mutex_);
        report_.checked += k;
    }

    void finish(bool conjecture) {
        std::sort(report_.mismatches.begin(), report_.mismatches.end(),
                  [](const Mismatch& a, const Mismatch& b) { return a.n < b.n; });
        if (report_.mismatches.empty())
            report_.status = ReportStatus::Pass;
        else
            report_.status = conjecture ? ReportStatus::CounterexampleFound : ReportStatus::Fail;
    }

private:
    VerificationReport& report_;
    std::mutex mutex_;
};

// Several predictors that must all agree with the oracle.
void compare_all(Collector& out, std::uint64_t n, const PadicVal& actual,
                 std::initializer_list<std::pair<const char*, PadicVal>> predicted) {
    bool ok = true;
    for (const auto& [name, v] : predicted) ok = ok && v == actual;
    out.count(1);
    if (ok) return;
    std::string text;
    bool all_same = true;
    for (const auto& [name, v] : predicted) all_same = all_same && v == predicted.begin()->second;
    if (all_same) {
        text = predicted.begin()->second.to_string();
    } else {
        for (const auto& [name, v] : predicted) {
            if (!text.empty()) text += ';';
            text += std::string(name) + "=" + v.to_string();
        }
    }
    out.add({n, text, actual.to_string(), {}});
}

void run_thm3(const VerifyRequest& req, Collector& out) {
    Prime p = require_prime(req);
    const auto ctx = make_context(p, require_r(req));
    OracleTable oracle({seq::LegendreAt{*req.r}}, p, req.range.first, req.range.last, req.oracle);
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t n) {
        compare_all(out, n, oracle.at(n),
                    {{"cases", predict_vp_legendre_general(ctx, n)},
                     {"oneline", predict_vp_legendre_general_oneline(ctx, n)}});
    });
}

void run_thm4(const VerifyRequest& req, Collector& out) {
    Prime p = require_odd_prime(req);
    OracleTable oracle({seq::LegendreAt{ExactRational(BigInt(p.value()))}}, p, req.range.first,
                       req.range.last, req.oracle);
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t n) {
        compare_all(out, n, oracle.at(n),
                    {{"cases", predict_vp_legendre_at_p_cases(p, n)},
                     {"digits", predict_vp_legendre_at_p_digits(p, n)},
                     {"recurrence", predict_by_recurrence(p, n)}});
    });
}

void run_thm5(const VerifyRequest& req, Collector& out) {
    Prime p = fixed_prime(req, 2);
    OracleTable oracle({seq::LegendreAt{ExactRational(2)}}, p, req.range.first, req.range.last,
                       req.oracle);
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t n) {
        compare_all(out, n, oracle.at(n), {{"thm5", predict_vp_legendre_at_2(n)}});
    });
}

void run_thm6(const VerifyRequest& req, Collector& out) {
    Prime p = require_odd_prime(req);
    const std::uint64_t top = p.value() * req.range.last + p.value() - 1;
    OracleTable oracle({seq::LegendreAt{ExactRational(BigInt(p.value()))}}, p, 0, top, req.oracle);
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t n) {
        for (std::uint64_t a = 0; a < p.value(); ++a) {
            const std::uint64_t m = p.value() * n + a;
            compare_all(out, m, oracle.at(m), {{"step", recurrence_step(p, oracle.at(n), n, a)}});
        }
    });
}

void run_thm7(const VerifyRequest& req, Collector& out) {
    Prime p = require_odd_prime(req);
    const ExactRational x(BigInt(p.value()));
    OracleTable cigler({seq::CiglerAt{x}}, p, req.range.first, req.range.last, req.oracle);
    OracleTable legendre({seq::LegendreAt{x}}, p, req.range.first, req.range.last, req.oracle);
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t n) {
        compare_all(out, n, cigler.at(n),
                    {{"vp(P_n(p))", legendre.at(n)}, {"predictor", predict_vp_cigler(p, n)}});
    });
}

void run_conj1(const VerifyRequest& req, Collector& out) {
    Prime p = fixed_prime(req, 3);
    OracleTable oracle({seq::CentralDelannoy{}}, p, req.range.first, req.range.last, req.oracle);
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t n) {
        auto predicted = predict_b_conjecture1(n);
        out.count(1);
        if (predicted != oracle.at(n))
            out.add({n, predicted.to_string(), oracle.at(n).to_string(),
                     central_delannoy(n).get_str()});
    });
}

void run_conj2(const VerifyRequest& req, Collector& out) {
    Prime p = fixed_prime(req, 3);
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t n) {
        BigInt value = cube_sum_2k(n);
        auto actual = vp_int(p, value);
        auto predicted = predict_cube_sum_v3(n);
        out.count(1);
        if (predicted != actual)
            out.add({n, predicted.to_string(), actual.to_string(), value.get_str()});
    });
}

void run_strauss(const VerifyRequest& req, Collector& out) {
    Prime p = fixed_prime(req, 3);
    if (req.range.first == 0)
        throw UsageError("strauss needs n >= 1 (d(0) = 0 has infinite valuation)");
    OracleTable oracle({seq::PartialSumCentralBinomial{}}, p, req.range.first, req.range.last,
                       req.oracle);
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t n) {
        compare_all(out, n, oracle.at(n), {{"strauss", predict_strauss_shallit(n)}});
    });
}

void run_lemma6(const VerifyRequest& req, Collector& out) {
    Prime p = require_prime(req);
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t m) {
        const auto digits = static_cast<std::int64_t>(2 * digit_sum(p, m) + 1 -
                                                      digit_sum(p, 2 * m + 1));
        const auto pm1 = static_cast<std::int64_t>(p.value() - 1);
        out.count(1);
        const auto lhs1 = vp_int(p, BigInt(2 * m + 1)) + vp_int(p, binomial(2 * m, m));
        const auto lhs2 = vp_int(p, BigInt(m + 1)) + vp_int(p, binomial(2 * m + 1, m));
        const bool exact = digits % pm1 == 0;
        const auto rhs = PadicVal::finite(digits / pm1);
        if (!exact || lhs1 != rhs || lhs2 != rhs)
            out.add({m, exact ? rhs.to_string() : "inexact",
                     lhs1.to_string() + ";" + lhs2.to_string(), {}});
    });
}

void run_lemma_q(const VerifyRequest& req, Collector& out, bool odd) {
    Prime p = require_prime(req);
    const auto ctx = make_context(p, require_r(req));
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t m) {
        const std::uint64_t n = 2 * m + (odd ? 1 : 0);
        compare_all(out, m, vp_rat(p, q_eval(n, *req.r)), {{"q", predict_vp_Q(ctx, n)}});
    });
}

void compare_exact(Collector& out, std::uint64_t n, const ExactRational& expected,
                   std::initializer_list<std::pair<const char*, ExactRational>> others) {
    out.count(1);
    std::string text;
    for (const auto& [name, v] : others) {
        if (v == expected) continue;
        if (!text.empty()) text += ';';
        text += std::string(name) + "=" + v.to_string();
    }
    if (!text.empty()) out.add({n, text, expected.to_string(), {}});
}

void run_eq_ma(const VerifyRequest& req, Collector& out) {
    const ExactRational& x = require_r(req);
    const ExactRational two_minus_x = ExactRational(2) - x;
    if (two_minus_x.is_zero()) throw UsageError("eq-ma needs r != 2");
    const ExactRational y = x / two_minus_x;
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t n) {
        compare_exact(out, n, cigler_eval(n, x),
                      {{"substituted", two_minus_x.pow(n) * legendre_eval_rodrigues(n, y)}});
    });
}

void run_formula_agreement(const VerifyRequest& req, Collector& out) {
    const ExactRational& x = require_r(req);
    parallel_for_index(req.range.first, req.range.last, [&](std::uint64_t n) {
        compare_exact(out, n, legendre_eval_rodrigues(n, x),
                      {{"binomial", legendre_eval_binomial(n, x)},
                       {"square", legendre_eval_square_form(n, x)}});
    });
}

struct Check {
    std::string_view id;
    std::function<void(const VerifyRequest&, Collector&)> run;
    bool conjecture;
    std::optional<std::uint64_t> fixed_p = std::nullopt;
};

const std::vector<Check>& checks() {
    static const std::vector<Check> table{
        {"thm3", run_thm3, false},
        {"thm4", run_thm4, false},
        {"thm5", run_thm5, false, 2},
        {"thm6", run_thm6, false},
        {"thm7", run_thm7, false},
        {"conj1", run_conj1, true, 3},
        {"conj2", run_conj2, true, 3},
        {"strauss", run_strauss, false, 3},
        {"lemma6", run_lemma6, false},
        {"lemma8", [](const VerifyRequest& r, Collector& c) { run_lemma_q(r, c, false); }, false},
        {"lemma9", [](const VerifyRequest& r, Collector& c) { run_lemma_q(r, c, true); }, false},
        {"eq-ma", run_eq_ma, false},
        {"formula-agreement", run_formula_agreement, false},
    };
    return table;
}

}  // namespace

IndexRange IndexRange::parse(std::string_view text) {
    auto number = [&](std::string_view s) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
            throw std::invalid_argument("bad range '" + std::string(text) + "'");
        return v;
    };
    IndexRange range;
    auto dots = text.find("..");
    if (dots == std::string_view::npos) {
        range.first = range.last = number(text);
    } else {
        range.first = number(text.substr(0, dots));
        range.last = number(text.substr(dots + 2));
    }
    if (range.first > range.last)
        throw std::invalid_argument("empty range '" + std::string(text) + "'");
    return range;
}

std::string IndexRange::to_string() const {
    return std::to_string(first) + ".." + std::to_string(last);
}

std::string_view to_string(ReportStatus status) {
    switch (status) {
        case ReportStatus::Pass: return "pass";
        case ReportStatus::Fail: return "fail";
        case ReportStatus::CounterexampleFound: return "counterexample-found";
        case ReportStatus::Skipped: return "skipped";
    }
    return "unknown";
}

const std::vector<std::string_view>& verification_ids() {
    static const std::vector<std::string_view> ids = [] {
        std::vector<std::string_view> v;
        for (const auto& c : checks()) v.push_back(c.id);
        return v;
    }();
    return ids;
}

VerificationReport run_verification(const VerifyRequest& request) {
    auto it = std::find_if(checks().begin(), checks().end(),
                           [&](const Check& c) { return c.id == request.theorem_id; });
    if (it == checks().end()) throw UsageError("unknown theorem id '" + request.theorem_id + "'");

    VerificationReport report;
    report.theorem_id = request.theorem_id;
    report.p = request.p ? request.p : it->fixed_p;
    report.r = request.r;
    report.range = request.range;
    if (auto info = predictor_info(request.theorem_id))
        report.note = std::string(info->statement) +
                      (info->standing == Standing::Conjectural ? " [conjectural]" : "");
    Collector collector(report);
    it->run(request, collector);
    collector.finish(it->conjecture);
    return report;
}

PadicVal predict(std::string_view id, const std::optional<std::uint64_t>& p,
                 const std::optional<ExactRational>& r, std::uint64_t n) {
    auto prime = [&]() {
        if (!p) throw UsageError(std::string(id) + " needs --p");
        try {
            return Prime(*p);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    };
    auto odd_prime = [&]() {
        Prime q = prime();
        if (q.value() == 2) throw UsageError("hypothesis p >= 3 violated for " + std::string(id));
        return q;
    };
    auto context = [&]() {
        if (!r) throw UsageError(std::string(id) + " needs --r");
        return make_context(prime(), *r);
    };
    try {
        if (id == "thm3") return predict_vp_legendre_general(context(), n);
        if (id == "thm3-oneline") return predict_vp_legendre_general_oneline(context(), n);
        if (id == "thm4") return predict_vp_legendre_at_p_cases(odd_prime(), n);
        if (id == "thm4-digits") return predict_vp_legendre_at_p_digits(odd_prime(), n);
        if (id == "thm5") return predict_vp_legendre_at_2(n);
        if (id == "thm6") return predict_by_recurrence(odd_prime(), n);
        if (id == "thm7") return predict_vp_cigler(odd_prime(), n);
        if (id == "conj1") return predict_b_conjecture1(n);
        if (id == "conj2") return predict_cube_sum_v3(n);
        if (id == "strauss") return predict_strauss_shallit(n);
        if (id == "lemma8" || id == "lemma9" || id == "q") return predict_vp_Q(context(), n);
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    throw UsageError("no predictor named '" + std::string(id) + "'");
}

}  // namespace padic
