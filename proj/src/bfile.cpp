#include "padic/harness.hpp"

#include <fstream>
#include <istream>
#include <sstream>

namespace padic {

std::vector<BFileRecord> parse_bfile(std::istream& in) {
    std::vector<BFileRecord> records;
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream fields(line);
        std::string index_text, value_text, extra;
        if (!(fields >> index_text >> value_text) || (fields >> extra))
            throw BFileError(lineno, "expected '<index> <value>'");
        BFileRecord record;
        try {
            std::size_t used = 0;
            record.index = std::stoll(index_text, &used);
            if (used != index_text.size()) throw std::invalid_argument(index_text);
        } catch (const std::exception&) {
            throw BFileError(lineno, "bad index '" + index_text + "'");
        }
        if (record.value.set_str(value_text, 10) != 0)
            throw BFileError(lineno, "bad value '" + value_text + "'");
        if (!records.empty() && record.index <= records.back().index)
            throw BFileError(lineno, "indices must strictly increase");
        records.push_back(std::move(record));
    }
    return records;
}

std::optional<OeisPreset> oeis_preset(std::string_view a_number) {
    // A006134(n) = sum_{k<=n} C(2k,k) = d(n+1), hence the shift of 1. A082490
    // is listed as vp(d(n)) itself and starts at n = 1.
    if (a_number == "A001850") return OeisPreset{a_number, {seq::CentralDelannoy{}}, std::nullopt, 0};
    if (a_number == "A006134")
        return OeisPreset{a_number, {seq::PartialSumCentralBinomial{}}, std::nullopt, 1};
    if (a_number == "A082490")
        return OeisPreset{a_number, {seq::PartialSumCentralBinomial{}}, 3, 0};
    if (a_number == "A358360") return OeisPreset{a_number, {seq::CentralDelannoy{}}, 3, 0};
    return std::nullopt;
}

VerificationReport oeis_check(const OeisCheckRequest& request) {
    VerificationReport report;
    report.theorem_id = "oeis-check";
    report.p = request.p;
    report.note = request.spec.canonical() + " vs " + request.bfile.string();

    std::ifstream in(request.bfile);
    if (!in) {
        report.status = ReportStatus::Skipped;
        report.note += " (file not found)";
        return report;
    }
    const auto records = parse_bfile(in);
    std::vector<BFileRecord> overlap;
    for (const auto& rec : records)
        if (rec.index + request.shift >= 0) overlap.push_back(rec);
    if (overlap.empty()) {
        report.status = ReportStatus::Skipped;
        report.note += " (no overlapping indices)";
        return report;
    }
    report.range = {static_cast<std::uint64_t>(overlap.front().index),
                    static_cast<std::uint64_t>(overlap.back().index)};

    std::optional<Prime> p;
    if (request.p) p = Prime(*request.p);
    std::vector<std::optional<Mismatch>> results(overlap.size());
    parallel_for_index(0, overlap.size() - 1, [&](std::uint64_t k) {
        const auto& rec = overlap[k];
        const auto n = static_cast<std::uint64_t>(rec.index + request.shift);
        const ExactRational value = eval_sequence(request.spec, n);
        std::string actual;
        bool same = false;
        if (p) {
            const PadicVal v = vp_rat(*p, value);
            actual = v.to_string();
            same = v.is_finite() && BigInt(static_cast<long>(v.value())) == rec.value;
        } else {
            actual = value.to_string();
            same = value == ExactRational(rec.value);
        }
        if (!same)
            results[k] = Mismatch{static_cast<std::uint64_t>(rec.index), rec.value.get_str(), actual, {}};
    });
    report.checked = overlap.size();
    for (auto& m : results)
        if (m) report.mismatches.push_back(std::move(*m));
    report.status = report.mismatches.empty() ? ReportStatus::Pass : ReportStatus::Fail;
    return report;
}

}  // namespace padic
