#include "padic/harness.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>
#include <ostream>

namespace padic {

namespace {

using Json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

std::string optional_p(const std::optional<std::uint64_t>& p) {
    return p ? std::to_string(*p) : std::string();
}

std::string optional_r(const std::optional<ExactRational>& r) {
    return r ? r->to_string() : std::string();
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "jsonl") return OutputFormat::Jsonl;
    throw std::invalid_argument("unknown format '" + std::string(text) + "'");
}

ValueWriter::ValueWriter(std::ostream& out, OutputFormat format, std::string column)
    : out_(out), format_(format), column_(std::move(column)) {
    if (format_ == OutputFormat::Csv) out_ << "n," << column_ << '\n';
}

void ValueWriter::row(std::uint64_t n, const std::string& value) {
    if (format_ == OutputFormat::Csv) {
        out_ << n << ',' << value << '\n';
    } else {
        Json j;
        j["n"] = n;
        j[column_] = value;
        out_ << j.dump() << '\n';
    }
}

void write_report(std::ostream& out, OutputFormat format, const VerificationReport& report,
                  const std::string& timestamp) {
    const std::string status(to_string(report.status));
    if (format == OutputFormat::Csv) {
        out << "record,theorem,p,r,n_first,n_last,checked,status,n,predicted,actual,exact_value,"
               "note,timestamp\n";
        auto prefix = [&](const char* kind) {
            out << kind << ',' << report.theorem_id << ',' << optional_p(report.p) << ','
                << csv_field(optional_r(report.r)) << ',' << report.range.first << ','
                << report.range.last << ',';
        };
        for (const auto& m : report.mismatches) {
            prefix("mismatch");
            out << ",," << m.n << ',' << csv_field(m.predicted) << ',' << csv_field(m.actual)
                << ',' << m.exact_value << ",,\n";
        }
        prefix("summary");
        out << report.checked << ',' << status << ",,,,," << csv_field(report.note) << ','
            << timestamp << '\n';
        return;
    }
    for (const auto& m : report.mismatches) {
        Json j;
        j["type"] = "mismatch";
        j["theorem"] = report.theorem_id;
        j["n"] = m.n;
        j["predicted"] = m.predicted;
        j["actual"] = m.actual;
        if (!m.exact_value.empty()) j["exact_value"] = m.exact_value;
        out << j.dump() << '\n';
    }
    Json j;
    j["type"] = "summary";
    j["theorem"] = report.theorem_id;
    j["p"] = report.p ? Json(*report.p) : Json(nullptr);
    j["r"] = report.r ? Json(report.r->to_string()) : Json(nullptr);
    j["n_first"] = report.range.first;
    j["n_last"] = report.range.last;
    j["checked"] = report.checked;
    j["mismatches"] = report.mismatches.size();
    j["status"] = status;
    j["note"] = report.note;
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    out << j.dump() << '\n';
}

void write_relations(std::ostream& out, OutputFormat format, const ValuationTable& table,
                     const std::vector<MinedRelation>& relations, const std::string& name,
                     const std::string& timestamp) {
    const std::uint64_t p = table.p.value();
    if (format == OutputFormat::Csv) {
        out << "relation,e,i,rhs_e,rhs_i,c,support,violations,skipped\n";
        for (const auto& r : relations) {
            const auto& c = r.candidate;
            out << format_relation(c, p, name) << ',' << c.e << ',' << c.i << ',' << c.rhs_e << ','
                << c.rhs_i << ',' << c.c << ',' << r.support << ',' << r.violations << ','
                << r.skipped << '\n';
        }
        if (!timestamp.empty()) out << "# generated " << timestamp << '\n';
        return;
    }
    for (const auto& r : relations) {
        const auto& c = r.candidate;
        Json j;
        j["relation"] = format_relation(c, p, name);
        j["e"] = c.e;
        j["i"] = c.i;
        j["rhs_e"] = c.rhs_e;
        j["rhs_i"] = c.rhs_i;
        j["c"] = c.c;
        j["support"] = r.support;
        j["violations"] = r.violations;
        j["skipped"] = r.skipped;
        out << j.dump() << '\n';
    }
    Json meta;
    meta["type"] = "summary";
    meta["spec"] = table.spec.canonical();
    meta["p"] = p;
    meta["N"] = table.N();
    meta["offset"] = table.offset;
    meta["relations"] = relations.size();
    meta["search_bounds"] = "artifact defaults, not taken from the original search";
    if (!timestamp.empty()) meta["timestamp"] = timestamp;
    out << meta.dump() << '\n';
}

void write_rank(std::ostream& out, OutputFormat format, const ValuationTable& table,
                const KernelRankEstimate& est, const std::string& timestamp) {
    auto label = [](const KernelIndex& k) {
        return "(" + std::to_string(k.e) + "," + std::to_string(k.i) + ")";
    };
    std::string basis = est.constant_in_basis ? "const" : "";
    for (const auto& k : est.basis_labels) basis += (basis.empty() ? "" : " ") + label(k);
    std::string dropped;
    for (const auto& k : est.dropped) dropped += (dropped.empty() ? "" : " ") + label(k);

    if (format == OutputFormat::Csv) {
        out << "spec,p,max_e,prefix_len,rows,rank,basis,dropped,timestamp\n";
        out << table.spec.canonical() << ',' << table.p.value() << ',' << est.max_e << ','
            << est.prefix_len << ',' << est.rows_examined << ',' << est.rank << ',' << basis << ','
            << dropped << ',' << timestamp << '\n';
        return;
    }
    Json j;
    j["spec"] = table.spec.canonical();
    j["p"] = table.p.value();
    j["max_e"] = est.max_e;
    j["prefix_len"] = est.prefix_len;
    j["rows"] = est.rows_examined;
    j["rank"] = est.rank;
    j["basis"] = basis;
    j["dropped"] = dropped;
    if (!timestamp.empty()) j["timestamp"] = timestamp;
    out << j.dump() << '\n';
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace padic
