#include "padic/kernel.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace padic {

namespace {

[[noreturn]] void parse_error(std::uint64_t line, const std::string& what) {
    throw std::runtime_error("table line " + std::to_string(line) + ": " + what);
}

}  // namespace

void write_table(std::ostream& out, const ValuationTable& table) {
    out << "# spec=" << table.spec.canonical() << " p=" << table.p.value() << " N=" << table.N();
    if (table.offset != 0) out << " offset=" << table.offset;
    out << '\n';
    for (std::uint64_t n = 0; n < table.values.size(); ++n)
        out << n << ' ' << table.values[n].to_string() << '\n';
}

ValuationTable read_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) parse_error(1, "missing header");
    if (line.rfind("# ", 0) != 0) parse_error(1, "header must start with '# '");

    std::optional<SequenceSpec> spec;
    std::optional<std::uint64_t> p, N;
    std::uint64_t offset = 0;
    std::istringstream header(line.substr(2));
    std::string field;
    try {
        while (header >> field) {
            auto eq = field.find('=');
            if (eq == std::string::npos) parse_error(1, "bad header field '" + field + "'");
            auto key = field.substr(0, eq);
            auto value = field.substr(eq + 1);
            if (key == "spec")
                spec = SequenceSpec::parse(value);
            else if (key == "p")
                p = std::stoull(value);
            else if (key == "N")
                N = std::stoull(value);
            else if (key == "offset")
                offset = std::stoull(value);
            else
                parse_error(1, "unknown header field '" + key + "'");
        }
    } catch (const std::invalid_argument& e) {
        parse_error(1, e.what());
    }
    if (!spec || !p || !N) parse_error(1, "header needs spec, p and N");

    ValuationTable table{*spec, Prime(*p), offset, {}};
    table.values.reserve(*N + 1);
    std::uint64_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::uint64_t n = 0;
        std::string value, extra;
        if (!(fields >> n >> value) || (fields >> extra)) parse_error(lineno, "expected 'n value'");
        if (n != table.values.size()) parse_error(lineno, "index out of sequence");
        try {
            table.values.push_back(PadicVal::parse(value));
        } catch (const std::invalid_argument& e) {
            parse_error(lineno, e.what());
        }
    }
    if (table.values.size() != *N + 1) parse_error(lineno, "row count does not match N");
    return table;
}

}  // namespace padic
