#include "bailout/errors.hpp"
#include "bailout/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <fstream>
#include <sstream>

namespace bailout {

namespace {

std::string quote(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch == '\n' ? ' ' : ch;
    }
    return out + "\"";
}

std::string number(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (std::isnan(v))
        return "nan";
    return format_double(v);
}

std::string optional_number(const std::optional<double> &v) { return v ? number(*v) : std::string(); }

std::vector<std::string> split_csv(const std::string &line, std::size_t line_no) {
    std::vector<std::string> out;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (ch != '\r') {
            field += ch;
        }
    }
    if (quoted)
        throw ParseError("unterminated quote", line_no, line.size());
    out.push_back(std::move(field));
    return out;
}

double read_number(const std::string &s, std::size_t line, std::size_t col) {
    if (s == "inf")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf")
        return -std::numeric_limits<double>::infinity();
    if (s == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    return parse_double(s, line, col);
}

std::optional<double> read_optional(const std::string &s, std::size_t line, std::size_t col) {
    if (s.empty())
        return std::nullopt;
    return read_number(s, line, col);
}

template <class T> T read_integer(const std::string &s, std::size_t line, std::size_t col) {
    T value{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError("malformed integer '" + s + "'", line, col);
    return value;
}

} // namespace

const std::vector<std::string> &ResultsTable::columns() {
    static const std::vector<std::string> names{"algorithm", "instance", "k",   "budget", "g",    "seed",
                                                "samples",   "mean",     "std", "opt_r",  "pof",  "gini",
                                                "pgc",       "sgc",      "spent", "wall_ms", "status"};
    return names;
}

std::string format_results(const ResultsTable &table, bool header) {
    std::ostringstream out;
    if (header) {
        const auto &cols = ResultsTable::columns();
        for (std::size_t k = 0; k < cols.size(); ++k)
            out << (k ? "," : "") << cols[k];
        out << "\n";
    }
    for (const auto &r : table.rows) {
        out << quote(r.algorithm) << ',' << quote(r.instance) << ',' << r.k << ',' << number(r.budget) << ','
            << optional_number(r.g) << ',' << r.seed << ',' << r.samples << ',' << number(r.mean) << ','
            << number(r.std) << ',' << optional_number(r.opt_r) << ',' << optional_number(r.pof) << ','
            << optional_number(r.gini) << ',' << optional_number(r.pgc) << ',' << optional_number(r.sgc) << ','
            << number(r.spent) << ',' << number(r.wall_ms) << ',' << quote(r.status) << "\n";
    }
    return out.str();
}

void emit_results(const ResultsTable &table, const std::filesystem::path &path, bool append) {
    std::error_code ec;
    const bool fresh = !append || !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
    std::ofstream out(path, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << format_results(table, fresh);
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

ResultsTable parse_results(const std::string &text) {
    ResultsTable table;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    const auto &cols = ResultsTable::columns();
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r")
            continue;
        const auto f = split_csv(line, line_no);
        if (!seen_header) {
            if (f != cols)
                throw ParseError("unexpected results header", line_no, 1);
            seen_header = true;
            continue;
        }
        if (f.size() != cols.size())
            throw ParseError("expected " + std::to_string(cols.size()) + " fields", line_no, 1);
        ResultRow r;
        r.algorithm = f[0];
        r.instance = f[1];
        r.k = read_integer<std::size_t>(f[2], line_no, 3);
        r.budget = read_number(f[3], line_no, 4);
        r.g = read_optional(f[4], line_no, 5);
        r.seed = read_integer<std::uint64_t>(f[5], line_no, 6);
        r.samples = read_integer<std::size_t>(f[6], line_no, 7);
        r.mean = read_number(f[7], line_no, 8);
        r.std = read_number(f[8], line_no, 9);
        r.opt_r = read_optional(f[9], line_no, 10);
        r.pof = read_optional(f[10], line_no, 11);
        r.gini = read_optional(f[11], line_no, 12);
        r.pgc = read_optional(f[12], line_no, 13);
        r.sgc = read_optional(f[13], line_no, 14);
        r.spent = read_number(f[14], line_no, 15);
        r.wall_ms = read_number(f[15], line_no, 16);
        r.status = f[16];
        table.rows.push_back(std::move(r));
    }
    if (!seen_header)
        throw ParseError("missing results header", 1, 1);
    return table;
}

} // namespace bailout
