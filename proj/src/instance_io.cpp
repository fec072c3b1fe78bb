#include "bailout/errors.hpp"
#include "bailout/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace bailout {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view token, std::size_t line, std::size_t column) {
    double value = 0.0;
    const char *begin = token.data();
    const char *end = begin + token.size();
    if (!token.empty() && *begin == '+')
        ++begin;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc{} || res.ptr != end)
        throw ParseError("malformed number '" + std::string(token) + "'", line, column);
    return value;
}

namespace {

struct Token {
    std::string_view text;
    std::size_t column; // 1-based
};

std::vector<Token> split(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
            ++i;
        if (i >= line.size())
            break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
            ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::size_t parse_index(const Token &t, std::size_t line) {
    std::size_t value = 0;
    const auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (res.ec != std::errc{} || res.ptr != t.text.data() + t.text.size())
        throw ParseError("malformed integer '" + std::string(t.text) + "'", line, t.column);
    return value;
}

class LineReader {
public:
    explicit LineReader(const std::string &text) : in_(text) {}

    // Next non-blank, non-comment line; false at end of input.
    bool next(std::string &line) {
        while (std::getline(in_, line)) {
            ++number_;
            std::size_t k = 0;
            while (k < line.size() && (line[k] == ' ' || line[k] == '\t'))
                ++k;
            if (k == line.size() || line[k] == '#' || line[k] == '\r')
                continue;
            return true;
        }
        return false;
    }

    std::size_t number() const noexcept { return number_; }

private:
    std::istringstream in_;
    std::size_t number_ = 0;
};

} // namespace

std::string format_instance(const Instance &instance) {
    const auto &net = instance.net;
    const std::size_t n = net.size();
    const auto &shocks = instance.shocks;
    const bool has_L = !instance.stimulus.empty();
    const bool has_q = !instance.q.empty();
    const bool has_x = shocks.kind() == ShockKind::PointMass;

    std::ostringstream out;
    out << "bailout-instance 1\n";
    if (!instance.provenance.empty()) {
        std::string text = instance.provenance;
        for (char &ch : text)
            if (ch == '\n' || ch == '\r')
                ch = ' ';
        out << "provenance " << text << "\n";
    }
    out << "n " << n << "\n";
    out << "budget " << format_double(instance.budget) << "\n";
    out << "shock " << to_string(shocks.kind());
    if (shocks.kind() == ShockKind::ScaledBeta)
        out << " " << format_double(shocks.alpha()) << " " << format_double(shocks.beta());
    out << "\n";
    out << "nodes id c b";
    if (has_L)
        out << " L";
    if (has_q)
        out << " q";
    if (has_x)
        out << " x";
    out << "\n";
    for (std::size_t j = 0; j < n; ++j) {
        out << j << " " << format_double(net.c()[j]) << " " << format_double(net.b()[j]);
        if (has_L)
            out << " " << format_double(instance.stimulus[j]);
        if (has_q)
            out << " " << format_double(instance.q[j]);
        if (has_x)
            out << " " << format_double(shocks.point()[j]);
        out << "\n";
    }
    out << "edges\n";
    for (const auto &e : net.edges())
        out << e.from << " " << e.to << " " << format_double(e.liability) << "\n";
    out << "end\n";
    return out.str();
}

void save_instance(const Instance &instance, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << format_instance(instance);
    if (!out)
        throw std::runtime_error("failed writing " + path.string());
}

Instance parse_instance(const std::string &text) {
    LineReader reader(text);
    std::string line;
    if (!reader.next(line))
        throw ParseError("empty instance file", 1, 1);
    {
        const auto t = split(line);
        if (t.size() != 2 || t[0].text != "bailout-instance")
            throw ParseError("expected 'bailout-instance <version>'", reader.number(), 1);
        if (t[1].text != "1")
            throw ParseError("unsupported format version " + std::string(t[1].text), reader.number(), t[1].column);
    }

    std::optional<std::size_t> n;
    std::optional<double> budget;
    std::optional<ShockKind> shock_kind;
    double shock_a = 0.0, shock_b = 0.0;
    std::string provenance;
    std::vector<std::string> columns;
    std::size_t nodes_line = 0;

    while (true) {
        if (!reader.next(line))
            throw ParseError("missing 'nodes' section", reader.number() + 1, 1);
        const auto t = split(line);
        const auto key = t[0].text;
        const std::size_t ln = reader.number();
        if (key == "provenance") {
            const auto pos = line.find("provenance") + std::string("provenance").size();
            const auto start = line.find_first_not_of(" \t", pos);
            provenance = start == std::string::npos ? "" : line.substr(start);
            while (!provenance.empty() && (provenance.back() == '\r' || provenance.back() == ' '))
                provenance.pop_back();
        } else if (key == "n") {
            if (t.size() != 2)
                throw ParseError("expected 'n <count>'", ln, t[0].column);
            n = parse_index(t[1], ln);
        } else if (key == "budget") {
            if (t.size() != 2)
                throw ParseError("expected 'budget <value>'", ln, t[0].column);
            budget = parse_double(t[1].text, ln, t[1].column);
        } else if (key == "shock") {
            if (t.size() < 2)
                throw ParseError("expected 'shock <kind> [params]'", ln, t[0].column);
            try {
                shock_kind = parse_shock_kind(t[1].text);
            } catch (const InvalidInput &) {
                throw ParseError("unknown shock kind '" + std::string(t[1].text) + "'", ln, t[1].column);
            }
            const std::size_t want = *shock_kind == ShockKind::ScaledBeta ? 4 : 2;
            if (t.size() != want)
                throw ParseError("wrong number of shock parameters", ln, t[1].column);
            if (*shock_kind == ShockKind::ScaledBeta) {
                shock_a = parse_double(t[2].text, ln, t[2].column);
                shock_b = parse_double(t[3].text, ln, t[3].column);
            }
        } else if (key == "nodes") {
            for (std::size_t k = 1; k < t.size(); ++k)
                columns.emplace_back(t[k].text);
            nodes_line = ln;
            break;
        } else {
            throw ParseError("unknown key '" + std::string(key) + "'", ln, t[0].column);
        }
    }
    if (!n)
        throw ParseError("missing 'n'", nodes_line, 1);
    if (!budget)
        throw ParseError("missing 'budget'", nodes_line, 1);
    if (!shock_kind)
        throw ParseError("missing 'shock'", nodes_line, 1);

    std::map<std::string, std::size_t> col;
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (columns[k] != "id" && columns[k] != "c" && columns[k] != "b" && columns[k] != "L" &&
            columns[k] != "q" && columns[k] != "x")
            throw ParseError("unknown node column '" + columns[k] + "'", nodes_line, 1);
        if (!col.emplace(columns[k], k).second)
            throw ParseError("duplicate node column '" + columns[k] + "'", nodes_line, 1);
    }
    for (const char *required : {"id", "c", "b"})
        if (!col.count(required))
            throw ParseError(std::string("node table lacks column '") + required + "'", nodes_line, 1);
    const bool point = *shock_kind == ShockKind::PointMass;
    if (point != (col.count("x") == 1))
        throw ParseError(point ? "point shock needs an x column" : "x column only allowed with a point shock",
                         nodes_line, 1);

    const std::size_t count = *n;
    std::vector<double> c(count), b(count), L, q, x;
    if (col.count("L"))
        L.resize(count);
    if (col.count("q"))
        q.resize(count);
    if (point)
        x.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        if (!reader.next(line))
            throw ParseError("node table ended early", reader.number() + 1, 1);
        const auto t = split(line);
        const std::size_t ln = reader.number();
        if (t.size() != columns.size())
            throw ParseError("expected " + std::to_string(columns.size()) + " fields", ln, 1);
        const auto &id = t[col["id"]];
        if (parse_index(id, ln) != j)
            throw ParseError("node ids must run 0..n-1 in order", ln, id.column);
        auto field = [&](const char *name) {
            const auto &tok = t[col[name]];
            const double v = parse_double(tok.text, ln, tok.column);
            if (!std::isfinite(v))
                throw ParseError(std::string(name) + " is not finite", ln, tok.column);
            return v;
        };
        c[j] = field("c");
        b[j] = field("b");
        if (!L.empty())
            L[j] = field("L");
        if (!q.empty())
            q[j] = field("q");
        if (point)
            x[j] = field("x");
    }

    if (!reader.next(line) || split(line)[0].text != "edges")
        throw ParseError("expected 'edges'", reader.number(), 1);
    std::vector<Edge> edges;
    bool ended = false;
    while (reader.next(line)) {
        const auto t = split(line);
        const std::size_t ln = reader.number();
        if (t[0].text == "end") {
            ended = true;
            break;
        }
        if (t.size() != 3)
            throw ParseError("expected 'from to liability'", ln, 1);
        const std::size_t from = parse_index(t[0], ln);
        const std::size_t to = parse_index(t[1], ln);
        if (from >= count)
            throw ParseError("edge source out of range", ln, t[0].column);
        if (to >= count)
            throw ParseError("edge target out of range", ln, t[1].column);
        edges.push_back({from, to, parse_double(t[2].text, ln, t[2].column)});
    }
    if (!ended)
        throw ParseError("missing 'end'", reader.number() + 1, 1);
    if (reader.next(line))
        throw ParseError("content after 'end'", reader.number(), 1);

    auto net = FinancialNetwork::from_edges(count, edges, b, c);
    for (double v : L)
        if (!(v > 0))
            throw InvalidInput("stimulus values must be positive");
    for (double v : q)
        if (!(v >= 0 && v <= 1))
            throw InvalidInput("property values must lie in [0, 1]");
    if (!(*budget >= 0))
        throw InvalidInput("budget must be non-negative");

    ShockDistribution shocks;
    switch (*shock_kind) {
    case ShockKind::Uniform:
        shocks = ShockDistribution::uniform(c);
        break;
    case ShockKind::ScaledBeta:
        shocks = ShockDistribution::scaled_beta(c, shock_a, shock_b);
        break;
    case ShockKind::PointMass:
        shocks = ShockDistribution::point_mass(c, x);
        break;
    case ShockKind::Zero:
        shocks = ShockDistribution::zero(c);
        break;
    }
    return Instance{std::move(net), std::move(L), *budget, std::move(shocks), std::move(q), std::move(provenance)};
}

Instance load_instance(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

} // namespace bailout
