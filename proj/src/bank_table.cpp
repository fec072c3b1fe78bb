#include "bailout/errors.hpp"
#include "bailout/io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bailout {

namespace {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> lines; // source line of each row
};

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Double quotes may wrap a field; "" inside quotes is a literal quote.
std::vector<std::string> split_record(const std::string &line, char delim, std::size_t line_no) {
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
        } else if (ch == delim) {
            out.push_back(trim(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    if (quoted)
        throw ParseError("unterminated quote", line_no, line.size());
    out.push_back(trim(field));
    return out;
}

Table read_table(const std::string &text, char delim) {
    Table table;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        auto fields = split_record(line, delim, line_no);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size())
            throw ParseError("expected " + std::to_string(table.header.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             line_no, 1);
        table.rows.push_back(std::move(fields));
        table.lines.push_back(line_no);
    }
    if (table.header.empty())
        throw ParseError("missing header row", 1, 1);
    return table;
}

std::size_t column_of(const Table &t, const std::string &name) {
    for (std::size_t k = 0; k < t.header.size(); ++k)
        if (t.header[k] == name)
            return k;
    throw InvalidInput("missing column '" + name + "'");
}

double number(const std::string &field, std::size_t line, std::size_t column) {
    const double v = parse_double(field, line, column + 1);
    if (!std::isfinite(v))
        throw ParseError("value is not finite", line, column + 1);
    return v;
}

} // namespace

BankTable parse_bank_table(const std::string &text, const BankTableSchema &schema, const std::string &edges_text) {
    const Table table = read_table(text, schema.delimiter);
    const std::size_t id_col = column_of(table, schema.id_column);
    const std::size_t a_col = column_of(table, schema.assets_column);
    const std::size_t b_col = column_of(table, schema.liabilities_column);

    const std::size_t n = table.rows.size();
    std::vector<std::string> ids;
    std::vector<std::string> warnings;
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < n; ++r) {
        const auto &id = table.rows[r][id_col];
        if (id.empty())
            throw ParseError("empty bank id", table.lines[r], id_col + 1);
        if (!index.emplace(id, r).second)
            throw ParseError("duplicate bank id '" + id + "'", table.lines[r], id_col + 1);
        ids.push_back(id);
    }

    std::vector<double> c(n), b(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto &row = table.rows[r];
        c[r] = number(row[a_col], table.lines[r], a_col);
        if (row[b_col].empty()) {
            if (schema.external_liabilities_floor > 0)
                b[r] = schema.external_liabilities_floor;
            else
                throw InvalidInput("bank '" + ids[r] + "' (line " + std::to_string(table.lines[r]) +
                                   ") lacks external liabilities");
        } else {
            b[r] = std::max(number(row[b_col], table.lines[r], b_col), schema.external_liabilities_floor);
        }
    }

    std::set<std::size_t> used{id_col, a_col, b_col};
    std::vector<Edge> edges;
    if (schema.layout == BankTableSchema::Layout::Wide) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t col = column_of(table, ids[i]);
            used.insert(col);
            for (std::size_t r = 0; r < n; ++r) {
                const auto &field = table.rows[r][col];
                if (field.empty())
                    continue;
                const double v = number(field, table.lines[r], col);
                if (v != 0.0)
                    edges.push_back({r, i, v});
            }
        }
    } else {
        const Table et = read_table(edges_text, schema.delimiter);
        const std::size_t f = column_of(et, "from");
        const std::size_t t = column_of(et, "to");
        const std::size_t l = column_of(et, "liability");
        for (std::size_t r = 0; r < et.rows.size(); ++r) {
            const auto &row = et.rows[r];
            const auto from = index.find(row[f]);
            const auto to = index.find(row[t]);
            if (from == index.end())
                throw ParseError("unknown bank '" + row[f] + "'", et.lines[r], f + 1);
            if (to == index.end())
                throw ParseError("unknown bank '" + row[t] + "'", et.lines[r], t + 1);
            edges.push_back({from->second, to->second, number(row[l], et.lines[r], l)});
        }
    }
    for (std::size_t k = 0; k < table.header.size(); ++k)
        if (!used.count(k))
            warnings.push_back("ignored column '" + table.header[k] + "'");

    std::vector<std::string> offending;
    for (std::size_t r = 0; r < n; ++r)
        if (!(b[r] > 0))
            offending.push_back(ids[r] + " (line " + std::to_string(table.lines[r]) + ")");
    if (!offending.empty()) {
        std::string list;
        for (const auto &s : offending)
            list += (list.empty() ? "" : ", ") + s;
        throw NetworkError(NetworkError::Reason::Connectivity,
                           "beta_max >= 1: banks without external liabilities: " + list);
    }

    try {
        return BankTable{FinancialNetwork::from_edges(n, edges, b, c), std::move(ids), std::move(warnings)};
    } catch (const NetworkError &e) {
        const std::string who = e.node() < ids.size() ? " (bank '" + ids[e.node()] + "')" : "";
        throw NetworkError(e.reason(), std::string(e.what()) + who, e.node());
    }
}

BankTable load_bank_table(const std::filesystem::path &path, const BankTableSchema &schema) {
    auto slurp = [](const std::filesystem::path &p) {
        std::ifstream in(p, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot open " + p.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    std::string edges;
    if (schema.layout == BankTableSchema::Layout::EdgeList) {
        auto edge_path = schema.edges_path;
        if (edge_path.is_relative())
            edge_path = path.parent_path() / edge_path;
        edges = slurp(edge_path);
    }
    return parse_bank_table(slurp(path), schema, edges);
}

} // namespace bailout
