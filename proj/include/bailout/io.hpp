#pragma once

#include "bailout/instances.hpp"
#include "bailout/network.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bailout {

// ------------------------------------------------------------ instance files

/// Serializes with shortest round-trip float formatting; identical input gives identical bytes.
std::string format_instance(const Instance &instance);
void save_instance(const Instance &instance, const std::filesystem::path &path);

/// Parses and validates. Throws ParseError (with line and column) or NetworkError.
/// A missing L column leaves `stimulus` empty.
Instance parse_instance(const std::string &text);
Instance load_instance(const std::filesystem::path &path);

// ---------------------------------------------------------------- bank table

struct BankTableSchema {
    enum class Layout { Wide, EdgeList };

    std::string id_column = "id";
    std::string assets_column = "external_assets";
    std::string liabilities_column = "external_liabilities";
    /// Wide: one column per bank id holding what the row bank owes that bank.
    /// EdgeList: interbank liabilities come from `edges_path` (columns from,to,liability).
    Layout layout = Layout::Wide;
    std::filesystem::path edges_path;
    /// When positive, external liabilities below this value are raised to it.
    double external_liabilities_floor = 0.0;
    char delimiter = ',';
};

struct BankTable {
    FinancialNetwork net;
    std::vector<std::string> ids;
    std::vector<std::string> warnings;
};

BankTable parse_bank_table(const std::string &text, const BankTableSchema &schema,
                           const std::string &edges_text = {});
BankTable load_bank_table(const std::filesystem::path &path, const BankTableSchema &schema);

// ------------------------------------------------------------------- results

struct ResultRow {
    std::string algorithm;
    std::string instance;
    std::size_t k = 0;
    double budget = 0.0;
    std::optional<double> g;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    double mean = 0.0;
    double std = 0.0;
    std::optional<double> opt_r;
    std::optional<double> pof;
    std::optional<double> gini;
    std::optional<double> pgc;
    std::optional<double> sgc;
    double spent = 0.0;
    double wall_ms = 0.0;
    std::string status = "ok";
};

struct ResultsTable {
    std::vector<ResultRow> rows;

    static const std::vector<std::string> &columns();
};

/// Header line plus one line per row, comma separated.
std::string format_results(const ResultsTable &table, bool header = true);

/// Writes the table; with `append` the header is only written to an empty or new file.
void emit_results(const ResultsTable &table, const std::filesystem::path &path, bool append = false);

ResultsTable parse_results(const std::string &text);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view token, std::size_t line = 0, std::size_t column = 0);

} // namespace bailout
