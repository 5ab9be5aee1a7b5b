#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "plateau/circuit.hpp"
#include "plateau/observable.hpp"

namespace plateau {

/// Round-trippable decimal form (17 significant digits).
std::string format_double(double x);

/// In-memory CSV with a fixed header.
class CsvTable {
public:
    CsvTable() = default;
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }
    std::size_t row_count() const { return rows_.size(); }

    void add_row(std::vector<std::string> row);

    /// Column index by name; throws if absent.
    std::size_t column(const std::string& name) const;

    std::string to_string() const;
    void write(const std::filesystem::path& path) const;
    static CsvTable read(const std::filesystem::path& path);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline std::string cell(double x) { return format_double(x); }
inline std::string cell(std::size_t x) { return std::to_string(x); }
inline std::string cell(const std::string& s) { return s; }
inline std::string cell(const char* s) { return s; }

nlohmann::json describe(const Circuit& circuit);
nlohmann::json describe(const Observable& obs);

/// Output bundle of one experiment command.
struct ExperimentOutput {
    std::map<std::string, CsvTable> tables;  // name -> table, written as <name>.csv
    nlohmann::json config;
    nlohmann::json extra;  // JSON side outputs (bound reports, accounting)
};

std::string tool_version();

/// Writes every table as <out>/<prefix>_<name>.csv, extra JSON (if any) as
/// <out>/<prefix>_extra.json, and a manifest <out>/<prefix>_manifest.json that
/// lists each file with its row count.
void write_outputs(const std::filesystem::path& out_dir, const std::string& prefix, const std::string& command,
                   std::uint64_t base_seed, const ExperimentOutput& output);

}  // namespace plateau
