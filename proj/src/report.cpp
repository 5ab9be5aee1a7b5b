#include "plateau/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef PLATEAU_VERSION
#define PLATEAU_VERSION "0.0.0"
#endif

namespace plateau {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) {
        throw std::invalid_argument("CSV row has " + std::to_string(row.size()) + " cells, header has " +
                                    std::to_string(header_.size()));
    }
    rows_.push_back(std::move(row));
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) return i;
    }
    throw std::out_of_range("CSV has no column '" + name + "'");
}

namespace {

void append_line(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
    }
    out += '\n';
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string CsvTable::to_string() const {
    std::string out;
    append_line(out, header_);
    for (const auto& r : rows_) append_line(out, r);
    return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << to_string();
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

CsvTable CsvTable::read(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(f, line)) throw std::runtime_error(path.string() + " is empty");
    CsvTable t(split_line(line));
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        t.add_row(split_line(line));
    }
    return t;
}

nlohmann::json describe(const Circuit& c) {
    return {{"ansatz", "hardware_efficient_brickwork"},
            {"graph_family", to_string(c.graph.family())},
            {"n", c.n_qubits},
            {"L", c.depth},
            {"M", c.param_count},
            {"r", c.gate_locality},
            {"gate_count", c.gates.size()}};
}

nlohmann::json describe(const Observable& obs) {
    nlohmann::json j = {{"kind", to_string(obs.kind())},
                        {"n", obs.n_qubits()},
                        {"locality_k", obs.locality()},
                        {"declared_norm_bound", obs.declared_norm_bound()},
                        {"terms", obs.terms().size()}};
    if (obs.coupling_j) j["J"] = *obs.coupling_j;
    if (obs.field_h) j["h"] = *obs.field_h;
    return j;
}

std::string tool_version() { return PLATEAU_VERSION; }

void write_outputs(const std::filesystem::path& out_dir, const std::string& prefix, const std::string& command,
                   std::uint64_t base_seed, const ExperimentOutput& output) {
    std::filesystem::create_directories(out_dir);
    nlohmann::json files = nlohmann::json::array();
    for (const auto& [name, table] : output.tables) {
        const std::string file = prefix + "_" + name + ".csv";
        table.write(out_dir / file);
        files.push_back({{"file", file}, {"rows", table.row_count()}});
    }
    if (!output.extra.is_null()) {
        const std::string file = prefix + "_extra.json";
        std::ofstream f(out_dir / file, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (out_dir / file).string());
        f << output.extra.dump(2) << '\n';
        files.push_back({{"file", file}, {"rows", nullptr}});
    }
    nlohmann::json manifest = {{"tool", "plateau-probe"},
                               {"version", tool_version()},
                               {"command", command},
                               {"base_seed", base_seed},
                               {"timestamp", utc_timestamp()},
                               {"config", output.config},
                               {"outputs", files}};
    std::ofstream f(out_dir / (prefix + "_manifest.json"), std::ios::binary);
    if (!f) throw std::runtime_error("cannot write manifest in " + out_dir.string());
    f << manifest.dump(2) << '\n';
}

}  // namespace plateau
