#include "portrisk/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "portrisk/errors.hpp"

namespace portrisk {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("format_double failed");
    return std::string(buf, ptr);
}

std::size_t CsvTable::col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    std::string have;
    for (const auto& h : header) have += (have.empty() ? "" : ",") + h;
    throw ParseError("missing CSV column '" + name + "' (header: " + have + ")");
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            std::size_t end = i;
            // tolerate CRLF
            if (end > start && line[end - 1] == '\r') --end;
            out.emplace_back(line.substr(start, end - start));
            start = i + 1;
        }
    }
    return out;
}

CsvTable parse_csv(const std::string& text, const std::string& origin) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (line[0] == '#') continue;
        auto fields = split_csv_line(line);
        if (table.header.empty()) {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size())
            throw ParseError(origin + ":" + std::to_string(lineno) +
                             ": expected " + std::to_string(table.header.size()) +
                             " fields, got " + std::to_string(fields.size()));
        table.rows.push_back(std::move(fields));
    }
    if (table.header.empty())
        throw ParseError(origin + ": missing CSV header");
    return table;
}

CsvTable read_csv(const std::string& path) {
    return parse_csv(read_file(path), path);
}

CsvWriter::CsvWriter(std::string path, std::vector<std::string> header,
                     std::vector<std::string> comments)
    : path_(std::move(path)), columns_(header.size()) {
    for (const auto& c : comments) buffer_ += "# " + c + "\n";
    for (std::size_t i = 0; i < header.size(); ++i)
        buffer_ += (i ? "," : "") + header[i];
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_)
        throw Error("CsvWriter: row width " + std::to_string(fields.size()) +
                    " != header width " + std::to_string(columns_));
    for (std::size_t i = 0; i < fields.size(); ++i)
        buffer_ += (i ? "," : "") + fields[i];
    buffer_ += '\n';
}

void CsvWriter::finish() {
    if (finished_) return;
    finished_ = true;
    write_file(path_, buffer_);
}

CsvWriter::~CsvWriter() {
    // destructor must not throw; callers that care call finish()
    if (!finished_) {
        try {
            finish();
        } catch (...) {
        }
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace portrisk
