#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace portrisk {

// Shortest round-trip decimal rendering (std::to_chars); locale-free, so
// artifact bytes are identical across runs and machines.
std::string format_double(double v);

// Tiny CSV layer. Files are plain comma-separated UTF-8 with a header
// row; no quoting (the pipeline never emits commas inside fields).
// Lines starting with '#' are stage annotations and are skipped on read.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column index by name; throws ParseError listing the header on miss.
    std::size_t col(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text, const std::string& origin = "<memory>");

std::vector<std::string> split_csv_line(const std::string& line);

class CsvWriter {
public:
    // comment lines ('# key=value') go before the header
    CsvWriter(std::string path, std::vector<std::string> header,
              std::vector<std::string> comments = {});

    void row(const std::vector<std::string>& fields);
    // flushes and closes; throws IoError on failure
    void finish();
    ~CsvWriter();

private:
    std::string path_;
    std::string buffer_;
    std::size_t columns_ = 0;
    bool finished_ = false;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace portrisk
