#include "solq/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace solq {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : cols_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += header[i];
    }
    buf_ += '\n';
}

void CsvWriter::sep() {
    if (col_) buf_ += ',';
}

CsvWriter& CsvWriter::cell(double v) {
    sep();
    buf_ += format_double(v);
    ++col_;
    return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
    sep();
    buf_ += std::to_string(v);
    ++col_;
    return *this;
}

CsvWriter& CsvWriter::cell(const std::string& v) {
    sep();
    buf_ += v;
    ++col_;
    return *this;
}

void CsvWriter::end_row() {
    if (col_ != cols_) throw std::logic_error("CsvWriter: row width mismatch");
    buf_ += '\n';
    col_ = 0;
    ++rows_;
}

void CsvWriter::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << buf_;
}

} // namespace solq
