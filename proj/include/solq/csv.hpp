#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace solq {

// CSV emission with reproducible formatting: floats at 17 significant digits
// so that equal doubles produce byte-identical files.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(const std::string& v);
    void end_row();

    std::size_t rows() const { return rows_; }
    const std::string& str() const { return buf_; }
    void write(const std::filesystem::path& path) const;

  private:
    void sep();
    std::string buf_;
    std::size_t cols_ = 0, col_ = 0, rows_ = 0;
};

std::string format_double(double v); // %.17g

} // namespace solq
