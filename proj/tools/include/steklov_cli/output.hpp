#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace steklov::cli {

using Json = nlohmann::ordered_json;

// Pretty-printed JSON with every floating-point number written as %.17g and
// non-finite numbers as null, so identical results give identical bytes.
std::string dump_json(const Json& value);

// RFC 4180 style CSV assembled row by row. The first line is a comment
// carrying the tool version and config hash.
class CsvWriter {
 public:
  CsvWriter(std::string_view version, std::string_view config_hash,
            std::vector<std::string> columns);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double value);
  CsvWriter& cell(long value);
  CsvWriter& cell(int value) { return cell(static_cast<long>(value)); }
  CsvWriter& empty();
  void end_row();

  const std::string& text() const { return text_; }

 private:
  void separator();

  std::size_t columns_;
  std::size_t in_row_ = 0;
  std::string text_;
};

std::string format_double(double value);

void write_text_file(const std::string& path, std::string_view text);

}  // namespace steklov::cli
