#ifndef LEMMACOREF_SRC_IO_H_
#define LEMMACOREF_SRC_IO_H_

#include <string>
#include <string_view>
#include <vector>

namespace lemmacoref::internal {

std::string ReadFile(const std::string &path);
void WriteFile(const std::string &path, std::string_view contents);

// Splits on '\n', dropping a trailing '\r'. Blank lines are returned as
// empty strings so callers can report 1-based line numbers.
std::vector<std::string_view> SplitLines(std::string_view text);

bool IsBlank(std::string_view line);

std::string FormatDouble(double value);

}  // namespace lemmacoref::internal

#endif  // LEMMACOREF_SRC_IO_H_
