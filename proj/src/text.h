#ifndef LEMMACOREF_SRC_TEXT_H_
#define LEMMACOREF_SRC_TEXT_H_

#include <string>
#include <string_view>

namespace lemmacoref::internal {

// ASCII-only case folding; bytes >= 0x80 pass through unchanged, so UTF-8
// sequences stay intact.
inline std::string LowerAscii(std::string_view s) {
  std::string out(s);
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace lemmacoref::internal

#endif  // LEMMACOREF_SRC_TEXT_H_
