#pragma once

#include <cstdint>
#include <string>
#include <string_view>

// Minimal UTF-8 handling. All geometry in this library is measured in
// Unicode scalar values, not bytes, so every text is decoded up front and
// offsets index the decoded sequence.

namespace bimap {

// Decodes UTF-8 into a sequence of scalar values.
// Throws std::invalid_argument on malformed input.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view text);

// Simple one-to-one lowercase fold covering ASCII, Latin-1 and
// Latin Extended-A. Diacritics are kept: folding É yields é, not e.
char32_t fold_char(char32_t c);

std::u32string fold_case(std::u32string_view s);

// Letters (same coverage as fold_char). Used by the tokenizer.
bool is_letter(char32_t c);

bool is_digit(char32_t c);

}  // namespace bimap
