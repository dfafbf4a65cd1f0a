#include "bimap/unicode.hpp"

#include <stdexcept>

namespace bimap {

std::u32string decode_utf8(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    const auto n = bytes.size();
    auto fail = [&](std::size_t at) -> char32_t {
        throw std::invalid_argument("malformed UTF-8 at byte " + std::to_string(at));
    };
    while (i < n) {
        const unsigned char b0 = static_cast<unsigned char>(bytes[i]);
        char32_t cp;
        std::size_t len;
        if (b0 < 0x80) {
            cp = b0;
            len = 1;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            len = 2;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            len = 3;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            len = 4;
        } else {
            cp = fail(i);
            len = 1;
        }
        if (i + len > n) fail(i);
        for (std::size_t k = 1; k < len; ++k) {
            const unsigned char bk = static_cast<unsigned char>(bytes[i + k]);
            if ((bk & 0xC0) != 0x80) fail(i + k);
            cp = (cp << 6) | (bk & 0x3F);
        }
        // Overlong encodings and surrogate range are rejected.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
            (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
            (cp >= 0xD800 && cp <= 0xDFFF)) {
            fail(i);
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(std::u32string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : text) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

char32_t fold_char(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 0x20;
    // Latin-1: À..Þ map to à..þ, except the multiplication sign ×.
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
    // Latin Extended-A is laid out mostly as upper/lower pairs.
    if (c >= 0x100 && c <= 0x177 && (c % 2 == 0)) return c + 1;
    if (c >= 0x179 && c <= 0x17E && (c % 2 == 1)) return c + 1;
    if (c == 0x178) return 0xFF;  // Ÿ -> ÿ
    return c;
}

std::u32string fold_case(std::u32string_view s) {
    std::u32string out(s);
    for (auto& c : out) c = fold_char(c);
    return out;
}

bool is_letter(char32_t c) {
    if ((c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z')) return true;
    if (c >= 0xC0 && c <= 0xFF && c != 0xD7 && c != 0xF7) return true;  // Latin-1 letters
    if (c >= 0x100 && c <= 0x17F) return true;                          // Latin Extended-A
    return false;
}

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }

}  // namespace bimap
