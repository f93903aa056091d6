#include "narmap/unicode.hpp"

#include "narmap/errors.hpp"

namespace narmap {

namespace {

int sequence_length(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead & 0xE0) == 0xC0) return 2;
    if ((lead & 0xF0) == 0xE0) return 3;
    if ((lead & 0xF8) == 0xF0) return 4;
    return 0;
}

} // namespace

bool utf8_next(std::string_view s, std::size_t& pos, char32_t& cp) {
    if (pos >= s.size()) return false;
    const auto lead = static_cast<unsigned char>(s[pos]);
    const int len = sequence_length(lead);
    if (len == 0 || pos + static_cast<std::size_t>(len) > s.size()) {
        throw EncodingError("invalid UTF-8 byte at offset " + std::to_string(pos), pos);
    }
    char32_t value = 0;
    switch (len) {
    case 1:
        value = lead;
        break;
    case 2:
        value = lead & 0x1Fu;
        break;
    case 3:
        value = lead & 0x0Fu;
        break;
    default:
        value = lead & 0x07u;
        break;
    }
    for (int k = 1; k < len; ++k) {
        const auto cont = static_cast<unsigned char>(s[pos + static_cast<std::size_t>(k)]);
        if ((cont & 0xC0) != 0x80) {
            const std::size_t off = pos + static_cast<std::size_t>(k);
            throw EncodingError("invalid UTF-8 continuation byte at offset " + std::to_string(off), off);
        }
        value = (value << 6) | (cont & 0x3Fu);
    }
    // Overlong encodings, surrogates, out-of-range values.
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (value < kMin[len] || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
        throw EncodingError("invalid UTF-8 sequence at offset " + std::to_string(pos), pos);
    }
    pos += static_cast<std::size_t>(len);
    cp = value;
    return true;
}

void validate_utf8(std::string_view bytes) {
    std::size_t pos = 0;
    char32_t cp = 0;
    while (utf8_next(bytes, pos, cp)) {
    }
}

void append_utf8(std::string& out, char32_t cp) {
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

bool is_word_letter(char32_t cp) {
    if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
    if (cp >= 0xC0 && cp <= 0xFF && cp != 0xD7 && cp != 0xF7) return true; // Latin-1 letters
    if (cp >= 0x100 && cp <= 0x24F) return true;                           // Latin Extended-A/B
    if (cp >= 0x370 && cp <= 0x3FF && cp != 0x374 && cp != 0x375 && cp != 0x37E) return true; // Greek
    if (cp >= 0x400 && cp <= 0x4FF) return true;                           // Cyrillic
    return false;
}

bool is_ascii_digit(char32_t cp) {
    return cp >= U'0' && cp <= U'9';
}

bool is_apostrophe(char32_t cp) {
    return cp == U'\'' || cp == 0x2019;
}

char32_t fold_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20; // Latin-1 uppercase
    return cp;
}

} // namespace narmap
