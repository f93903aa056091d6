#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace narmap {

// Throws EncodingError naming the byte offset of the first invalid byte.
void validate_utf8(std::string_view bytes);

// Decodes the next code point starting at pos (pos advances past it).
// Returns false at end of input. Input must be valid UTF-8.
bool utf8_next(std::string_view s, std::size_t& pos, char32_t& cp);

void append_utf8(std::string& out, char32_t cp);

// Letter classification covering the scripts a manuscript in a European
// language is likely to use: ASCII, Latin-1 supplement, Latin Extended-A/B,
// Greek, Cyrillic. Everything else (including typographic punctuation in
// the U+2000 block) is a separator.
bool is_word_letter(char32_t cp);

bool is_ascii_digit(char32_t cp);

// ASCII apostrophe or the typographic right single quote U+2019.
bool is_apostrophe(char32_t cp);

// Case folding for ASCII and Latin-1; other code points pass through.
char32_t fold_lower(char32_t cp);

} // namespace narmap
