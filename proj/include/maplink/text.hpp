#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace maplink {

// Minimal Unicode handling for map toponyms. Covers ASCII, Latin-1
// Supplement, Latin Extended-A, Greek and Cyrillic; anything outside those
// ranges is treated as an uncased character that folds to itself. UTF-8
// decoding is lenient: a malformed byte stands for its own value, so label
// text from dirty OCR sources never throws.

namespace text {

inline std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c0 = static_cast<unsigned char>(s[i]);
        std::size_t len = 0;
        char32_t cp = 0;
        if (c0 < 0x80) {
            len = 1;
            cp = c0;
        } else if ((c0 & 0xE0) == 0xC0) {
            len = 2;
            cp = c0 & 0x1F;
        } else if ((c0 & 0xF0) == 0xE0) {
            len = 3;
            cp = c0 & 0x0F;
        } else if ((c0 & 0xF8) == 0xF0) {
            len = 4;
            cp = c0 & 0x07;
        }
        bool ok = len > 0 && i + len <= s.size();
        for (std::size_t k = 1; ok && k < len; ++k) {
            unsigned char ck = static_cast<unsigned char>(s[i + k]);
            if ((ck & 0xC0) != 0x80) {
                ok = false;
            } else {
                cp = (cp << 6) | (ck & 0x3F);
            }
        }
        if (ok) {
            out.push_back(cp);
            i += len;
        } else {
            out.push_back(c0);  // lenient: raw byte as codepoint
            i += 1;
        }
    }
    return out;
}

inline void encode_utf8(char32_t cp, std::string& out) {
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

// Latin Extended-A alternates upper/lower in pairs, with a handful of
// singletons (0x138 kra, 0x149 'n, 0x178 Y-diaeresis, 0x17F long s).

inline bool is_upper(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return true;
    if ((cp >= 0xC0 && cp <= 0xD6) || (cp >= 0xD8 && cp <= 0xDE)) return true;
    if (cp >= 0x100 && cp <= 0x137) return (cp & 1) == 0;
    if (cp >= 0x139 && cp <= 0x148) return (cp & 1) == 1;
    if (cp >= 0x14A && cp <= 0x177) return (cp & 1) == 0;
    if (cp == 0x178) return true;
    if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) == 1;
    if (cp == 0x386 || (cp >= 0x388 && cp <= 0x38A) || cp == 0x38C || cp == 0x38E || cp == 0x38F) return true;
    if (cp >= 0x391 && cp <= 0x3A1) return true;
    if (cp >= 0x3A3 && cp <= 0x3AB) return true;
    if (cp >= 0x400 && cp <= 0x42F) return true;
    return false;
}

inline bool is_lower(char32_t cp) {
    if (cp >= U'a' && cp <= U'z') return true;
    if (cp == 0xB5) return true;  // micro sign
    if ((cp >= 0xDF && cp <= 0xF6) || (cp >= 0xF8 && cp <= 0xFF)) return true;
    if (cp >= 0x100 && cp <= 0x137) return (cp & 1) == 1;
    if (cp == 0x138) return false;  // kra is caseless
    if (cp >= 0x139 && cp <= 0x148) return (cp & 1) == 0;
    if (cp == 0x149) return true;
    if (cp >= 0x14A && cp <= 0x177) return (cp & 1) == 1;
    if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) == 0;
    if (cp == 0x17F) return true;  // long s
    if (cp >= 0x3AC && cp <= 0x3CE) return true;
    if (cp >= 0x430 && cp <= 0x45F) return true;
    return false;
}

inline bool is_cased(char32_t cp) { return is_upper(cp) || is_lower(cp); }

inline bool is_letter(char32_t cp) {
    return is_cased(cp) || cp == 0x138 || cp == 0xAA || cp == 0xBA;
}

inline bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

/// Simple case fold (lowercase mapping plus final-sigma normalization).
inline char32_t fold(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if ((cp >= 0xC0 && cp <= 0xD6) || (cp >= 0xD8 && cp <= 0xDE)) return cp + 0x20;
    if (cp == 0x130) return U'i';  // I with dot above
    if (cp >= 0x100 && cp <= 0x137) return (cp & 1) == 0 ? cp + 1 : cp;
    if (cp >= 0x139 && cp <= 0x148) return (cp & 1) == 1 ? cp + 1 : cp;
    if (cp >= 0x14A && cp <= 0x177) return (cp & 1) == 0 ? cp + 1 : cp;
    if (cp == 0x178) return 0xFF;
    if (cp >= 0x179 && cp <= 0x17E) return (cp & 1) == 1 ? cp + 1 : cp;
    if (cp == 0x386) return 0x3AC;
    if (cp >= 0x388 && cp <= 0x38A) return cp + 0x25;
    if (cp == 0x38C) return 0x3CC;
    if (cp == 0x38E || cp == 0x38F) return cp + 0x3F;
    if ((cp >= 0x391 && cp <= 0x3A1) || (cp >= 0x3A3 && cp <= 0x3AB)) return cp + 0x20;
    if (cp == 0x3C2) return 0x3C3;  // final sigma
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    return cp;
}

inline std::string fold(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : decode_utf8(s)) encode_utf8(fold(cp), out);
    return out;
}

inline std::size_t codepoint_count(std::string_view s) { return decode_utf8(s).size(); }

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_ascii_space(s[b])) ++b;
    while (e > b && is_ascii_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

inline bool is_strippable_punct(char32_t cp) {
    if (cp < 0x80) return !(is_letter(cp) || is_digit(cp));
    // common non-ASCII punctuation seen around words; unknown letters stay
    if (cp == 0xAB || cp == 0xBB || cp == 0xA1 || cp == 0xBF) return true;
    if (cp >= 0x2010 && cp <= 0x2027) return true;  // dashes, quotes, bullets
    if (cp == 0x2039 || cp == 0x203A || cp == 0x2026) return true;
    return false;
}

/// Strips leading/trailing punctuation ("Marie," -> "Marie"); interior
/// characters such as the apostrophe in "Mary's" are untouched.
inline std::string strip_affix_punct(std::string_view s) {
    std::vector<char32_t> cps = decode_utf8(s);
    std::size_t b = 0, e = cps.size();
    while (b < e && is_strippable_punct(cps[b])) ++b;
    while (e > b && is_strippable_punct(cps[e - 1])) --e;
    std::string out;
    for (std::size_t i = b; i < e; ++i) encode_utf8(cps[i], out);
    return out;
}

inline std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (is_ascii_space(c)) {
            if (!cur.empty()) {
                out.push_back(cur);
                cur.clear();
            }
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace text
}  // namespace maplink
