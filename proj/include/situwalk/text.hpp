#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "situwalk/errors.hpp"

namespace situwalk {

inline std::string trim(std::string_view s) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    std::size_t b = 0, e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

/// Canonical token form: trimmed, ASCII letters lowercased, runs of
/// whitespace/underscores collapsed to a single underscore. Non-ASCII bytes
/// pass through untouched, so accented vocabulary ("musée", "été") must be
/// written in lowercase in data files.
inline std::string normalize_token(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_sep = false;
    bool seen_any = false;
    for (unsigned char c : raw) {
        if (std::isspace(c) || c == '_') {
            if (seen_any) pending_sep = true;
            continue;
        }
        if (pending_sep) {
            out.push_back('_');
            pending_sep = false;
        }
        out.push_back(static_cast<char>(std::tolower(c)));
        seen_any = true;
    }
    return out;
}

/// Surface form shown to users: underscores back to spaces.
inline std::string token_surface(std::string_view token) {
    std::string out(token);
    std::replace(out.begin(), out.end(), '_', ' ');
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Splits text into lines; tolerates trailing newline and CRLF endings.
inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            if (i == text.size() && start == i) break;
            std::string_view line = text.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.emplace_back(line);
            start = i + 1;
        }
    }
    return lines;
}

/// TSV rows of a file, skipping blank lines and '#' comments. Each row keeps
/// its original 1-based line number for error reporting.
struct TsvRow {
    std::size_t line;
    std::vector<std::string> fields;
};

inline std::vector<TsvRow> read_tsv(const std::string& path) {
    std::vector<TsvRow> rows;
    const auto lines = split_lines(read_file(path));
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (trim(line).empty() || line.starts_with('#')) continue;
        rows.push_back({i + 1, split(line, '\t')});
    }
    return rows;
}

} // namespace situwalk
