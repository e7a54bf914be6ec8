#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "situwalk/errors.hpp"
#include "situwalk/text.hpp"

namespace situwalk {

/// Predicate IRIs used across the project, bit-exact.
namespace vocab {
inline constexpr std::string_view kFoafKnows = "http://xmlns.com/foaf/0.1/knows";
inline constexpr std::string_view kFoafInterest = "http://xmlns.com/foaf/0.1/interest";
inline constexpr std::string_view kFoafBasedNear = "http://xmlns.com/foaf/0.1/based_near";
inline constexpr std::string_view kRdfsLabel = "http://www.w3.org/2000/01/rdf-schema#label";
inline constexpr std::string_view kSkosBroader = "http://www.w3.org/2004/02/skos/core#broader";
inline constexpr std::string_view kDctermsSubject = "http://purl.org/dc/terms/subject";
inline constexpr std::string_view kCategoryPrefix = "http://dbpedia.org/resource/Category:";
} // namespace vocab

/// An IRI or a literal with an optional language tag. IRIs are stored without
/// angle brackets; language tags lowercased.
struct Term {
    enum class Kind { Iri, Literal };

    Kind kind;
    std::string value;
    std::string lang; // literals only, may be empty

    static Term iri(std::string v) {
        if (v.empty()) throw DomainError("empty IRI");
        return {Kind::Iri, std::move(v), {}};
    }
    static Term literal(std::string v, std::string language = {}) {
        std::transform(language.begin(), language.end(), language.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        return {Kind::Literal, std::move(v), std::move(language)};
    }

    bool is_iri() const noexcept { return kind == Kind::Iri; }

    friend auto operator<=>(const Term&, const Term&) = default;
};

struct Triple {
    std::string subject;   // IRI
    std::string predicate; // IRI
    Term object;

    friend auto operator<=>(const Triple&, const Triple&) = default;
};

namespace detail {

inline std::string unescape_literal(std::string_view body, std::size_t line) {
    std::string out;
    out.reserve(body.size());
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] != '\\') {
            out.push_back(body[i]);
            continue;
        }
        if (i + 1 >= body.size()) throw ParseError("dangling escape in literal", line);
        switch (body[++i]) {
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            default: throw ParseError(std::string("unsupported escape \\") + body[i], line);
        }
    }
    return out;
}

inline std::string escape_literal(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool done() { return pos >= text.size(); }

    std::string iri() {
        skip_ws();
        if (done() || text[pos] != '<') throw ParseError("expected '<'", line);
        const auto end = text.find('>', pos + 1);
        if (end == std::string_view::npos) throw ParseError("unterminated IRI", line);
        std::string out(text.substr(pos + 1, end - pos - 1));
        if (out.empty()) throw ParseError("empty IRI", line);
        if (out.find_first_of(" \t<") != std::string::npos)
            throw ParseError("whitespace or '<' inside IRI", line);
        pos = end + 1;
        return out;
    }

    Term object() {
        skip_ws();
        if (done()) throw ParseError("missing object", line);
        if (text[pos] == '<') return Term::iri(iri());
        if (text[pos] == '_') throw ParseError("blank nodes are not supported", line);
        if (text[pos] != '"') throw ParseError("expected IRI or literal object", line);
        // find the closing unescaped quote
        std::size_t i = pos + 1;
        while (i < text.size()) {
            if (text[i] == '\\') {
                i += 2;
                continue;
            }
            if (text[i] == '"') break;
            ++i;
        }
        if (i >= text.size()) throw ParseError("unterminated literal", line);
        std::string value = unescape_literal(text.substr(pos + 1, i - pos - 1), line);
        pos = i + 1;
        std::string lang;
        if (pos < text.size() && text[pos] == '@') {
            std::size_t j = pos + 1;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '-'))
                ++j;
            lang = std::string(text.substr(pos + 1, j - pos - 1));
            if (lang.empty()) throw ParseError("empty language tag", line);
            pos = j;
        } else if (pos + 1 < text.size() && text[pos] == '^' && text[pos + 1] == '^') {
            throw ParseError("datatyped literals are not supported", line);
        }
        return Term::literal(std::move(value), std::move(lang));
    }

    void terminator() {
        skip_ws();
        if (done() || text[pos] != '.') throw ParseError("missing terminating '.'", line);
        ++pos;
        skip_ws();
        if (!done()) throw ParseError("trailing content after '.'", line);
    }
};

} // namespace detail

/// Parses the N-Triples subset used here: `<s> <p> <o> .` and
/// `<s> <p> "literal"[@lang] .`, with '#' comments and blank lines skipped.
/// Any malformed line aborts the whole parse.
inline std::vector<Triple> parse_ntriples(std::string_view text) {
    std::vector<Triple> out;
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& raw = lines[i];
        const std::string stripped = trim(raw);
        if (stripped.empty() || stripped[0] == '#') continue;
        detail::Cursor cur{raw, 0, i + 1};
        Triple t;
        t.subject = cur.iri();
        t.predicate = cur.iri();
        t.object = cur.object();
        cur.terminator();
        out.push_back(std::move(t));
    }
    return out;
}

inline std::string serialize_triple(const Triple& t) {
    std::string out = "<" + t.subject + "> <" + t.predicate + "> ";
    if (t.object.is_iri()) {
        out += "<" + t.object.value + ">";
    } else {
        out += "\"" + detail::escape_literal(t.object.value) + "\"";
        if (!t.object.lang.empty()) out += "@" + t.object.lang;
    }
    out += " .";
    return out;
}

inline std::string serialize_ntriples(const std::vector<Triple>& triples) {
    std::string out;
    for (const auto& t : triples) {
        out += serialize_triple(t);
        out += '\n';
    }
    return out;
}

struct TriplePattern {
    std::optional<std::string> subject;
    std::optional<std::string> predicate;
    std::optional<Term> object;

    bool unconstrained() const { return !subject && !predicate && !object; }
};

/// Immutable set of triples with per-position indexes. Duplicates collapse on
/// construction; iteration order is (subject, predicate, object).
class TripleStore {
public:
    TripleStore() = default;

    explicit TripleStore(std::vector<Triple> triples) : triples_(std::move(triples)) {
        std::sort(triples_.begin(), triples_.end());
        triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
        for (std::size_t i = 0; i < triples_.size(); ++i) {
            by_subject_[triples_[i].subject].push_back(i);
            by_predicate_[triples_[i].predicate].push_back(i);
            if (triples_[i].object.is_iri()) by_object_iri_[triples_[i].object.value].push_back(i);
        }
    }

    static TripleStore from_file(const std::string& path) {
        return TripleStore(parse_ntriples(read_file(path)));
    }

    const std::vector<Triple>& triples() const noexcept { return triples_; }
    std::size_t size() const noexcept { return triples_.size(); }

    bool mentions(const std::string& iri) const {
        return by_subject_.count(iri) > 0 || by_object_iri_.count(iri) > 0 ||
               by_predicate_.count(iri) > 0;
    }

    /// All triples matching the bound positions of the pattern, in store
    /// order. A fully unbound pattern scans the whole store.
    std::vector<Triple> query(const TriplePattern& p) const {
        const std::vector<std::size_t>* candidates = nullptr;
        if (p.subject) candidates = find(by_subject_, *p.subject);
        else if (p.predicate) candidates = find(by_predicate_, *p.predicate);
        else if (p.object && p.object->is_iri()) candidates = find(by_object_iri_, p.object->value);

        std::vector<Triple> out;
        auto matches = [&](const Triple& t) {
            if (p.subject && t.subject != *p.subject) return false;
            if (p.predicate && t.predicate != *p.predicate) return false;
            if (p.object && !(t.object == *p.object)) return false;
            return true;
        };
        if (candidates) {
            for (std::size_t i : *candidates)
                if (matches(triples_[i])) out.push_back(triples_[i]);
            std::sort(out.begin(), out.end());
        } else {
            for (const auto& t : triples_)
                if (matches(t)) out.push_back(t);
        }
        return out;
    }

    std::vector<Triple> query(std::optional<std::string> s, std::optional<std::string> pred,
                              std::optional<Term> o) const {
        return query(TriplePattern{std::move(s), std::move(pred), std::move(o)});
    }

private:
    static const std::vector<std::size_t>* find(
        const std::map<std::string, std::vector<std::size_t>>& index, const std::string& key) {
        auto it = index.find(key);
        static const std::vector<std::size_t> kEmpty;
        return it == index.end() ? &kEmpty : &it->second;
    }

    std::vector<Triple> triples_;
    std::map<std::string, std::vector<std::size_t>> by_subject_;
    std::map<std::string, std::vector<std::size_t>> by_predicate_;
    std::map<std::string, std::vector<std::size_t>> by_object_iri_;
};

} // namespace situwalk
