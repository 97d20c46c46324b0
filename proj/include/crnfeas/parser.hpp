#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crnfeas/errors.hpp"
#include "crnfeas/network.hpp"
#include "crnfeas/rational.hpp"

namespace crnfeas {
namespace detail {

inline bool is_ident_start(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
inline bool is_ident_char(char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

/// Cursor over one DSL line; 1-based column reporting.
struct LineScanner {
    const std::string& text;
    std::size_t line_no;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }
    std::size_t column() const { return pos + 1; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_no, column());
    }

    bool try_consume(const std::string& token) {
        skip_ws();
        if (text.compare(pos, token.size(), token) == 0) {
            pos += token.size();
            return true;
        }
        return false;
    }

    void expect(const std::string& token, const std::string& what) {
        if (!try_consume(token)) fail("expected " + what);
    }

    std::string identifier() {
        skip_ws();
        if (pos >= text.size() || !is_ident_start(text[pos])) fail("expected identifier");
        std::size_t start = pos;
        while (pos < text.size() && is_ident_char(text[pos])) ++pos;
        return text.substr(start, pos - start);
    }

    /// Decimal or fraction literal, converted exactly.
    Rational number() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
        while (pos < text.size() && is_digit(text[pos])) ++pos;
        if (pos < text.size() && text[pos] == '.') {
            ++pos;
            while (pos < text.size() && is_digit(text[pos])) ++pos;
        } else if (pos < text.size() && text[pos] == '/') {
            ++pos;
            while (pos < text.size() && is_digit(text[pos])) ++pos;
        }
        Rational q;
        if (pos == start || !try_parse_rational(text.substr(start, pos - start), q)) {
            pos = start;
            fail("expected number");
        }
        return q;
    }
};

struct RawTerm {
    Rational coefficient;
    std::string species;
    std::size_t column;
};

struct RawReaction {
    std::string label;
    std::size_t label_column;
    std::vector<RawTerm> reactant;  // empty = zero complex
    std::vector<RawTerm> product;
    bool reversible = false;
    Rational kf, kb;
    bool has_kb = false;
    std::size_t line;
    std::size_t kf_column = 0, kb_column = 0;
};

/// side := "0" | term ("+" term)*
inline std::vector<RawTerm> parse_side(LineScanner& sc) {
    sc.skip_ws();
    // A lone "0" is the zero complex; "0.1"/"0/2" start a coefficient.
    if (sc.pos < sc.text.size() && sc.text[sc.pos] == '0' &&
        (sc.pos + 1 >= sc.text.size() ||
         (!is_ident_char(sc.text[sc.pos + 1]) && sc.text[sc.pos + 1] != '.' &&
          sc.text[sc.pos + 1] != '/'))) {
        ++sc.pos;
        return {};
    }
    std::vector<RawTerm> terms;
    for (;;) {
        sc.skip_ws();
        const std::size_t col = sc.column();
        Rational coeff = 1;
        if (sc.pos < sc.text.size() && (is_digit(sc.text[sc.pos]) || sc.text[sc.pos] == '.')) {
            coeff = sc.number();
            if (coeff <= 0) throw ParseError("stoichiometric coefficient must be positive", sc.line_no, col);
        }
        terms.push_back(RawTerm{coeff, sc.identifier(), col});
        if (!sc.try_consume("+")) break;
    }
    return terms;
}

inline RawReaction parse_line(const std::string& line, std::size_t line_no) {
    LineScanner sc{line, line_no};
    RawReaction rx;
    rx.line = line_no;

    sc.skip_ws();
    rx.label_column = sc.column();
    rx.label = sc.identifier();
    sc.expect(":", "':' after reaction label");

    rx.reactant = parse_side(sc);
    if (sc.try_consume("<->")) {
        rx.reversible = true;
    } else if (sc.try_consume("->")) {
        rx.reversible = false;
    } else {
        sc.fail("expected '->' or '<->'");
    }
    rx.product = parse_side(sc);

    sc.expect(";", "';' before rate constants");
    sc.expect("kf", "'kf='");
    sc.expect("=", "'kf='");
    sc.skip_ws();
    rx.kf_column = sc.column();
    rx.kf = sc.number();
    if (sc.try_consume("kb")) {
        sc.expect("=", "'kb='");
        sc.skip_ws();
        rx.kb_column = sc.column();
        rx.kb = sc.number();
        rx.has_kb = true;
    }
    if (!sc.at_end()) sc.fail("unexpected trailing input");
    return rx;
}

}  // namespace detail

/// Parses the reaction-network DSL into a validated network.
///
/// Grammar (line-oriented, '#' starts a comment):
///   LABEL ":" side ("->" | "<->") side ";" "kf=" number ["kb=" number]
///   side  = "0" | term ("+" term)*
///   term  = [coefficient] species_name
/// Coefficients are decimals or fractions p/q, converted exactly to rationals.
inline ReactionNetwork parse_network(const std::string& text) {
    std::vector<detail::RawReaction> raw;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        bool blank = true;
        for (char c : line)
            if (c != ' ' && c != '\t' && c != '\r') blank = false;
        if (!blank) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            raw.push_back(detail::parse_line(line, line_no));
        }
        start = end + 1;
    }
    if (raw.empty()) throw ParseError("no reactions found", 1, 1);

    ReactionNetwork net;

    // Species in first-appearance order.
    auto species_index = [&net](const std::string& name) -> std::size_t {
        for (const auto& s : net.species)
            if (s.name == name) return s.index;
        net.species.push_back(Species{name, net.species.size()});
        return net.species.size() - 1;
    };
    for (const auto& rx : raw) {
        for (const auto& t : rx.reactant) species_index(t.species);
        for (const auto& t : rx.product) species_index(t.species);
    }
    const std::size_t n = net.species.size();

    auto build_stoich = [&](const std::vector<detail::RawTerm>& terms) {
        RatVector v(n, Rational(0));
        for (const auto& t : terms) v[species_index(t.species)] += t.coefficient;
        return v;
    };

    for (const auto& rx : raw) {
        for (const auto& prev : net.reactions) {
            if (prev.label == rx.label)
                throw ParseError("duplicate reaction label '" + rx.label + "'", rx.line, rx.label_column);
        }
        Reaction r;
        r.label = rx.label;
        r.reactant = find_or_add_complex(net, build_stoich(rx.reactant));
        r.product = find_or_add_complex(net, build_stoich(rx.product));
        if (r.reactant == r.product)
            throw ParseError("reactant equals product in reaction '" + rx.label + "'", rx.line, rx.label_column);
        r.reversible = rx.reversible;
        if (rx.kf <= 0) throw ParseError("nonpositive rate kf", rx.line, rx.kf_column);
        r.kf = rx.kf;
        if (rx.reversible) {
            if (!rx.has_kb)
                throw ParseError("reversible reaction '" + rx.label + "' requires kb", rx.line, rx.label_column);
            if (rx.kb <= 0) throw ParseError("nonpositive rate kb", rx.line, rx.kb_column);
            r.kb = rx.kb;
        } else if (rx.has_kb) {
            throw ParseError("kb given for irreversible reaction '" + rx.label + "'", rx.line, rx.kb_column);
        }
        net.reactions.push_back(std::move(r));
    }
    return net;
}

}  // namespace crnfeas
