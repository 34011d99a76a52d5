#pragma once

#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "syzygy/errors.hpp"

namespace artin {

/// One parsed term: integer coefficient times a product of named atoms with
/// positive integer exponents.
struct PolyTerm {
    long long coeff = 1;
    std::map<std::string, unsigned> powers;
};

/// Parses expressions like "x^2 - 3*x*y + 2" into a term list. Grammar:
///   poly   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := integer | name ['^' integer]
/// Names are identifiers; whitespace is ignored.
inline std::vector<PolyTerm> parse_poly_terms(const std::string& text) {
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto fail = [&](const std::string& msg) -> void {
        throw validation_error(validation_code::bad_input,
                               "polynomial parse error at offset " + std::to_string(pos) + ": " + msg + " in \"" +
                                   text + "\"");
    };
    auto parse_int = [&]() -> long long {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected integer");
        return std::stoll(text.substr(start, pos - start));
    };
    auto parse_name = [&]() -> std::string {
        skip_ws();
        std::size_t start = pos;
        if (pos >= text.size() ||
            !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            fail("expected name");
        ++pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return text.substr(start, pos - start);
    };

    std::vector<PolyTerm> terms;
    skip_ws();
    if (pos == text.size()) fail("empty polynomial");
    bool negate = false;
    if (text[pos] == '-') {
        negate = true;
        ++pos;
    } else if (text[pos] == '+') {
        ++pos;
    }
    while (true) {
        PolyTerm term;
        term.coeff = negate ? -1 : 1;
        bool saw_factor = false;
        while (true) {
            skip_ws();
            if (pos >= text.size()) break;
            char c = text[pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                term.coeff *= parse_int();
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = parse_name();
                unsigned exp = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    long long e = parse_int();
                    if (e < 0) fail("negative exponent");
                    exp = static_cast<unsigned>(e);
                }
                term.powers[name] += exp;
            } else {
                fail("unexpected character");
            }
            saw_factor = true;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        if (!saw_factor) fail("empty term");
        terms.push_back(std::move(term));
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] == '+') {
            negate = false;
            ++pos;
        } else if (text[pos] == '-') {
            negate = true;
            ++pos;
        } else {
            fail("expected '+' or '-'");
        }
    }
    return terms;
}

} // namespace artin
