// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 idrecon contributors

#include "idrecon/list_interpreter.hpp"

#include "idrecon/error.hpp"

namespace idrecon {
namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

class ListParser {
  public:
    explicit ListParser(std::string_view text) : text_(text) {}

    std::vector<std::string> parse() {
        skip_ws();
        if (at_end()) throw ParseError(pos_, "expected '['");
        if (text_[pos_] != '[') throw ParseError(pos_, "expected '['");
        ++pos_;
        std::vector<std::string> out;
        skip_ws();
        if (peek(']')) {
            ++pos_;
            return finish(std::move(out));
        }
        for (;;) {
            out.push_back(parse_string());
            skip_ws();
            if (at_end()) throw ParseError(pos_, "unbalanced bracket");
            if (text_[pos_] == ']') {
                ++pos_;
                return finish(std::move(out));
            }
            if (text_[pos_] != ',') throw ParseError(pos_, "expected ',' or ']'");
            ++pos_;
            skip_ws();
            if (peek(']')) {
                ++pos_;
                return finish(std::move(out));
            }
        }
    }

  private:
    std::vector<std::string> finish(std::vector<std::string> out) {
        skip_ws();
        if (!at_end()) throw ParseError(pos_, "trailing characters after list");
        return out;
    }

    std::string parse_string() {
        if (at_end()) throw ParseError(pos_, "unbalanced bracket");
        char quote = text_[pos_];
        if (quote != '\'' && quote != '"') throw ParseError(pos_, "bare unquoted token");
        std::size_t start = pos_;
        ++pos_;
        std::string value;
        while (!at_end()) {
            char c = text_[pos_];
            if (c == quote) {
                ++pos_;
                return value;
            }
            if (c == '\n') throw ParseError(start, "unterminated quote");
            if (c == '\\') {
                if (pos_ + 1 >= text_.size()) throw ParseError(start, "unterminated quote");
                char e = text_[pos_ + 1];
                switch (e) {
                    case '\\': value.push_back('\\'); break;
                    case '\'': value.push_back('\''); break;
                    case '"': value.push_back('"'); break;
                    case 'n': value.push_back('\n'); break;
                    case 't': value.push_back('\t'); break;
                    case 'r': value.push_back('\r'); break;
                    default: throw ParseError(pos_, "unknown escape");
                }
                pos_ += 2;
                continue;
            }
            value.push_back(c);
            ++pos_;
        }
        throw ParseError(start, "unterminated quote");
    }

    void skip_ws() {
        while (!at_end() && is_ws(text_[pos_])) ++pos_;
    }
    [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
    [[nodiscard]] bool peek(char c) const { return !at_end() && text_[pos_] == c; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::string> interpret_list_output(std::string_view text) {
    return ListParser(text).parse();
}

std::string serialize_list(const std::vector<std::string>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out.push_back('\'');
        for (char c : values[i]) {
            switch (c) {
                case '\\': out += "\\\\"; break;
                case '\'': out += "\\'"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default: out.push_back(c);
            }
        }
        out.push_back('\'');
    }
    out.push_back(']');
    return out;
}

}  // namespace idrecon
