#include "ifp/sexpr.hpp"

#include <cctype>

namespace ifp {

std::string Pos::str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(col);
}

void fail_at(const Pos &p, const std::string &msg) {
    throw PosError(p.str() + ": " + msg);
}

std::string SExpr::str() const {
    if (atom) {
        return quoted ? "\"" + text + "\"" : text;
    }
    std::string s = "(";
    for (size_t i = 0; i < items.size(); ++i) {
        if (i) s += ' ';
        s += items[i].str();
    }
    return s + ")";
}

namespace {

struct Reader {
    std::string_view src;
    std::string file;
    size_t i = 0;
    int line = 1, col = 1;

    Pos here() const { return Pos{file, line, col}; }

    void bump() {
        if (src[i] == '\n') {
            ++line;
            col = 1;
        } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
            ++col;
        }
        ++i;
    }

    void skip() {
        while (i < src.size()) {
            char c = src[i];
            if (c == ';') {
                while (i < src.size() && src[i] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    SExpr read() {
        skip();
        if (i >= src.size()) fail_at(here(), "unexpected end of input");
        SExpr e;
        e.pos = here();
        char c = src[i];
        if (c == '(') {
            e.atom = false;
            bump();
            for (;;) {
                skip();
                if (i >= src.size()) fail_at(e.pos, "unclosed parenthesis");
                if (src[i] == ')') {
                    bump();
                    break;
                }
                e.items.push_back(read());
            }
            return e;
        }
        if (c == ')') fail_at(here(), "unexpected ')'");
        if (c == '"') {
            bump();
            e.quoted = true;
            while (i < src.size() && src[i] != '"') {
                e.text += src[i];
                bump();
            }
            if (i >= src.size()) fail_at(e.pos, "unterminated string");
            bump();
            return e;
        }
        while (i < src.size()) {
            char d = src[i];
            if (d == '(' || d == ')' || d == ';' || d == '"' || std::isspace(static_cast<unsigned char>(d))) break;
            e.text += d;
            bump();
        }
        return e;
    }
};

}

std::vector<SExpr> read_sexprs(std::string_view src, const std::string &file) {
    Reader r{src, file};
    std::vector<SExpr> out;
    for (;;) {
        r.skip();
        if (r.i >= src.size()) break;
        out.push_back(r.read());
    }
    return out;
}

SExpr read_sexpr(std::string_view src, const std::string &file) {
    auto v = read_sexprs(src, file);
    if (v.size() != 1) throw Error(file + ": expected exactly one expression");
    return v[0];
}

}
