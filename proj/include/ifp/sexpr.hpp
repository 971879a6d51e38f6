#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ifp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// an error that already carries a source position
struct PosError : Error {
    using Error::Error;
};

struct Pos {
    std::string file;
    int line = 0;
    int col = 0;
    std::string str() const;
};

struct SExpr {
    bool atom = true;
    bool quoted = false;
    std::string text;
    std::vector<SExpr> items;
    Pos pos;

    bool is(std::string_view s) const { return atom && !quoted && text == s; }
    bool is_list() const { return !atom; }
    size_t size() const { return items.size(); }
    const SExpr &operator[](size_t i) const { return items.at(i); }
    bool head_is(std::string_view s) const { return !atom && !items.empty() && items[0].is(s); }
    std::string str() const;
};

[[noreturn]] void fail_at(const Pos &p, const std::string &msg);

std::vector<SExpr> read_sexprs(std::string_view src, const std::string &file = "<input>");
SExpr read_sexpr(std::string_view src, const std::string &file = "<input>");

}
