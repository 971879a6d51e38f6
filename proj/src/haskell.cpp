#include "ifp/haskell.hpp"

#include <cctype>
#include <cstdio>

namespace ifp {

namespace {

const std::set<std::string> hs_reserved = {
    "case", "class", "data", "default", "deriving", "do", "else", "foreign", "if", "import", "in",
    "infix", "infixl", "infixr", "instance", "let", "module", "newtype", "of", "then", "type", "where",
    "rec", "bot", "main"};

std::string tvar_name(const std::string &v) {
    std::string r;
    for (char c : v) r += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    if (r.empty() || !std::islower(static_cast<unsigned char>(r[0]))) r = "t" + r;
    return r;
}

bool atomic(const std::string &s) {
    if (s.find(' ') == std::string::npos) return true;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ' ' && depth == 0) return false;
    }
    return s.front() == '(' && s.back() == ')';
}

std::string paren(const std::string &s) { return atomic(s) ? s : "(" + s + ")"; }

std::string ty(const TypeP &t, const std::map<std::string, std::string> &env, HsTypes &out) {
    switch (t->kind) {
    case TK::Var: {
        auto it = env.find(t->name);
        return it != env.end() ? it->second : tvar_name(t->name);
    }
    case TK::One:
        return "One";
    case TK::Sum:
        return "Either " + paren(ty(t->a, env, out)) + " " + paren(ty(t->b, env, out));
    case TK::Prod:
        return "(" + ty(t->a, env, out) + ", " + ty(t->b, env, out) + ")";
    case TK::Arrow: {
        std::string a = ty(t->a, env, out);
        if (t->a->kind == TK::Arrow) a = "(" + a + ")";
        return a + " -> " + ty(t->b, env, out);
    }
    case TK::Fix: {
        std::string n = fix_type_name(t);
        auto fv = type_fv(t);
        std::vector<std::string> params(fv.begin(), fv.end());
        if (!out.decls.count(n)) {
            HsDecl d{n, {}, ""};
            std::string head = n;
            for (auto &p : params) {
                d.params.push_back(tvar_name(p));
                head += " " + tvar_name(p);
            }
            out.decls[n] = d;
            std::map<std::string, std::string> inner;
            for (auto &p : params) inner[p] = tvar_name(p);
            inner[t->name] = params.empty() ? n : "(" + head + ")";
            out.decls[n].body = ty(t->a, inner, out);
        }
        std::string use = n;
        for (auto &p : params) {
            auto it = env.find(p);
            use += " " + paren(it != env.end() ? it->second : tvar_name(p));
        }
        return use;
    }
    }
    return "One";
}

struct Printer {
    HsTypes &types;

    std::string var(const std::string &x) {
        std::string r;
        for (char c : x) r += std::isalnum(static_cast<unsigned char>(c)) || c == '\'' || c == '_' ? c : '_';
        if (r.empty() || !(std::islower(static_cast<unsigned char>(r[0])) || r[0] == '_')) r = "v" + r;
        if (hs_reserved.count(r) || r.rfind("roll_", 0) == 0 || r.rfind("unroll_", 0) == 0) r += "_";
        return r;
    }

    std::string pat(const Clause &c) {
        switch (c.ctor) {
        case Ctor::Nil: return "Nil";
        case Ctor::Left: return "Left " + var(c.vars[0]);
        case Ctor::Right: return "Right " + var(c.vars[0]);
        case Ctor::Pair: return "(" + var(c.vars[0]) + ", " + var(c.vars[1]) + ")";
        }
        return "_";
    }

    std::string expr(const ProgP &m) {
        switch (m->kind) {
        case PK::Var: return var(m->name);
        case PK::Nil: return "Nil";
        case PK::Bot: return "bot";
        case PK::Left: return "Left " + paren(expr(m->a));
        case PK::Right: return "Right " + paren(expr(m->a));
        case PK::Pair: return "(" + expr(m->a) + ", " + expr(m->b) + ")";
        case PK::Lam: return "(\\" + var(m->name) + " -> " + expr(m->a) + ")";
        case PK::App: return expr(m->a) + " " + paren(expr(m->b));
        case PK::Rec: return "rec " + paren(expr(m->a));
        case PK::Roll:
        case PK::Unroll: {
            emit_type(m->type, types);
            return std::string(m->kind == PK::Roll ? "roll_" : "unroll_") + fix_type_name(m->type);
        }
        case PK::Case: {
            std::string s = "(case " + expr(m->a) + " of { ";
            for (size_t i = 0; i < m->clauses.size(); ++i) {
                if (i) s += "; ";
                s += pat(m->clauses[i]) + " -> " + expr(m->clauses[i].body);
            }
            return s + " })";
        }
        }
        return "bot";
    }
};

}

std::string fix_type_name(const TypeP &fix) {
    std::string s = print_type_canonical(fix);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "T%08llx", static_cast<unsigned long long>(h & 0xffffffffull));
    return buf;
}

std::string emit_type(const TypeP &t, HsTypes &out) { return ty(t, {}, out); }

std::string haskell_ident(const std::string &name) {
    std::string r;
    for (char c : name) r += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    if (r.empty() || !std::islower(static_cast<unsigned char>(r[0]))) r = "thm_" + r;
    if (hs_reserved.count(r)) r += "_";
    return r;
}

std::string EmittedModule::text() const {
    std::string s = preamble;
    for (auto &d : declarations) s += "\n" + d;
    s += "\n" + definition;
    return s;
}

EmittedModule emit_program(const std::string &name, const ProgP &typed, const TypeP &type) {
    HsTypes types;
    Printer pr{types};
    std::string sig = emit_type(type, types);
    std::string body = pr.expr(typed);
    std::string id = haskell_ident(name);

    EmittedModule m;
    m.preamble =
        "module Extracted where\n"
        "\n"
        "data One = Nil deriving Show\n"
        "\n"
        "rec :: (a -> a) -> a\n"
        "rec f = f (rec f)\n"
        "\n"
        "bot :: a\n"
        "bot = bot\n";
    for (auto &[n, d] : types.decls) {
        std::string head = n;
        for (auto &p : d.params) head += " " + p;
        std::string s = "data " + head + " = " + n + " (" + d.body + ")\n";
        s += "\nroll_" + n + " :: " + d.body + " -> " + head + "\n";
        s += "roll_" + n + " x = " + n + " x\n";
        s += "\nunroll_" + n + " :: " + head + " -> " + d.body + "\n";
        s += "unroll_" + n + " (" + n + " x) = x\n";
        m.declarations.push_back(s);
    }
    m.definition = id + " :: " + sig + "\n" + id + " = " + body + "\n";
    return m;
}

}
