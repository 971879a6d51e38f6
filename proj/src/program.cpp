#include "ifp/program.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace ifp {

int ctor_arity(Ctor c) {
    switch (c) {
    case Ctor::Nil: return 0;
    case Ctor::Pair: return 2;
    default: return 1;
    }
}

const char *ctor_name(Ctor c) {
    switch (c) {
    case Ctor::Nil: return "Nil";
    case Ctor::Left: return "Left";
    case Ctor::Right: return "Right";
    case Ctor::Pair: return "Pair";
    }
    return "?";
}

static std::shared_ptr<Prog> mk(PK k) {
    auto p = std::make_shared<Prog>();
    p->kind = k;
    return p;
}

ProgP p_var(const std::string &x) {
    auto p = mk(PK::Var);
    p->name = x;
    return p;
}

ProgP p_nil() {
    static const ProgP n = mk(PK::Nil);
    return n;
}

ProgP p_left(ProgP a) {
    auto p = mk(PK::Left);
    p->a = std::move(a);
    return p;
}

ProgP p_right(ProgP a) {
    auto p = mk(PK::Right);
    p->a = std::move(a);
    return p;
}

ProgP p_pair(ProgP a, ProgP b) {
    auto p = mk(PK::Pair);
    p->a = std::move(a);
    p->b = std::move(b);
    return p;
}

ProgP p_ctor(Ctor c, std::vector<ProgP> args) {
    switch (c) {
    case Ctor::Nil: return p_nil();
    case Ctor::Left: return p_left(args.at(0));
    case Ctor::Right: return p_right(args.at(0));
    case Ctor::Pair: return p_pair(args.at(0), args.at(1));
    }
    return p_bot();
}

ProgP p_case(ProgP scrut, std::vector<Clause> cls) {
    for (size_t i = 0; i < cls.size(); ++i) {
        if (static_cast<int>(cls[i].vars.size()) != ctor_arity(cls[i].ctor))
            throw Error(std::string("clause arity mismatch for ") + ctor_name(cls[i].ctor));
        for (size_t j = 0; j < i; ++j)
            if (cls[j].ctor == cls[i].ctor) throw Error("duplicate constructor in case clauses");
    }
    auto p = mk(PK::Case);
    p->a = std::move(scrut);
    p->clauses = std::move(cls);
    return p;
}

ProgP p_lam(const std::string &x, ProgP body) {
    auto p = mk(PK::Lam);
    p->name = x;
    p->a = std::move(body);
    return p;
}

ProgP p_app(ProgP f, ProgP x) {
    auto p = mk(PK::App);
    p->a = std::move(f);
    p->b = std::move(x);
    return p;
}

ProgP p_apps(ProgP f, std::vector<ProgP> xs) {
    for (auto &x : xs) f = p_app(f, x);
    return f;
}

ProgP p_rec(ProgP m) {
    auto p = mk(PK::Rec);
    p->a = std::move(m);
    return p;
}

ProgP p_bot() {
    static const ProgP b = mk(PK::Bot);
    return b;
}

ProgP p_roll(TypeP fix) {
    auto p = mk(PK::Roll);
    p->type = std::move(fix);
    return p;
}

ProgP p_unroll(TypeP fix) {
    auto p = mk(PK::Unroll);
    p->type = std::move(fix);
    return p;
}

static std::string fresh_for(const std::string &base, const std::set<std::string> &avoid) {
    if (!avoid.count(base)) return base;
    for (int i = 1;; ++i) {
        std::string n = base + std::to_string(i);
        if (!avoid.count(n)) return n;
    }
}

ProgP p_fst(ProgP m) { return p_case(std::move(m), {{Ctor::Pair, {"a", "b"}, p_var("a")}}); }
ProgP p_snd(ProgP m) { return p_case(std::move(m), {{Ctor::Pair, {"a", "b"}, p_var("b")}}); }
ProgP p_id() { return p_lam("a", p_var("a")); }

ProgP p_comp(ProgP m, ProgP n) {
    auto avoid = prog_fv(m);
    auto f2 = prog_fv(n);
    avoid.insert(f2.begin(), f2.end());
    std::string c = fresh_for("c", avoid);
    return p_lam(c, p_app(m, p_app(n, p_var(c))));
}

ProgP p_sumf(ProgP m, ProgP n) {
    auto avoid = prog_fv(m);
    auto f2 = prog_fv(n);
    avoid.insert(f2.begin(), f2.end());
    std::string c = fresh_for("c", avoid);
    std::string a = fresh_for("a", avoid), b = fresh_for("b", avoid);
    return p_lam(c, p_case(p_var(c), {{Ctor::Left, {a}, p_app(m, p_var(a))},
                                      {Ctor::Right, {b}, p_app(n, p_var(b))}}));
}

ProgP p_pairf(ProgP m, ProgP n) {
    auto avoid = prog_fv(m);
    auto f2 = prog_fv(n);
    avoid.insert(f2.begin(), f2.end());
    std::string c = fresh_for("c", avoid);
    return p_lam(c, p_pair(p_app(m, p_var(c)), p_app(n, p_var(c))));
}

ProgP d_minus1() { return p_left(p_left(p_nil())); }
ProgP d_one() { return p_left(p_right(p_nil())); }
ProgP d_zero() { return p_right(p_nil()); }
ProgP g_L() { return p_left(p_nil()); }
ProgP g_R() { return p_right(p_nil()); }

bool is_ctor(const ProgP &m) {
    return m->kind == PK::Nil || m->kind == PK::Left || m->kind == PK::Right || m->kind == PK::Pair;
}

bool is_value(const ProgP &m) { return is_ctor(m) || m->kind == PK::Lam; }

static void fv_rec(const ProgP &m, std::vector<std::string> &bound, std::set<std::string> &out) {
    switch (m->kind) {
    case PK::Var:
        if (std::find(bound.begin(), bound.end(), m->name) == bound.end()) out.insert(m->name);
        return;
    case PK::Lam:
        bound.push_back(m->name);
        fv_rec(m->a, bound, out);
        bound.pop_back();
        return;
    case PK::Case:
        fv_rec(m->a, bound, out);
        for (auto &c : m->clauses) {
            for (auto &v : c.vars) bound.push_back(v);
            fv_rec(c.body, bound, out);
            bound.resize(bound.size() - c.vars.size());
        }
        return;
    default:
        if (m->a) fv_rec(m->a, bound, out);
        if (m->b) fv_rec(m->b, bound, out);
    }
}

std::set<std::string> prog_fv(const ProgP &m) {
    std::vector<std::string> bound;
    std::set<std::string> out;
    fv_rec(m, bound, out);
    return out;
}

void prog_names(const ProgP &m, std::set<std::string> &out) {
    if (m->kind == PK::Var || m->kind == PK::Lam) out.insert(m->name);
    if (m->a) prog_names(m->a, out);
    if (m->b) prog_names(m->b, out);
    for (auto &c : m->clauses) {
        out.insert(c.vars.begin(), c.vars.end());
        prog_names(c.body, out);
    }
}

size_t prog_size(const ProgP &m) {
    size_t n = 1;
    if (m->a) n += prog_size(m->a);
    if (m->b) n += prog_size(m->b);
    for (auto &c : m->clauses) n += prog_size(c.body);
    return n;
}

// ---- substitution

static ProgP rebuild(const ProgP &m, ProgP a, ProgP b, std::vector<Clause> cls) {
    if (a == m->a && b == m->b) {
        bool same = cls.size() == m->clauses.size();
        for (size_t i = 0; same && i < cls.size(); ++i) same = cls[i].body == m->clauses[i].body && cls[i].vars == m->clauses[i].vars;
        if (same) return m;
    }
    auto p = std::make_shared<Prog>(*m);
    p->a = std::move(a);
    p->b = std::move(b);
    p->clauses = std::move(cls);
    return p;
}

ProgP prog_subst(const ProgP &m, const std::map<std::string, ProgP> &s0) {
    if (s0.empty()) return m;
    switch (m->kind) {
    case PK::Var: {
        auto it = s0.find(m->name);
        return it == s0.end() ? m : it->second;
    }
    case PK::Nil:
    case PK::Bot:
    case PK::Roll:
    case PK::Unroll:
        return m;
    case PK::Lam:
    case PK::Case:
        break;
    default:
        return rebuild(m, m->a ? prog_subst(m->a, s0) : nullptr, m->b ? prog_subst(m->b, s0) : nullptr, {});
    }
    auto binder = [&](const std::vector<std::string> &vars, const ProgP &body,
                      std::vector<std::string> &newvars) -> ProgP {
        std::map<std::string, ProgP> s = s0;
        for (auto &v : vars) s.erase(v);
        auto bfv = prog_fv(body);
        for (auto it = s.begin(); it != s.end();) {
            if (!bfv.count(it->first)) it = s.erase(it);
            else ++it;
        }
        newvars = vars;
        if (s.empty()) return body;
        std::set<std::string> range;
        for (auto &[k, v] : s) {
            auto f = prog_fv(v);
            range.insert(f.begin(), f.end());
        }
        std::set<std::string> avoid = range;
        avoid.insert(bfv.begin(), bfv.end());
        for (auto &v : vars) avoid.insert(v);
        for (auto &v : newvars) {
            if (range.count(v)) {
                std::string n = fresh_for(v, avoid);
                avoid.insert(n);
                s[v] = p_var(n);
                v = n;
            }
        }
        return prog_subst(body, s);
    };
    if (m->kind == PK::Lam) {
        std::vector<std::string> nv;
        auto body = binder({m->name}, m->a, nv);
        if (body == m->a && nv[0] == m->name) return m;
        return p_lam(nv[0], body);
    }
    ProgP scrut = prog_subst(m->a, s0);
    std::vector<Clause> cls;
    for (auto &c : m->clauses) {
        std::vector<std::string> nv;
        auto body = binder(c.vars, c.body, nv);
        cls.push_back({c.ctor, nv, body});
    }
    return rebuild(m, scrut, nullptr, std::move(cls));
}

ProgP prog_subst1(const ProgP &m, const std::string &x, const ProgP &n) {
    std::map<std::string, ProgP> s;
    s[x] = n;
    return prog_subst(m, s);
}

ProgP subst_closed(const ProgP &m, const std::vector<std::pair<std::string, ProgP>> &s) {
    switch (m->kind) {
    case PK::Var:
        for (auto &[k, v] : s)
            if (k == m->name) return v;
        return m;
    case PK::Nil:
    case PK::Bot:
    case PK::Roll:
    case PK::Unroll:
        return m;
    case PK::Lam: {
        bool shadow = false;
        for (auto &[k, v] : s) shadow |= k == m->name;
        if (!shadow) {
            auto body = subst_closed(m->a, s);
            return body == m->a ? m : p_lam(m->name, body);
        }
        std::vector<std::pair<std::string, ProgP>> s2;
        for (auto &kv : s)
            if (kv.first != m->name) s2.push_back(kv);
        if (s2.empty()) return m;
        auto body = subst_closed(m->a, s2);
        return body == m->a ? m : p_lam(m->name, body);
    }
    case PK::Case: {
        ProgP scrut = subst_closed(m->a, s);
        std::vector<Clause> cls;
        for (auto &c : m->clauses) {
            std::vector<std::pair<std::string, ProgP>> s2;
            for (auto &kv : s)
                if (std::find(c.vars.begin(), c.vars.end(), kv.first) == c.vars.end()) s2.push_back(kv);
            cls.push_back({c.ctor, c.vars, s2.empty() ? c.body : subst_closed(c.body, s2)});
        }
        return rebuild(m, scrut, nullptr, std::move(cls));
    }
    default:
        return rebuild(m, m->a ? subst_closed(m->a, s) : nullptr, m->b ? subst_closed(m->b, s) : nullptr, {});
    }
}

ProgP erase_annotations(const ProgP &m) {
    switch (m->kind) {
    case PK::Roll:
    case PK::Unroll:
        return p_id();
    case PK::Var:
    case PK::Nil:
    case PK::Bot:
        return m;
    case PK::Case: {
        std::vector<Clause> cls;
        for (auto &c : m->clauses) cls.push_back({c.ctor, c.vars, erase_annotations(c.body)});
        return rebuild(m, erase_annotations(m->a), nullptr, std::move(cls));
    }
    default:
        return rebuild(m, m->a ? erase_annotations(m->a) : nullptr, m->b ? erase_annotations(m->b) : nullptr, {});
    }
}

bool has_annotations(const ProgP &m) {
    if (m->kind == PK::Roll || m->kind == PK::Unroll) return true;
    if (m->a && has_annotations(m->a)) return true;
    if (m->b && has_annotations(m->b)) return true;
    for (auto &c : m->clauses)
        if (has_annotations(c.body)) return true;
    return false;
}

// ---- alpha equality

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

bool var_match(const std::string &a, const std::string &b, const Env &env) {
    for (size_t i = env.size(); i-- > 0;) {
        bool la = env[i].first == a, lb = env[i].second == b;
        if (la || lb) return la && lb;
    }
    return a == b;
}

bool palpha(const ProgP &a, const ProgP &b, Env &env) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case PK::Var:
        return var_match(a->name, b->name, env);
    case PK::Nil:
    case PK::Bot:
        return true;
    case PK::Roll:
    case PK::Unroll:
        return type_alpha_eq(a->type, b->type);
    case PK::Lam: {
        env.emplace_back(a->name, b->name);
        bool r = palpha(a->a, b->a, env);
        env.pop_back();
        return r;
    }
    case PK::Case: {
        if (!palpha(a->a, b->a, env) || a->clauses.size() != b->clauses.size()) return false;
        for (auto &ca : a->clauses) {
            const Clause *cb = nullptr;
            for (auto &c : b->clauses)
                if (c.ctor == ca.ctor) cb = &c;
            if (!cb) return false;
            for (size_t i = 0; i < ca.vars.size(); ++i) env.emplace_back(ca.vars[i], cb->vars[i]);
            bool r = palpha(ca.body, cb->body, env);
            env.resize(env.size() - ca.vars.size());
            if (!r) return false;
        }
        return true;
    }
    default:
        return (!a->a || palpha(a->a, b->a, env)) && (!a->b || palpha(a->b, b->b, env));
    }
}

}

bool prog_alpha_eq(const ProgP &a, const ProgP &b) {
    Env env;
    return palpha(a, b, env);
}

// ---- printing

namespace {

// case M of {Pair(a,b) -> a}
int projection(const ProgP &m) {
    if (m->kind != PK::Case || m->clauses.size() != 1) return 0;
    const Clause &c = m->clauses[0];
    if (c.ctor != Ctor::Pair || c.vars[0] == c.vars[1] || c.body->kind != PK::Var) return 0;
    if (c.body->name == c.vars[0]) return 1;
    if (c.body->name == c.vars[1]) return 2;
    return 0;
}

std::string pp(const ProgP &m, int level) {
    auto wrap = [&](int need, std::string s) { return level > need ? "(" + s + ")" : s; };
    switch (m->kind) {
    case PK::Var:
        return m->name;
    case PK::Nil:
        return "Nil";
    case PK::Bot:
        return "⊥";
    case PK::Left:
        return "Left(" + pp(m->a, 0) + ")";
    case PK::Right:
        return "Right(" + pp(m->a, 0) + ")";
    case PK::Pair:
        return "Pair(" + pp(m->a, 0) + ", " + pp(m->b, 0) + ")";
    case PK::Roll:
        return "roll{" + print_type(m->type) + "}";
    case PK::Unroll:
        return "unroll{" + print_type(m->type) + "}";
    case PK::Case: {
        if (int k = projection(m)) return wrap(1, std::string(k == 1 ? "πLeft " : "πRight ") + pp(m->a, 2));
        std::string s = "case " + pp(m->a, 0) + " of {";
        for (size_t i = 0; i < m->clauses.size(); ++i) {
            const Clause &c = m->clauses[i];
            if (i) s += "; ";
            s += ctor_name(c.ctor);
            if (!c.vars.empty()) {
                s += "(";
                for (size_t j = 0; j < c.vars.size(); ++j) s += (j ? ", " : "") + c.vars[j];
                s += ")";
            }
            s += " → " + pp(c.body, 0);
        }
        return s + "}";
    }
    case PK::Lam:
        return wrap(0, "λ" + m->name + ". " + pp(m->a, 0));
    case PK::App:
        return wrap(1, pp(m->a, 1) + " " + pp(m->b, 2));
    case PK::Rec:
        return wrap(1, "rec " + pp(m->a, 2));
    }
    return "?";
}

}

std::string print_prog(const ProgP &m) { return pp(m, 0); }

// ---- parsing

namespace {

enum class Tok { Ident, Num, Lambda, Dot, Arrow, LParen, RParen, LBrace, RBrace, Comma, Semi, Colon, Equals, Bot, Annot, End };

struct Token {
    Tok t;
    std::string text;
    size_t pos;
};

bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\'' || c >= 0x80; }

std::vector<Token> lex(const std::string &s) {
    std::vector<Token> out;
    size_t i = 0;
    auto starts = [&](const char *lit) { return s.compare(i, std::char_traits<char>::length(lit), lit) == 0; };
    while (i < s.size()) {
        unsigned char c = s[i];
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '-') {
            while (i < s.size() && s[i] != '\n') ++i;
            continue;
        }
        size_t st = i;
        if (starts("λ")) { out.push_back({Tok::Lambda, "λ", st}); i += 2; continue; }
        if (starts("→")) { out.push_back({Tok::Arrow, "→", st}); i += 3; continue; }
        if (starts("⊥")) { out.push_back({Tok::Bot, "⊥", st}); i += 3; continue; }
        if (starts("->")) { out.push_back({Tok::Arrow, "->", st}); i += 2; continue; }
        if (starts("−1")) { out.push_back({Tok::Num, "-1", st}); i += 4; continue; }
        if (starts("-1")) { out.push_back({Tok::Num, "-1", st}); i += 2; continue; }
        switch (c) {
        case '\\': out.push_back({Tok::Lambda, "\\", st}); ++i; continue;
        case '.': out.push_back({Tok::Dot, ".", st}); ++i; continue;
        case '(': out.push_back({Tok::LParen, "(", st}); ++i; continue;
        case ')': out.push_back({Tok::RParen, ")", st}); ++i; continue;
        case '{': out.push_back({Tok::LBrace, "{", st}); ++i; continue;
        case '}': out.push_back({Tok::RBrace, "}", st}); ++i; continue;
        case ',': out.push_back({Tok::Comma, ",", st}); ++i; continue;
        case ';': out.push_back({Tok::Semi, ";", st}); ++i; continue;
        case ':': out.push_back({Tok::Colon, ":", st}); ++i; continue;
        case '=': out.push_back({Tok::Equals, "=", st}); ++i; continue;
        default: break;
        }
        if (ident_char(c)) {
            std::string id;
            while (i < s.size() && ident_char(static_cast<unsigned char>(s[i]))) {
                if (s.compare(i, 3, "′") == 0) {
                    id += '\'';
                    i += 3;
                    continue;
                }
                if (s.compare(i, 2, "λ") == 0 || s.compare(i, 3, "→") == 0 || s.compare(i, 3, "⊥") == 0) break;
                id += s[i++];
            }
            if ((id == "roll" || id == "unroll") && i < s.size() && s[i] == '{') {
                size_t close = s.find('}', i);
                if (close == std::string::npos) throw Error("unterminated type annotation");
                out.push_back({Tok::Annot, id + " " + s.substr(i + 1, close - i - 1), st});
                i = close + 1;
                continue;
            }
            bool num = id == "0" || id == "1";
            out.push_back({num ? Tok::Num : Tok::Ident, id, st});
            continue;
        }
        throw Error("unexpected character at offset " + std::to_string(i) + " in program text");
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

struct Pat {
    bool var = true;
    std::string name;  // empty for wildcard
    Ctor ctor = Ctor::Nil;
    std::vector<Pat> args;
};

const std::set<std::string> reserved = {"Nil", "Left", "Right", "Pair", "case", "of",  "rec",    "let",
                                        "in",  "L",    "R",     "bot",  "πLeft", "πRight", "head", "tail",
                                        "roll", "unroll"};

struct Parser {
    std::vector<Token> toks;
    size_t k = 0;
    const ProgEnv &env;
    bool allow_free;
    std::vector<std::string> scope;
    int fresh = 0;
    std::set<std::string> used;

    const Token &peek() const { return toks[k]; }
    bool at(Tok t) const { return toks[k].t == t; }
    bool at_id(const char *s) const { return toks[k].t == Tok::Ident && toks[k].text == s; }

    [[noreturn]] void err(const std::string &m) const {
        throw Error("program syntax error at offset " + std::to_string(peek().pos) + " near '" + peek().text + "': " + m);
    }

    void expect(Tok t, const char *what) {
        if (!at(t)) err(std::string("expected ") + what);
        ++k;
    }

    std::string ident() {
        if (!at(Tok::Ident) || reserved.count(peek().text)) err("expected identifier");
        return toks[k++].text;
    }

    std::string gensym() {
        for (;;) {
            std::string n = "z" + std::to_string(++fresh);
            if (!used.count(n)) {
                used.insert(n);
                return n;
            }
        }
    }

    bool starts_unit() const {
        switch (peek().t) {
        case Tok::Ident:
            return peek().text != "of" && peek().text != "in";
        case Tok::Num:
        case Tok::LParen:
        case Tok::Bot:
        case Tok::Annot:
            return true;
        default:
            return false;
        }
    }

    ProgP expr() {
        if (at(Tok::Lambda)) {
            ++k;
            std::vector<std::string> xs;
            do xs.push_back(ident());
            while (at(Tok::Ident));
            expect(Tok::Dot, "'.'");
            for (auto &x : xs) scope.push_back(x);
            ProgP body = expr();
            scope.resize(scope.size() - xs.size());
            for (size_t i = xs.size(); i-- > 0;) body = p_lam(xs[i], body);
            return body;
        }
        if (at_id("let")) {
            ++k;
            std::string x = ident();
            expect(Tok::Equals, "'='");
            ProgP m = expr();
            if (!at_id("in")) err("expected 'in'");
            ++k;
            scope.push_back(x);
            ProgP n = expr();
            scope.pop_back();
            return p_app(p_lam(x, n), m);
        }
        ProgP head = app();
        if (at(Tok::Colon)) {
            ++k;
            return p_pair(head, expr());
        }
        return head;
    }

    ProgP app() {
        ProgP f = unit();
        for (;;) {
            if (at(Tok::Lambda)) return p_app(f, expr());
            if (!starts_unit()) return f;
            f = p_app(f, unit());
        }
    }

    ProgP unit() {
        if (at_id("rec")) {
            ++k;
            return p_rec(unit());
        }
        if (at_id("πLeft") || at_id("head")) {
            ++k;
            return p_fst(unit());
        }
        if (at_id("πRight") || at_id("tail")) {
            ++k;
            return p_snd(unit());
        }
        return atom();
    }

    ProgP ctor_args(int n, std::vector<ProgP> &out) {
        expect(Tok::LParen, "'('");
        for (int i = 0; i < n; ++i) {
            if (i) expect(Tok::Comma, "','");
            out.push_back(expr());
        }
        expect(Tok::RParen, "')'");
        return nullptr;
    }

    ProgP atom() {
        const Token &t = peek();
        switch (t.t) {
        case Tok::Bot:
            ++k;
            return p_bot();
        case Tok::Num:
            ++k;
            return t.text == "-1" ? d_minus1() : t.text == "1" ? d_one() : d_zero();
        case Tok::Annot: {
            ++k;
            auto sp = t.text.find(' ');
            TypeP ty = parse_type_text(t.text.substr(sp + 1));
            return t.text.substr(0, sp) == "roll" ? p_roll(ty) : p_unroll(ty);
        }
        case Tok::LParen: {
            ++k;
            ProgP m = expr();
            expect(Tok::RParen, "')'");
            return m;
        }
        case Tok::Ident:
            break;
        default:
            err("expected a program");
        }
        const std::string id = t.text;
        if (id == "Nil") { ++k; return p_nil(); }
        if (id == "bot") { ++k; return p_bot(); }
        if (id == "L") { ++k; return g_L(); }
        if (id == "R") { ++k; return g_R(); }
        if (id == "Left" || id == "Right" || id == "Pair") {
            ++k;
            std::vector<ProgP> xs;
            ctor_args(id == "Pair" ? 2 : 1, xs);
            if (id == "Left") return p_left(xs[0]);
            if (id == "Right") return p_right(xs[0]);
            return p_pair(xs[0], xs[1]);
        }
        if (id == "case") {
            ++k;
            ProgP scrut = expr();
            if (!at_id("of")) err("expected 'of'");
            ++k;
            expect(Tok::LBrace, "'{'");
            std::vector<std::pair<Pat, ProgP>> rows;
            while (!at(Tok::RBrace)) {
                Pat p = pattern();
                if (!at(Tok::Arrow)) err("expected '→'");
                ++k;
                std::vector<std::string> bound;
                pat_vars(p, bound);
                for (auto &b : bound) scope.push_back(b);
                ProgP body = expr();
                scope.resize(scope.size() - bound.size());
                rows.push_back({p, body});
                if (at(Tok::Semi)) ++k;
                else if (!at(Tok::RBrace)) err("expected ';' or '}'");
            }
            ++k;
            return compile_case(scrut, rows);
        }
        ++k;
        if (reserved.count(id)) err("unexpected keyword");
        if (std::find(scope.begin(), scope.end(), id) != scope.end()) return p_var(id);
        auto it = env.find(id);
        if (it != env.end()) return it->second;
        if (allow_free) return p_var(id);
        throw Error("unbound identifier in program: " + id);
    }

    Pat pattern() {
        const Token &t = peek();
        Pat p;
        if (t.t == Tok::Num) {
            ++k;
            p.var = false;
            if (t.text == "0") {
                p.ctor = Ctor::Right;
                p.args = {Pat{}};
            } else {
                p.ctor = Ctor::Left;
                Pat inner;
                inner.var = false;
                inner.ctor = t.text == "1" ? Ctor::Right : Ctor::Left;
                inner.args = {Pat{}};
                p.args = {inner};
            }
            return p;
        }
        if (t.t == Tok::LParen) {
            ++k;
            p = pattern();
            expect(Tok::RParen, "')'");
            return p;
        }
        if (t.t != Tok::Ident) err("expected a pattern");
        ++k;
        if (t.text == "_") return p;
        if (t.text == "L" || t.text == "R") {
            p.var = false;
            p.ctor = t.text == "L" ? Ctor::Left : Ctor::Right;
            p.args = {Pat{}};
            return p;
        }
        if (t.text == "Nil" || t.text == "Left" || t.text == "Right" || t.text == "Pair") {
            p.var = false;
            p.ctor = t.text == "Nil" ? Ctor::Nil : t.text == "Left" ? Ctor::Left : t.text == "Right" ? Ctor::Right : Ctor::Pair;
            int n = ctor_arity(p.ctor);
            if (n) {
                expect(Tok::LParen, "'('");
                for (int i = 0; i < n; ++i) {
                    if (i) expect(Tok::Comma, "','");
                    p.args.push_back(pattern());
                }
                expect(Tok::RParen, "')'");
            }
            return p;
        }
        if (reserved.count(t.text)) err("keyword in pattern");
        p.name = t.text;
        return p;
    }

    static void pat_vars(const Pat &p, std::vector<std::string> &out) {
        if (p.var) {
            if (!p.name.empty()) out.push_back(p.name);
            return;
        }
        for (auto &a : p.args) pat_vars(a, out);
    }

    // nested Nil below a constructor only fills the unit type, so it matches like a wildcard
    static Pat loosen(const Pat &p, bool nested) {
        if (p.var) return p;
        if (nested && p.ctor == Ctor::Nil) return Pat{};
        Pat q = p;
        for (auto &a : q.args) a = loosen(a, true);
        return q;
    }

    using Row = std::pair<std::vector<Pat>, ProgP>;

    ProgP match(std::vector<std::string> vars, std::vector<Row> rows) {
        if (rows.empty()) return p_bot();
        if (vars.empty()) return rows[0].second;
        bool all_var = true, all_con = true;
        for (auto &r : rows) {
            (r.first[0].var ? all_con : all_var) = false;
        }
        std::vector<std::string> rest(vars.begin() + 1, vars.end());
        if (all_var) {
            std::vector<Row> next;
            for (auto &r : rows) {
                ProgP body = r.second;
                if (!r.first[0].name.empty() && r.first[0].name != vars[0])
                    body = prog_subst1(body, r.first[0].name, p_var(vars[0]));
                next.push_back({std::vector<Pat>(r.first.begin() + 1, r.first.end()), body});
            }
            return match(rest, next);
        }
        if (!all_con) err("mixed variable and constructor patterns are not supported");
        std::vector<Ctor> order;
        for (auto &r : rows)
            if (std::find(order.begin(), order.end(), r.first[0].ctor) == order.end()) order.push_back(r.first[0].ctor);
        std::vector<Clause> cls;
        for (Ctor c : order) {
            std::vector<Row> sub;
            for (auto &r : rows)
                if (r.first[0].ctor == c) {
                    std::vector<Pat> ps = r.first[0].args;
                    ps.insert(ps.end(), r.first.begin() + 1, r.first.end());
                    sub.push_back({ps, r.second});
                }
            int n = ctor_arity(c);
            std::vector<std::string> names;
            for (int i = 0; i < n; ++i) {
                // reuse the user's name when a single row binds a plain variable here
                const Pat &p0 = sub[0].first[i];
                if (sub.size() == 1 && p0.var && !p0.name.empty()) names.push_back(p0.name);
                else names.push_back(gensym());
            }
            std::vector<std::string> nv = names;
            nv.insert(nv.end(), rest.begin(), rest.end());
            cls.push_back({c, names, match(nv, sub)});
        }
        return p_case(p_var(vars[0]), cls);
    }

    ProgP compile_case(ProgP scrut, std::vector<std::pair<Pat, ProgP>> rows) {
        for (auto &r : rows) r.first = loosen(r.first, false);
        for (auto &r : rows) prog_names(r.second, used);
        // simple form: distinct top constructors with variable arguments
        bool simple = true;
        std::set<int> seen;
        for (auto &r : rows) {
            if (r.first.var || !seen.insert(static_cast<int>(r.first.ctor)).second) simple = false;
            else
                for (auto &a : r.first.args) simple &= a.var;
        }
        if (simple) {
            std::vector<Clause> cls;
            for (auto &r : rows) {
                std::vector<std::string> vs;
                for (auto &a : r.first.args) vs.push_back(a.name.empty() ? gensym() : a.name);
                cls.push_back({r.first.ctor, vs, r.second});
            }
            return p_case(scrut, cls);
        }
        std::string x = gensym();
        std::vector<Row> rs;
        for (auto &r : rows) rs.push_back({{r.first}, r.second});
        ProgP body = match({x}, rs);
        // the scrutinee is consumed once by the outer case
        bool linear = body->kind == PK::Case && body->a->kind == PK::Var && body->a->name == x;
        if (linear)
            for (auto &c : body->clauses) linear &= !prog_fv(c.body).count(x);
        if (linear) {
            auto p = std::make_shared<Prog>(*body);
            p->a = scrut;
            return p;
        }
        return p_app(p_lam(x, body), scrut);
    }
};

}

ProgP parse_prog(const std::string &text, const ProgEnv &env, bool allow_free) {
    Parser p{lex(text), 0, env, allow_free};
    ProgP m = p.expr();
    if (!p.at(Tok::End)) p.err("trailing input");
    return m;
}

}
