#include "ifp/program.hpp"

namespace ifp {

static TypeP mk(TK k, std::string n, TypeP a, TypeP b) {
    auto t = std::make_shared<PType>();
    t->kind = k;
    t->name = std::move(n);
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
}

TypeP ty_var(const std::string &n) { return mk(TK::Var, n, nullptr, nullptr); }
TypeP ty_one() {
    static const TypeP one = mk(TK::One, "", nullptr, nullptr);
    return one;
}
TypeP ty_sum(TypeP a, TypeP b) { return mk(TK::Sum, "", std::move(a), std::move(b)); }
TypeP ty_prod(TypeP a, TypeP b) { return mk(TK::Prod, "", std::move(a), std::move(b)); }
TypeP ty_arrow(TypeP a, TypeP b) { return mk(TK::Arrow, "", std::move(a), std::move(b)); }
TypeP ty_fix(const std::string &a, TypeP body) { return mk(TK::Fix, a, std::move(body), nullptr); }

static void fv_into(const TypeP &t, std::set<std::string> &bound, std::set<std::string> &out) {
    switch (t->kind) {
    case TK::Var:
        if (!bound.count(t->name)) out.insert(t->name);
        return;
    case TK::One:
        return;
    case TK::Fix: {
        bool had = bound.count(t->name);
        bound.insert(t->name);
        fv_into(t->a, bound, out);
        if (!had) bound.erase(t->name);
        return;
    }
    default:
        fv_into(t->a, bound, out);
        fv_into(t->b, bound, out);
    }
}

std::set<std::string> type_fv(const TypeP &t) {
    std::set<std::string> b, o;
    fv_into(t, b, o);
    return o;
}

TypeP type_subst(const TypeP &t, const std::string &a, const TypeP &s) {
    switch (t->kind) {
    case TK::Var:
        return t->name == a ? s : t;
    case TK::One:
        return t;
    case TK::Fix: {
        if (t->name == a) return t;
        auto sfv = type_fv(s);
        if (!sfv.count(t->name)) {
            auto body = type_subst(t->a, a, s);
            return body == t->a ? t : ty_fix(t->name, body);
        }
        std::set<std::string> avoid = sfv;
        auto bfv = type_fv(t->a);
        avoid.insert(bfv.begin(), bfv.end());
        avoid.insert(a);
        std::string n;
        for (int i = 1;; ++i) {
            n = t->name + std::to_string(i);
            if (!avoid.count(n)) break;
        }
        auto body = type_subst(type_subst(t->a, t->name, ty_var(n)), a, s);
        return ty_fix(n, body);
    }
    default: {
        auto x = type_subst(t->a, a, s), y = type_subst(t->b, a, s);
        if (x == t->a && y == t->b) return t;
        return mk(t->kind, "", x, y);
    }
    }
}

TypeP unfold(const TypeP &fix) {
    if (fix->kind != TK::Fix) throw Error("unfold of a non-fix type");
    return type_subst(fix->a, fix->name, fix);
}

using TEnv = std::vector<std::pair<std::string, std::string>>;

static bool teq(const TypeP &a, const TypeP &b, TEnv &env) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case TK::Var:
        for (size_t i = env.size(); i-- > 0;) {
            bool la = env[i].first == a->name, lb = env[i].second == b->name;
            if (la || lb) return la && lb;
        }
        return a->name == b->name;
    case TK::One:
        return true;
    case TK::Fix: {
        env.emplace_back(a->name, b->name);
        bool r = teq(a->a, b->a, env);
        env.pop_back();
        return r;
    }
    default:
        return teq(a->a, b->a, env) && teq(a->b, b->b, env);
    }
}

bool type_alpha_eq(const TypeP &a, const TypeP &b) {
    TEnv env;
    return teq(a, b, env);
}

static std::string pt(const TypeP &t, std::vector<std::pair<std::string, std::string>> *canon) {
    switch (t->kind) {
    case TK::Var:
        if (canon)
            for (size_t i = canon->size(); i-- > 0;)
                if ((*canon)[i].first == t->name) return (*canon)[i].second;
        return t->name;
    case TK::One:
        return "1";
    case TK::Sum:
        return "(+ " + pt(t->a, canon) + " " + pt(t->b, canon) + ")";
    case TK::Prod:
        return "(* " + pt(t->a, canon) + " " + pt(t->b, canon) + ")";
    case TK::Arrow:
        return "(-> " + pt(t->a, canon) + " " + pt(t->b, canon) + ")";
    case TK::Fix: {
        std::string n = t->name;
        if (canon) {
            n = "%" + std::to_string(canon->size());
            canon->emplace_back(t->name, n);
        }
        std::string s = "(fix " + n + " " + pt(t->a, canon) + ")";
        if (canon) canon->pop_back();
        return s;
    }
    }
    return "?";
}

std::string print_type(const TypeP &t) { return pt(t, nullptr); }

std::string print_type_canonical(const TypeP &t) {
    std::vector<std::pair<std::string, std::string>> c;
    return pt(t, &c);
}

TypeP parse_type(const SExpr &s) {
    if (s.atom) {
        if (s.text == "1") return ty_one();
        return ty_var(s.text);
    }
    if (s.size() == 3 && s[0].atom) {
        const std::string &h = s[0].text;
        if (h == "fix") {
            if (!s[1].atom) fail_at(s.pos, "fix binder must be a name");
            return ty_fix(s[1].text, parse_type(s[2]));
        }
        auto a = parse_type(s[1]), b = parse_type(s[2]);
        if (h == "+") return ty_sum(a, b);
        if (h == "*") return ty_prod(a, b);
        if (h == "->") return ty_arrow(a, b);
    }
    fail_at(s.pos, "malformed type " + s.str());
}

TypeP parse_type_text(const std::string &s) { return parse_type(read_sexpr(s)); }

}
