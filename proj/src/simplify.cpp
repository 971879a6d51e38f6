#include "ifp/extract.hpp"

namespace ifp {

namespace {

struct Simplifier {
    size_t budget;

    bool spend() {
        if (!budget) return false;
        --budget;
        return true;
    }

    static std::string rename_away(const std::string &v, const std::set<std::string> &avoid) {
        for (int i = 1;; ++i) {
            std::string n = v + std::to_string(i);
            if (!avoid.count(n)) return n;
        }
    }

    // clause whose binders are disjoint from avoid
    static Clause fresh_clause(const Clause &c, const std::set<std::string> &avoid0) {
        Clause r = c;
        std::set<std::string> avoid = avoid0;
        prog_names(c.body, avoid);
        for (auto v : c.vars) avoid.insert(v);
        for (auto &v : r.vars) {
            if (!avoid0.count(v)) continue;
            std::string n = rename_away(v, avoid);
            avoid.insert(n);
            r.body = prog_subst1(r.body, v, p_var(n));
            v = n;
        }
        return r;
    }

    // πLeft/πRight stay atomic so displayed programs keep their shape
    static bool is_projection(const ProgP &m) {
        if (m->clauses.size() != 1 || m->clauses[0].ctor != Ctor::Pair) return false;
        const Clause &c = m->clauses[0];
        return c.body->kind == PK::Var && (c.body->name == c.vars[0] || c.body->name == c.vars[1]);
    }

    static bool is_tag_copy(const ProgP &m, const std::string &x) {
        if (m->kind != PK::Case || m->a->kind != PK::Var || m->a->name != x || m->clauses.size() != 2) return false;
        for (auto &c : m->clauses) {
            if (c.ctor == Ctor::Left && c.body->kind == PK::Left && c.body->a->kind == PK::Nil) continue;
            if (c.ctor == Ctor::Right && c.body->kind == PK::Right && c.body->a->kind == PK::Nil) continue;
            return false;
        }
        return true;
    }

    ProgP norm(const ProgP &m) {
        switch (m->kind) {
        case PK::Var:
        case PK::Nil:
        case PK::Bot:
        case PK::Roll:
        case PK::Unroll:
            return m;
        case PK::Left:
            return p_left(norm(m->a));
        case PK::Right:
            return p_right(norm(m->a));
        case PK::Pair: {
            ProgP a = norm(m->a);
            return p_pair(a, norm(m->b));
        }
        case PK::Rec:
            return p_rec(norm(m->a));
        case PK::Lam: {
            ProgP b = norm(m->a);
            // a realizer of a disjunction of Harrop formulas carries Nil payloads only
            if (is_tag_copy(b, m->name) && spend()) return p_lam(m->name, p_var(m->name));
            return p_lam(m->name, b);
        }
        case PK::App: {
            ProgP f = norm(m->a);
            return app(f, norm(m->b));
        }
        case PK::Case: {
            ProgP s = norm(m->a);
            std::vector<Clause> cls;
            for (auto &c : m->clauses) cls.push_back({c.ctor, c.vars, norm(c.body)});
            return kase(s, cls);
        }
        }
        return m;
    }

    ProgP app(const ProgP &f, const ProgP &n) {
        if (f->kind == PK::Lam && spend()) return norm(prog_subst1(f->a, f->name, n));
        if (f->kind == PK::Case && spend()) {
            // the head of an application is evaluated first, so the argument moves into the branches
            auto avoid = prog_fv(n);
            std::vector<Clause> cls;
            for (auto &c0 : f->clauses) {
                Clause c = fresh_clause(c0, avoid);
                cls.push_back({c.ctor, c.vars, app(c.body, n)});
            }
            return p_case(f->a, cls);
        }
        if (f->kind == PK::Bot && spend()) return p_bot();
        return p_app(f, n);
    }

    ProgP kase(const ProgP &s, const std::vector<Clause> &cls) {
        if (is_ctor(s) && spend()) {
            Ctor k = s->kind == PK::Nil ? Ctor::Nil : s->kind == PK::Left ? Ctor::Left
                   : s->kind == PK::Right ? Ctor::Right : Ctor::Pair;
            for (auto &c : cls) {
                if (c.ctor != k) continue;
                std::map<std::string, ProgP> sub;
                if (k == Ctor::Pair) {
                    sub[c.vars[0]] = s->a;
                    sub[c.vars[1]] = s->b;
                } else if (k != Ctor::Nil) {
                    sub[c.vars[0]] = s->a;
                }
                return norm(prog_subst(c.body, sub));
            }
            return p_bot();
        }
        if (s->kind == PK::Bot && spend()) return p_bot();
        if (s->kind == PK::Case && !is_projection(s) && spend()) {
            std::set<std::string> avoid;
            for (auto &c : cls) {
                auto fv = prog_fv(c.body);
                for (auto &v : c.vars) fv.erase(v);
                avoid.insert(fv.begin(), fv.end());
            }
            std::vector<Clause> out;
            for (auto &c0 : s->clauses) {
                Clause c = fresh_clause(c0, avoid);
                out.push_back({c.ctor, c.vars, kase(c.body, cls)});
            }
            return p_case(s->a, out);
        }
        return p_case(s, cls);
    }
};

}

ProgP simplify(const ProgP &m, size_t budget) {
    Simplifier s{budget};
    return s.norm(m);
}

}
