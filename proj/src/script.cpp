#include "ifp/kernel.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace ifp {

namespace {

[[noreturn]] void bad(const SExpr &s, const std::string &msg) { fail_at(s.pos, msg + " in " + s.str()); }

std::shared_ptr<Deriv> node(DK k, const SExpr &s) {
    auto d = std::make_shared<Deriv>();
    d->kind = k;
    d->pos = s.pos;
    return d;
}

void arity(const SExpr &s, size_t n) {
    if (s.size() != n + 1) bad(s, std::string("rule ") + s[0].text + " takes " + std::to_string(n) + " arguments");
}

const std::map<std::string, DK> fix_rules = {{"ind", DK::Ind},   {"coind", DK::Coind}, {"si", DK::SI},
                                             {"hsi", DK::HSI},   {"sci", DK::SCI},     {"hsci", DK::HSCI}};

DerivP parse_d(const SExpr &s, Scope &sc);

DerivP chain_impe(const SExpr &s, Scope &sc) {
    if (s.size() < 3) bad(s, "impe needs a function and at least one argument");
    DerivP cur = parse_d(s[1], sc);
    for (size_t i = 2; i < s.size(); ++i) {
        auto d = node(DK::ImpE, s);
        d->sub = {cur, parse_d(s[i], sc)};
        cur = d;
    }
    return cur;
}

DerivP parse_d(const SExpr &s, Scope &sc) {
    if (s.atom) {
        if (s.quoted) bad(s, "unexpected string");
        auto d = node(DK::Assume, s);
        d->label = s.text;
        return d;
    }
    if (s.items.empty() || !s[0].atom) bad(s, "malformed derivation");
    const std::string &h = s[0].text;
    if (h == "ax" || h == "use") {
        arity(s, 1);
        auto d = node(h == "ax" ? DK::Axiom : DK::Use, s);
        d->label = s[1].text;
        return d;
    }
    if (h == "refl") {
        arity(s, 1);
        auto d = node(DK::Refl, s);
        d->t = parse_term(s[1], sc);
        return d;
    }
    if (h == "cong") {
        arity(s, 3);
        auto d = node(DK::Cong, s);
        d->sub = {parse_d(s[1], sc), parse_d(s[2], sc)};
        d->f = parse_predicate(s[3], sc);
        return d;
    }
    if (h == "andi") {
        if (s.size() < 3) bad(s, "andi needs at least two premises");
        DerivP cur = parse_d(s[s.size() - 1], sc);
        for (size_t i = s.size() - 1; i-- > 1;) {
            auto d = node(DK::AndI, s);
            d->sub = {parse_d(s[i], sc), cur};
            cur = d;
        }
        return cur;
    }
    if (h == "andl" || h == "andr") {
        arity(s, 1);
        auto d = node(h == "andl" ? DK::AndL : DK::AndR, s);
        d->sub = {parse_d(s[1], sc)};
        return d;
    }
    if (h == "orl" || h == "orr") {
        arity(s, 2);
        auto d = node(h == "orl" ? DK::OrL : DK::OrR, s);
        d->sub = {parse_d(s[1], sc)};
        d->f = parse_formula(s[2], sc);
        return d;
    }
    if (h == "ore") {
        arity(s, 3);
        auto d = node(DK::OrE, s);
        d->sub = {parse_d(s[1], sc), parse_d(s[2], sc), parse_d(s[3], sc)};
        return d;
    }
    if (h == "impi") {
        arity(s, 3);
        if (!s[1].atom) bad(s[1], "expected an assumption label");
        auto d = node(DK::ImpI, s);
        d->label = s[1].text;
        d->f = parse_formula(s[2], sc);
        d->sub = {parse_d(s[3], sc)};
        return d;
    }
    if (h == "impe") return chain_impe(s, sc);
    if (h == "have") {
        // (have u A d e) = (impe (impi u A e) d)
        arity(s, 4);
        if (!s[1].atom) bad(s[1], "expected an assumption label");
        auto i = node(DK::ImpI, s);
        i->label = s[1].text;
        i->f = parse_formula(s[2], sc);
        DerivP prem = parse_d(s[3], sc);
        i->sub = {parse_d(s[4], sc)};
        auto d = node(DK::ImpE, s);
        d->sub = {i, prem};
        return d;
    }
    if (h == "alli") {
        arity(s, 2);
        std::vector<ObjVar> vs;
        if (s[1].atom) vs.push_back({s[1].text, sc.sig->default_sort()});
        else vs = parse_binders(s[1], sc);
        if (vs.empty()) bad(s, "alli needs a variable");
        size_t n = sc.objs.size();
        for (auto &v : vs) sc.objs.push_back(v);
        DerivP cur = parse_d(s[2], sc);
        sc.objs.resize(n);
        for (size_t i = vs.size(); i-- > 0;) {
            auto d = node(DK::AllI, s);
            d->x = vs[i];
            d->sub = {cur};
            cur = d;
        }
        return cur;
    }
    if (h == "alle") {
        if (s.size() < 3) bad(s, "alle needs a premise and at least one term");
        DerivP cur = parse_d(s[1], sc);
        for (size_t i = 2; i < s.size(); ++i) {
            auto d = node(DK::AllE, s);
            d->sub = {cur};
            d->t = parse_term(s[i], sc);
            cur = d;
        }
        return cur;
    }
    if (h == "exi") {
        arity(s, 3);
        auto d = node(DK::ExI, s);
        d->f = parse_predicate(s[1], sc);
        d->t = parse_term(s[2], sc);
        d->sub = {parse_d(s[3], sc)};
        return d;
    }
    if (h == "exe") {
        arity(s, 2);
        auto d = node(DK::ExE, s);
        d->sub = {parse_d(s[1], sc), parse_d(s[2], sc)};
        return d;
    }
    if (h == "clos" || h == "cocl") {
        arity(s, 1);
        auto d = node(h == "clos" ? DK::Cl : DK::CoCl, s);
        d->op = parse_operator(s[1], sc);
        return d;
    }
    if (auto it = fix_rules.find(h); it != fix_rules.end()) {
        arity(s, 3);
        auto d = node(it->second, s);
        d->op = parse_operator(s[1], sc);
        d->p = parse_predicate(s[2], sc);
        d->sub = {parse_d(s[3], sc)};
        return d;
    }
    if (h == "wfi") {
        arity(s, 4);
        auto d = node(DK::WfI, s);
        d->op = parse_predicate(s[1], sc);
        d->q = parse_predicate(s[2], sc);
        d->p = parse_predicate(s[3], sc);
        d->sub = {parse_d(s[4], sc)};
        return d;
    }
    if (h == "aiq") {
        arity(s, 3);
        auto d = node(DK::AIq, s);
        d->t = parse_term(s[1], sc);
        d->p = parse_predicate(s[2], sc);
        d->sub = {parse_d(s[3], sc)};
        return d;
    }
    if (h == "aibq") {
        arity(s, 4);
        auto d = node(DK::AIBq, s);
        d->t = parse_term(s[1], sc);
        d->q = parse_predicate(s[2], sc);
        d->p = parse_predicate(s[3], sc);
        d->sub = {parse_d(s[4], sc)};
        return d;
    }
    bad(s, "unknown rule " + h);
}

}

DerivP parse_deriv(const SExpr &s, Scope &sc) { return parse_d(s, sc); }

std::string print_deriv(const DerivP &d, const Signature *sig) {
    auto f = [&](const ExprP &e) { return print_expr(e, sig); };
    std::string s = std::string("(") + dk_name(d->kind);
    switch (d->kind) {
    case DK::Assume:
        return d->label;
    case DK::Axiom:
    case DK::Use:
        return s + " " + d->label + ")";
    case DK::Refl:
        return s + " " + print_term(d->t) + ")";
    case DK::ImpI:
        s += " " + d->label + " " + f(d->f);
        break;
    case DK::AllI:
        s += " " + d->x.name;
        break;
    case DK::ExI:
        s += " " + f(d->f) + " " + print_term(d->t);
        break;
    case DK::Cl:
    case DK::CoCl:
        return s + " " + f(d->op) + ")";
    case DK::Ind:
    case DK::Coind:
    case DK::SI:
    case DK::HSI:
    case DK::SCI:
    case DK::HSCI:
        s += " " + f(d->op) + " " + f(d->p);
        break;
    case DK::WfI:
        s += " " + f(d->op) + " " + f(d->q) + " " + f(d->p);
        break;
    case DK::AIq:
        s += " " + print_term(d->t) + " " + f(d->p);
        break;
    case DK::AIBq:
        s += " " + print_term(d->t) + " " + f(d->q) + " " + f(d->p);
        break;
    default:
        break;
    }
    for (auto &c : d->sub) s += " " + print_deriv(c, sig);
    if (d->kind == DK::AllE) s += " " + print_term(d->t);
    if (d->kind == DK::OrL || d->kind == DK::OrR) s += " " + f(d->f);
    if (d->kind == DK::Cong) s += " " + f(d->f);
    return s + ")";
}

const Theorem *Script::find(const std::string &name) const {
    for (auto &t : theorems)
        if (t.name == name) return &t;
    return nullptr;
}

namespace {

struct Loader {
    Script &out;
    KernelEnv env;
    std::vector<std::string> stack;

    explicit Loader(Script &s) : out(s) { env.sig = &out.sig; }

    Arity sorts(const SExpr &s) {
        if (!s.is_list()) bad(s, "expected a sort list");
        Arity ar;
        for (auto &x : s.items) {
            if (!x.atom || !out.sig.has_sort(x.text)) bad(x, "unknown sort");
            ar.push_back(x.text);
        }
        return ar;
    }

    std::string name_of(const SExpr &s, size_t i) {
        if (s.size() <= i || !s[i].atom || s[i].quoted) bad(s, "expected a name");
        return s[i].text;
    }

    void statement(const SExpr &s, const std::string &dir) {
        if (!s.is_list() || s.items.empty() || !s[0].atom) bad(s, "malformed statement");
        const std::string &h = s[0].text;
        Signature &sig = out.sig;
        Scope sc{&sig};
        if (h == "declare-sort") {
            std::string n = name_of(s, 1);
            if (sig.has_sort(n)) bad(s, "sort already declared");
            sig.sorts.push_back(n);
        } else if (h == "declare-fun") {
            if (s.size() != 4) bad(s, "declare-fun takes a name, argument sorts and a result sort");
            std::string n = name_of(s, 1);
            sig.check_fresh(n, s.pos);
            Arity ar = sorts(s[2]);
            if (!s[3].atom || !sig.has_sort(s[3].text)) bad(s[3], "unknown sort");
            sig.funcs[n] = {ar, s[3].text};
        } else if (h == "declare-pred") {
            if (s.size() != 3) bad(s, "declare-pred takes a name and argument sorts");
            std::string n = name_of(s, 1);
            sig.check_fresh(n, s.pos);
            sig.preds[n] = sorts(s[2]);
        } else if (h == "axiom") {
            if (s.size() != 3) bad(s, "axiom takes a name and a formula");
            std::string n = name_of(s, 1);
            if (sig.axioms.count(n)) bad(s, "axiom already declared");
            ExprP a = parse_formula(s[2], sc);
            if (!a->fv.empty()) bad(s, "axiom is not closed");
            if (!is_nc(a)) bad(s, "axiom " + n + " is not non-computational");
            sig.axioms[n] = a;
        } else if (h == "define-pred") {
            if (s.size() != 3) bad(s, "define-pred takes a name and a predicate");
            std::string n = name_of(s, 1);
            sig.check_fresh(n, s.pos);
            ExprP p = parse_predicate(s[2], sc);
            if (!p->fv.empty() || !p->fpv.empty()) bad(s, "definition is not closed");
            if (p->kind == EK::Mu) p = mk_mu(p->a, n);
            else if (p->kind == EK::Nu) p = mk_nu(p->a, n);
            sig.defs[n] = p;
        } else if (h == "define-op") {
            if (s.size() != 3) bad(s, "define-op takes a name and an operator");
            std::string n = name_of(s, 1);
            sig.check_fresh(n, s.pos);
            ExprP op = parse_operator(s[2], sc);
            if (!op->fv.empty() || !op->fpv.empty()) bad(s, "operator is not closed");
            sig.ops[n] = op;
        } else if (h == "include") {
            if (s.size() != 2 || !s[1].quoted) bad(s, "include takes a file name string");
            file((std::filesystem::path(dir) / s[1].text).lexically_normal().string());
        } else if (h == "theorem") {
            if (s.size() != 4) bad(s, "theorem takes a name, a formula and a derivation");
            std::string n = name_of(s, 1);
            if (out.find(n)) bad(s, "theorem already declared");
            ExprP a = parse_formula(s[2], sc);
            if (!a->fv.empty()) bad(s, "theorem statement is not closed");
            DerivP d = parse_deriv(s[3], sc);
            check(env, {}, d, a);
            out.theorems.push_back({n, a, d, s.pos});
            env.lemmas[n] = a;
        } else if (h == "program") {
            if (s.size() != 3 || !s[2].quoted) bad(s, "program takes a name and a program string");
            std::string n = name_of(s, 1);
            for (auto &p : out.programs)
                if (p.name == n) bad(s, "program already declared");
            out.programs.push_back({n, s[2].text, s[2].pos});
        } else {
            bad(s, "unknown statement " + h);
        }
    }

    void text(const std::string &src, const std::string &name, const std::string &dir) {
        for (auto &s : read_sexprs(src, name)) statement(s, dir);
    }

    void file(const std::string &path) {
        for (auto &p : stack)
            if (p == path) throw Error(path + ": circular include");
        for (auto &p : out.included)
            if (p == path) return;
        std::ifstream in(path);
        if (!in) throw Error(path + ": cannot open file");
        std::stringstream ss;
        ss << in.rdbuf();
        stack.push_back(path);
        text(ss.str(), path, std::filesystem::path(path).parent_path().string());
        stack.pop_back();
        out.included.push_back(path);
    }
};

}

Script load_script(const std::string &path) {
    Script s;
    s.path = path;
    Loader l(s);
    l.file(path);
    return s;
}

Script load_script_text(const std::string &text, const std::string &name, const std::string &dir) {
    Script s;
    s.path = name;
    Loader l(s);
    l.text(text, name, dir);
    return s;
}

}
