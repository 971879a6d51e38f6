#include "ifp/types.hpp"

namespace ifp {

std::string type_var_of(const std::string &X) { return "a_" + X; }

TypeP tau(const ExprP &e) {
    if (is_harrop(e)) return ty_one();
    switch (e->kind) {
    case EK::PredApp:
        return tau(e->a);
    case EK::Or:
        return ty_sum(tau(e->a), tau(e->b));
    case EK::And:
        if (is_harrop(e->a)) return tau(e->b);
        if (is_harrop(e->b)) return tau(e->a);
        return ty_prod(tau(e->a), tau(e->b));
    case EK::Imp:
        if (is_harrop(e->a)) return tau(e->b);
        return ty_arrow(tau(e->a), tau(e->b));
    case EK::All:
    case EK::Ex:
    case EK::Abst:
        return tau(e->a);
    case EK::PVar:
        return ty_var(type_var_of(e->name));
    case EK::Mu:
    case EK::Nu:
        return tau(e->a);
    case EK::Op:
        return ty_fix(type_var_of(e->name), tau(e->a));
    default:
        return ty_one();
    }
}

bool is_regular(const TypeP &t) {
    switch (t->kind) {
    case TK::Var:
    case TK::One:
        return true;
    case TK::Fix: {
        std::vector<std::string> binders;
        TypeP cur = t;
        while (cur->kind == TK::Fix) {
            binders.push_back(cur->name);
            cur = cur->a;
        }
        if (cur->kind == TK::Var)
            for (auto &b : binders)
                if (b == cur->name) return false;
        return is_regular(t->a);
    }
    default:
        return is_regular(t->a) && is_regular(t->b);
    }
}

bool has_arrow(const TypeP &t) {
    if (t->kind == TK::Arrow) return true;
    return (t->a && has_arrow(t->a)) || (t->b && has_arrow(t->b));
}

static bool data_sp(const ExprP &e) {
    switch (e->kind) {
    case EK::Imp:
        if (!is_harrop(e->a) && !is_harrop(e->b)) return false;
        return data_sp(e->b);
    case EK::Eq:
    case EK::PConst:
    case EK::PVar:
        return true;
    default:
        return (!e->a || data_sp(e->a)) && (!e->b || data_sp(e->b));
    }
}

bool is_data_formula(const ExprP &a) { return a->fpv.empty() && data_sp(a); }

}
