// acceptance criteria 1-10, one line each
#include "ifp/corpus.hpp"
#include "ifp/extract.hpp"
#include "ifp/types.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>

using namespace ifp;

namespace {

bool slow = false;

struct Verdict {
    bool ok = true;
    std::string note;

    void fail(const std::string &why) {
        if (ok) note = why;
        ok = false;
    }
    void require(bool c, const std::string &why) {
        if (!c) fail(why);
    }
};

const ProgEnv &env() {
    static ProgEnv e = [] {
        Manifest m = load_manifest(default_manifest());
        return program_env(load_script(m.programs));
    }();
    return e;
}

ProgP prog(const std::string &s) { return parse_prog(s, env()); }

// ---- rational Gray code oracle for eventually periodic signed digit streams

struct Q {
    __int128 n = 0, d = 1;
};

Q norm(Q q) {
    __int128 a = q.n < 0 ? -q.n : q.n, b = q.d;
    while (b) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) q.n /= a, q.d /= a;
    return q;
}

Q value(const std::vector<int> &prefix, const std::vector<int> &cycle) {
    // Σ p_i 2^-i + 2^-k · C / (2^m - 1)
    __int128 a = 0, pk = 1, c = 0, pm = 1;
    for (int p : prefix) a = a * 2 + p, pk *= 2;
    for (int p : cycle) c = c * 2 + p, pm *= 2;
    return norm({a * (pm - 1) + c, pk * (pm - 1)});
}

Q tent(Q x) {
    __int128 a = x.n < 0 ? -x.n : x.n;
    return norm({x.d - 2 * a, x.d});
}

// 'L', 'R', or '?' where the itinerary hits 0
std::string gray_oracle(Q x, size_t k) {
    std::string s;
    for (size_t i = 0; i < k; ++i) {
        s += x.n < 0 ? 'L' : x.n > 0 ? 'R' : '?';
        x = tent(x);
    }
    return s;
}

char gray(const DataP &d) {
    if (d->kind == PK::Bot) return '_';
    if (data_eq(d, g_L())) return 'L';
    if (data_eq(d, g_R())) return 'R';
    return 'x';
}

std::string gray_cells(const DataP &d, size_t max = 64) {
    std::string s;
    for (auto &c : stream_prefix(d, max)) s += gray(c);
    return s;
}

// resolved digits must agree with the oracle; '?' admits anything
bool consistent(const std::string &got, const std::string &oracle) {
    for (size_t i = 0; i < got.size() && i < oracle.size(); ++i)
        if (got[i] != '_' && oracle[i] != '?' && got[i] != oracle[i]) return false;
    return true;
}

std::vector<std::pair<uint64_t, DataP>> snapshots(const ProgP &m, uint64_t n) {
    std::vector<std::pair<uint64_t, DataP>> out = {{0, p_bot()}};
    approx_watch(m, n, [&](uint64_t k, const DataP &d) { out.push_back({k, d}); });
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1-4

Verdict criterion1() {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    auto snaps = snapshots(prog("stog ones"), 10000);
    double t = seconds_since(t0);
    const DataP &last = snaps.back().second;
    v.require(data_leq(prog("R : L : L : L : ⊥"), last), "R:L:L:L:⊥ not below the approximation");
    std::string cells = gray_cells(last, 20);
    v.require(cells == "R" + std::string(19, 'L'), "first 20 digits are " + cells);
    v.require(consistent(gray_cells(last), gray_oracle(value({}, {1}), 64)), "disagrees with the rational oracle");
    v.require(t < 5.0, "took " + std::to_string(t) + " s");
    // the extracted program reaches the same prefix
    v.require(data_leq(prog("R : L : L : L : ⊥"), approx(prog("ext_stog ones"), 200)),
              "extracted stog misses R:L:L:L:⊥ within 200 steps");
    std::ostringstream s;
    s << "stog ones -> " << print_data(last, DataFormat::Stream, 24) << " in " << snaps.back().first << " steps";
    if (v.ok) v.note = s.str();
    return v;
}

Verdict criterion2() {
    Verdict v;
    auto snaps = snapshots(prog("stog half"), 10000);
    const DataP &last = snaps.back().second;
    v.require(gray_cells(last, 5) == "RRRLL", "first five digits are " + gray_cells(last, 5));
    v.require(consistent(gray_cells(last), gray_oracle(value({0}, {1}), 64)), "disagrees with the rational oracle");
    const char *chain[] = {"⊥", "⊥ : R : ⊥", "R : R : ⊥", "R : R : R : ⊥", "R : R : R : L : ⊥"};
    DataP prev;
    for (auto *c : chain) {
        DataP d = prog(c);
        if (prev) v.require(data_leq(prev, d), std::string("chain breaks at ") + c);
        bool dominated = false;
        for (auto &[n, a] : snaps) dominated |= data_leq(d, a);
        v.require(dominated, std::string(c) + " is not below any approximation");
        prev = d;
    }
    v.require(data_leq(prog("R : R : R : L : L : ⊥"), approx(prog("ext_stog half"), 300)),
              "extracted stog misses R:R:R:L:L within 300 steps");
    if (v.ok) v.note = "stog half -> " + print_data(last, DataFormat::Stream, 12);
    return v;
}

Verdict criterion3(uint64_t n) {
    Verdict v;
    auto snaps = snapshots(prog("stog half'"), n);
    for (auto &[k, d] : snaps) {
        auto cells = stream_prefix(d, 2);
        if (cells.size() >= 2 && cells[1]->kind != PK::Bot) v.fail("digit 1 resolved at step " + std::to_string(k));
    }
    const DataP &last = snaps.back().second;
    std::string cells = gray_cells(last, 5);
    v.require(cells == "R_RLL", "first five cells are " + cells);
    v.require(consistent(gray_cells(last), gray_oracle(value({1}, {0}), 64)), "disagrees with the rational oracle");
    v.require(data_leq(prog("R : ⊥ : R : L : L : ⊥"), approx(prog("ext_stog half'"), 300)),
              "extracted stog misses R:⊥:R:L:L within 300 steps");
    if (v.ok) v.note = "stog half' -> " + print_data(last, DataFormat::Stream, 12) + ", n <= " + std::to_string(n);
    return v;
}

Verdict criterion4() {
    Verdict v;
    ProgP m = prog("sgh zeros");
    for (uint64_t fuel : {10ull, 1000ull, 100000ull, 1000000ull})
        v.require(bigstep(m, fuel).outcome == Outcome::Diverged, "bigstep returned with fuel " + std::to_string(fuel));
    auto snaps = snapshots(m, 10000);
    for (auto &[k, d] : snaps) v.require(d->kind == PK::Bot, "approximation above ⊥ at step " + std::to_string(k));
    if (v.ok) v.note = "sgh zeros: diverged at fuel 10^6, approx ⊥ up to 10^4";
    return v;
}

// ---- 5

DataP unary(unsigned n) {
    DataP d = p_ctor(Ctor::Left, {p_ctor(Ctor::Nil, {})});
    while (n--) d = p_ctor(Ctor::Right, {d});
    return d;
}

Verdict criterion5() {
    Verdict v;
    ProgP plus = prog("plus");
    int checked = 0;
    for (unsigned n = 0; n <= 25; ++n)
        for (unsigned m = 0; m <= 25; ++m) {
            auto r = compute_finite(p_apps(plus, {unary(n), unary(m)}));
            if (!r.ok) {
                v.fail("no result for " + std::to_string(n) + "+" + std::to_string(m));
                continue;
            }
            v.require(data_eq(r.data, unary(n + m)), "wrong sum for " + std::to_string(n) + "+" + std::to_string(m));
            ++checked;
        }
    if (v.ok) v.note = std::to_string(checked) + " sums agree with unary addition";
    return v;
}

// ---- 6, 7, 10 through the corpus runner

std::vector<EntryReport> &reports() {
    static std::vector<EntryReport> r = [] {
        Manifest m = load_manifest(default_manifest());
        std::vector<EntryReport> out;
        for (auto &n : m.names) out.push_back(run_entry(m, load(m, n)));
        return out;
    }();
    return r;
}

Verdict lines_matching(const std::vector<std::string> &entries, const std::vector<std::string> &whats) {
    Verdict v;
    int count = 0;
    for (auto &r : reports()) {
        if (!entries.empty() && std::find(entries.begin(), entries.end(), r.name) == entries.end()) continue;
        for (auto &l : r.lines)
            for (auto &w : whats)
                if (l.what == w) {
                    ++count;
                    v.require(l.ok, r.name + ": " + l.what + " " + l.detail);
                }
    }
    v.require(count > 0, "nothing checked");
    if (v.ok) v.note = std::to_string(count) + " checks";
    return v;
}

Verdict criterion6() {
    Verdict v = lines_matching({"plus", "minus", "sgh", "sgt", "stog"}, {"golden raw", "golden simplified"});
    Verdict p = lines_matching({"minus", "sgh", "sgt", "stog"}, {"reference form"});
    if (!p.ok) v.fail(p.note);
    if (v.ok) v.note = "goldens: " + v.note + ", reference forms: " + p.note;
    return v;
}

Verdict criterion7() {
    Verdict v = lines_matching({}, {"type raw", "type simplified", "type typed"});
    const Signature &sig = load_script(default_manifest().substr(0, default_manifest().rfind('/')) + "/reals.ifp").sig;
    struct {
        const char *pred, *type;
    } stated[] = {{"(N 0)", "(fix a (+ 1 a))"},
                  {"(S 0)", "(fix a (* (+ (+ 1 1) 1) a))"},
                  {"(G 0)", "(fix a (* (+ 1 1) a))"}};
    for (auto &s : stated)
        v.require(type_alpha_eq(tau(parse(s.pred, sig)), parse_type_text(s.type)),
                  std::string("τ") + s.pred + " = " + print_type(tau(parse(s.pred, sig))));
    if (v.ok) v.note += ", τ(N) τ(S) τ(G) as stated";
    return v;
}

Verdict criterion10() {
    Verdict v = lines_matching({}, {"golden haskell"});
    if (v.ok) v.note += " byte-exact; compiling the modules is not part of this suite";
    return v;
}

// ---- 8

struct Gen {
    std::mt19937_64 rng{0x5eed1f9ULL};

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

    ProgP data(int depth) {
        switch (depth <= 0 ? pick(2) : pick(5)) {
        case 0:
            return p_nil();
        case 1:
            return p_bot();
        case 2:
            return p_left(data(depth - 1));
        case 3:
            return p_right(data(depth - 1));
        default:
            return p_pair(data(depth - 1), data(depth - 1));
        }
    }

    // a data value above d
    ProgP refine(const ProgP &d, int depth) {
        switch (d->kind) {
        case PK::Bot:
            return pick(2) ? d : data(depth);
        case PK::Left:
            return p_left(refine(d->a, depth));
        case PK::Right:
            return p_right(refine(d->a, depth));
        case PK::Pair:
            return p_pair(refine(d->a, depth), refine(d->b, depth));
        default:
            return d;
        }
    }

    ProgP prog(int depth, std::vector<std::string> &scope) {
        int k = depth <= 0 ? pick(3) : pick(11);
        if (k == 0 && !scope.empty()) return p_var(scope[pick(scope.size())]);
        switch (k) {
        case 0:
        case 1:
            return p_nil();
        case 2:
            return pick(4) ? p_nil() : p_bot();
        case 3:
            return p_left(prog(depth - 1, scope));
        case 4:
            return p_right(prog(depth - 1, scope));
        case 5: {
            ProgP a = prog(depth - 1, scope);
            return p_pair(a, prog(depth - 1, scope));
        }
        case 6:
        case 7: {
            std::string x = "x" + std::to_string(scope.size());
            scope.push_back(x);
            ProgP b = prog(depth - 1, scope);
            scope.pop_back();
            return p_lam(x, b);
        }
        case 8: {
            ProgP f = prog(depth - 1, scope);
            return p_app(f, prog(depth - 1, scope));
        }
        case 9: {
            std::string x = "x" + std::to_string(scope.size());
            scope.push_back(x);
            ProgP b = prog(depth - 1, scope);
            scope.pop_back();
            return p_rec(p_lam(x, b));
        }
        default: {
            ProgP s = prog(depth - 1, scope);
            std::vector<Clause> cls;
            std::string a = "x" + std::to_string(scope.size()), b = "x" + std::to_string(scope.size() + 1);
            for (Ctor c : {Ctor::Nil, Ctor::Left, Ctor::Right, Ctor::Pair}) {
                if (pick(3) == 0) continue;
                std::vector<std::string> vs;
                if (ctor_arity(c) >= 1) vs.push_back(a);
                if (ctor_arity(c) == 2) vs.push_back(b);
                scope.insert(scope.end(), vs.begin(), vs.end());
                cls.push_back({c, vs, prog(depth - 1, scope)});
                scope.resize(scope.size() - vs.size());
            }
            return p_case(s, cls);
        }
        }
    }
};

Verdict criterion8() {
    Verdict v;
    Gen g;
    const int programs = 1500;
    int values = 0;
    for (int i = 0; i < programs; ++i) {
        std::vector<std::string> scope;
        ProgP m = g.prog(5, scope);
        std::string tag = "program " + std::to_string(i) + " " + print_prog(m);

        // (a)
        EvalResult big = bigstep(m, 20000);
        if (big.outcome == Outcome::Value) {
            ++values;
            ProgP cur = m;
            bool reached = false;
            for (int k = 0; k < 20000; ++k) {
                StepResult s = smallstep(cur);
                if (s.kind == StepKind::Value) {
                    reached = prog_alpha_eq(s.next, big.value);
                    break;
                }
                if (s.kind == StepKind::Stuck) break;
                cur = s.next;
            }
            v.require(reached, "(a) " + tag);
        }

        // (b)
        ProgP cur = m;
        DataP prev = data_part(cur);
        for (int k = 0; k < 60; ++k) {
            cur = parallel_step(cur);
            DataP d = data_part(cur);
            v.require(data_leq(prev, d), "(b) " + tag);
            prev = d;
            if (prog_size(cur) > 20000) break;
        }

        // (c)
        ProgP p1 = parallel_step(m), p2 = parallel_step(m);
        v.require(prog_alpha_eq(p1, p2), "(c) " + tag);
        v.require(prog_alpha_eq(parallel_step(parse_prog(print_prog(m))), p1), "(c) reparsed " + tag);
    }

    // (d)
    for (int i = 0; i < 1500; ++i) {
        DataP a = g.data(4), b = g.refine(a, 3), c = g.refine(b, 3), x = g.data(4);
        v.require(data_leq(a, a), "(d) reflexivity");
        v.require(data_leq(a, b) && data_leq(b, c) && data_leq(a, c), "(d) transitivity");
        if (data_leq(a, x) && data_leq(x, a)) v.require(data_eq(a, x), "(d) antisymmetry");
        if (data_leq(b, a)) v.require(data_eq(a, b), "(d) antisymmetry of a refinement");
        v.require(data_leq(p_bot(), x), "(d) ⊥ is least");
    }
    if (v.ok) v.note = std::to_string(programs) + " programs (" + std::to_string(values) + " with a value), 1500 data triples";
    return v;
}

// ---- 9

// no constructor clash anywhere
bool compatible(const DataP &a, const DataP &b) {
    if (a->kind == PK::Bot || b->kind == PK::Bot) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case PK::Left:
    case PK::Right:
        return compatible(a->a, b->a);
    case PK::Pair:
        return compatible(a->a, b->a) && compatible(a->b, b->b);
    default:
        return true;
    }
}

ProgP signed_stream(Gen &g) {
    const ProgP digits[] = {d_minus1(), d_zero(), d_one()};
    std::vector<ProgP> prefix, cycle;
    int k = g.pick(6), m = 1 + g.pick(3);
    for (int i = 0; i < k; ++i) prefix.push_back(digits[g.pick(3)]);
    for (int i = 0; i < m; ++i) cycle.push_back(digits[g.pick(3)]);
    ProgP tail = p_var("s");
    for (auto it = cycle.rbegin(); it != cycle.rend(); ++it) tail = p_pair(*it, tail);
    ProgP s = p_rec(p_lam("s", tail));
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) s = p_pair(*it, s);
    return s;
}

// both chains in lockstep up to n, compatible at every n
bool agree(const ProgP &raw, const ProgP &simp, uint64_t n, std::string &why) {
    ProgP a = raw, b = simp;
    DataP da = data_part(a), db = data_part(b);
    for (uint64_t k = 1; k <= n; ++k) {
        if (!compatible(da, db)) {
            why = "clash at n=" + std::to_string(k) + ": " + print_data(da) + " vs " + print_data(db);
            return false;
        }
        a = parallel_step(a);
        b = parallel_step(b);
        da = data_part(a);
        db = data_part(b);
    }
    if (!compatible(da, db)) {
        why = "clash at n=" + std::to_string(n);
        return false;
    }
    return true;
}

Verdict criterion9() {
    Verdict v;
    Gen g;
    g.rng.seed(0x9a11ULL);
    Manifest man = load_manifest(default_manifest());
    std::ostringstream note;
    for (auto &name : man.names) {
        CorpusEntry e = load(man, name);
        ProgP raw = extract_theorem(*e.loaded, e.theorem);
        ProgP simp = simplify(raw);
        const uint64_t n = 1000;
        int inputs = 0;
        for (int i = 0; i < 10; ++i) {
            std::vector<ProgP> args;
            if (name == "plus") {
                args = {unary(g.pick(12)), unary(g.pick(12))};
            } else {
                args = {signed_stream(g)};
            }
            std::string why;
            bool ok = agree(p_apps(raw, args), p_apps(simp, args), n, why);
            v.require(ok, name + " on " + print_prog(args[0]) + ": " + why);
            ++inputs;
        }
        note << name << " " << inputs << "x n<=" << n << " ";
    }
    if (v.ok) v.note = note.str();
    return v;
}

}

int main(int argc, char **argv) {
    for (int i = 1; i < argc; ++i)
        if (!std::strcmp(argv[i], "--slow")) slow = true;

    struct Row {
        int id;
        const char *title;
        std::function<Verdict()> run;
    };
    std::vector<Row> rows = {
        {1, "Gray code of 1", criterion1},
        {2, "Gray code of 0:1:1:...", criterion2},
        {3, "partial output for 1:0:0:...", [] { return criterion3(slow ? 100000 : 10000); }},
        {4, "divergence of sgh on zeros", criterion4},
        {5, "extracted plus", criterion5},
        {6, "golden extraction", criterion6},
        {7, "type preservation", criterion7},
        {8, "operational properties", criterion8},
        {9, "simplifier equivalence", criterion9},
        {10, "Haskell goldens", criterion10},
    };
    // the slow suite repeats criterion 3 with the larger budget
    if (slow) rows = {rows[2]};
    bool all = true;
    for (auto &r : rows) {
        Verdict v;
        auto t0 = std::chrono::steady_clock::now();
        try {
            v = r.run();
        } catch (const std::exception &e) {
            v.fail(std::string("exception: ") + e.what());
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2fs", seconds_since(t0));
        std::cout << "criterion " << r.id << ": " << (v.ok ? "PASS" : "FAIL") << "  " << r.title << " (" << buf
                  << ")  " << v.note << std::endl;
        all &= v.ok;
    }
    return all ? 0 : 1;
}
