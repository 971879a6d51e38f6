#include "ifp/corpus.hpp"
#include "ifp/extract.hpp"
#include "ifp/haskell.hpp"
#include "ifp/types.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace ifp {

ProgEnv program_env(const Script &s) {
    ProgEnv env;
    for (auto &t : s.theorems) {
        ProgP m;
        try {
            m = simplify(extract(s, t.proof));
        } catch (const ExtractError &) {
            continue;
        }
        env[t.name] = m;
        env["ext_" + t.name] = m;
    }
    for (auto &p : s.programs) {
        try {
            env[p.name] = parse_prog(p.text, env);
        } catch (const Error &e) {
            throw PosError(p.pos.str() + ": program " + p.name + ": " + e.what());
        }
    }
    return env;
}

ProgP parse_in(const Script &s, const std::string &text) { return parse_prog(text, program_env(s)); }

namespace {

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw CorpusError(path + ": cannot open manifest");
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw CorpusError(path + ": " + e.what());
    }
}

const json &entry_json(const json &j, const std::string &name) {
    for (auto &e : j.at("entries"))
        if (e.at("name") == name) return e;
    throw CorpusError("unknown corpus entry " + name);
}

struct EnvCache {
    std::map<std::string, std::pair<std::shared_ptr<Script>, ProgEnv>> by_path;

    const ProgEnv &get(const std::string &path) {
        auto it = by_path.find(path);
        if (it == by_path.end()) {
            auto s = std::make_shared<Script>(load_script(path));
            it = by_path.emplace(path, std::make_pair(s, program_env(*s))).first;
        }
        return it->second.second;
    }
};

EnvCache &cache() {
    static EnvCache c;
    return c;
}

}

std::string default_manifest() { return std::string(IFP_CORPUS_DIR) + "/manifest.json"; }

Manifest load_manifest(const std::string &path) {
    json j = read_json(path);
    Manifest m;
    m.dir = fs::absolute(path).parent_path().lexically_normal().string();
    try {
        m.programs = (fs::path(m.dir) / j.at("programs").get<std::string>()).string();
        if (j.contains("budgets")) {
            m.fuel = j["budgets"].value("fuel", m.fuel);
            m.steps = j["budgets"].value("steps", m.steps);
        }
        for (auto &e : j.at("entries")) m.names.push_back(e.at("name"));
    } catch (const json::exception &e) {
        throw CorpusError(path + ": " + e.what());
    }
    if (!m.fuel || !m.steps) throw CorpusError(path + ": budgets must be positive");
    return m;
}

CorpusEntry load(const Manifest &m, const std::string &name) {
    json j = read_json(m.dir + "/manifest.json");
    const json &e = entry_json(j, name);
    CorpusEntry c;
    try {
        auto path = [&](const json &v) { return (fs::path(m.dir) / v.get<std::string>()).string(); };
        c.name = name;
        c.script = path(e.at("script"));
        c.theorem = e.at("theorem");
        c.golden_raw = path(e.at("golden").at("raw"));
        c.golden_simplified = path(e.at("golden").at("simplified"));
        c.golden_haskell = path(e.at("golden").at("haskell"));
        c.reference_form = e.value("reference", "");
        for (auto &b : e.value("behaviors", json::array())) {
            Behavior x;
            std::string k = b.at("kind");
            if (k == "approx") x.kind = Behavior::Approx;
            else if (k == "finite") x.kind = Behavior::Finite;
            else if (k == "diverge") x.kind = Behavior::Diverge;
            else throw CorpusError(name + ": unknown behavior kind " + k);
            x.program = b.at("program");
            x.budget = b.value("budget", x.kind == Behavior::Approx ? m.steps : m.fuel);
            x.expect = b.value("expect", "");
            c.behaviors.push_back(x);
        }
    } catch (const json::exception &ex) {
        throw CorpusError("manifest entry " + name + ": " + ex.what());
    }
    c.loaded = std::make_shared<Script>(load_script(c.script));
    const Theorem *t = c.loaded->find(c.theorem);
    if (!t) throw CorpusError(c.script + ": no theorem " + c.theorem);
    c.formula = t->formula;
    return c;
}

GoldenForms render_goldens(const CorpusEntry &e) {
    GoldenForms g;
    ProgP raw = extract_theorem(*e.loaded, e.theorem);
    g.raw = print_prog(raw) + "\n";
    g.simplified = print_prog(simplify(raw)) + "\n";
    ExtractionResult r = extract_typed(*e.loaded, e.theorem);
    g.haskell = emit_program(e.theorem, r.typed, r.type).text();
    return g;
}

bool EntryReport::ok() const {
    for (auto &l : lines)
        if (!l.ok) return false;
    return true;
}

EntryReport run_entry(const Manifest &m, const CorpusEntry &e, bool update) {
    EntryReport rep{e.name, {}};
    auto line = [&](const std::string &what, bool ok, const std::string &detail = "") {
        rep.lines.push_back({what, ok, detail});
    };

    GoldenForms g = render_goldens(e);
    auto golden = [&](const char *what, const std::string &path, const std::string &now) {
        if (update) {
            fs::create_directories(fs::path(path).parent_path());
            std::ofstream(path, std::ios::binary) << now;
        }
        std::string want = slurp(path);
        line(std::string("golden ") + what, want == now, want.empty() ? "missing " + path : "");
    };
    golden("raw", e.golden_raw, g.raw);
    golden("simplified", e.golden_simplified, g.simplified);
    golden("haskell", e.golden_haskell, g.haskell);

    TypeP ty = tau(e.formula);
    ProgP raw = extract_theorem(*e.loaded, e.theorem);
    ProgP simp = simplify(raw);
    ExtractionResult typed = extract_typed(*e.loaded, e.theorem);
    auto tc = [&](const char *what, const ProgP &p, FixMode mode) {
        auto r = type_check({}, p, ty, mode);
        line(std::string("type ") + what, r.ok, r.error);
    };
    tc("raw", raw, FixMode::Greedy);
    tc("simplified", simp, FixMode::Greedy);
    tc("typed", typed.typed, FixMode::Strict);

    if (!e.reference_form.empty()) {
        ProgEnv env;
        for (auto &t : e.loaded->theorems)
            if (t.name != e.theorem) {
                try {
                    env[t.name] = simplify(extract(*e.loaded, t.proof));
                } catch (const ExtractError &) {
                }
            }
        bool eq = false;
        std::string detail;
        try {
            eq = prog_alpha_eq(parse_prog(e.reference_form, env), simp);
        } catch (const Error &ex) {
            detail = ex.what();
        }
        line("reference form", eq, detail);
    }

    const ProgEnv &env = cache().get(m.programs);
    for (auto &b : e.behaviors) {
        std::string what = b.program;
        try {
            ProgP p = parse_prog(b.program, env);
            switch (b.kind) {
            case Behavior::Approx: {
                DataP want = parse_prog(b.expect);
                DataP got = approx(p, b.budget);
                line("approx " + what, data_leq(want, got), "got " + print_data(got));
                break;
            }
            case Behavior::Finite: {
                DataP want = parse_prog(b.expect);
                FiniteResult r = compute_finite(p, b.budget);
                line("finite " + what, r.ok && data_eq(want, r.data),
                     r.ok ? "got " + print_data(r.data, DataFormat::Term) : "no finite result");
                break;
            }
            case Behavior::Diverge: {
                EvalResult r = bigstep(p, b.budget);
                line("diverge " + what, r.outcome == Outcome::Diverged, "");
                break;
            }
            }
        } catch (const Error &ex) {
            line(what, false, ex.what());
        }
    }
    return rep;
}

}
