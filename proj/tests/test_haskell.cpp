#include "common.hpp"
#include "ifp/extract.hpp"
#include "ifp/haskell.hpp"

using namespace ifp;

TEST_CASE("fix type names depend on the alpha class only") {
    std::string a = fix_type_name(parse_type_text("(fix a (+ 1 a))"));
    std::string b = fix_type_name(parse_type_text("(fix b (+ 1 b))"));
    std::string c = fix_type_name(parse_type_text("(fix a (* 1 a))"));
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.size() == 9);
    CHECK(a[0] == 'T');
}

TEST_CASE("types map to Haskell types") {
    HsTypes ts;
    CHECK(emit_type(parse_type_text("(+ 1 (* 1 1))"), ts) == "Either One (One, One)");
    CHECK(emit_type(parse_type_text("(-> 1 1)"), ts) == "One -> One");
    CHECK(ts.decls.empty());
    std::string n = emit_type(parse_type_text("(fix a (+ 1 a))"), ts);
    CHECK(n == fix_type_name(parse_type_text("(fix a (+ 1 a))")));
    CHECK(ts.decls.size() == 1);
}

TEST_CASE("identifiers") {
    CHECK(haskell_ident("stog") == "stog");
    CHECK(haskell_ident("S") == "thm_S");
    CHECK(haskell_ident("data") == "data_");
}

TEST_CASE("emitted module shape") {
    ExtractionResult r = extract_typed(stog_script(), "minus");
    std::string t = emit_program("minus", r.typed, r.type).text();
    CHECK(t.rfind("module Extracted where\n", 0) == 0);
    CHECK(t.find("\nminus :: ") != std::string::npos);
    CHECK(t.find("\nminus = ") != std::string::npos);
    CHECK(t.find("roll_T") != std::string::npos);
    CHECK(t == emit_program("minus", r.typed, r.type).text());
}
