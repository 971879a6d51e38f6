#pragma once

#include "ifp/program.hpp"

namespace ifp {

struct HsDecl {
    std::string name;
    std::vector<std::string> params;
    std::string body;  // constructor argument type
};

struct HsTypes {
    std::map<std::string, HsDecl> decls;  // by name; alpha-equal fix types share one
};

// Haskell text of a type; fix types register their declarations in out
std::string emit_type(const TypeP &t, HsTypes &out);
// "T" + hash of the canonical printing
std::string fix_type_name(const TypeP &fix);

struct EmittedModule {
    std::string preamble;
    std::vector<std::string> declarations;
    std::string definition;
    std::string text() const;
};

// the program must carry roll/unroll annotations at every fix boundary
EmittedModule emit_program(const std::string &name, const ProgP &typed, const TypeP &type);

std::string haskell_ident(const std::string &name);

}
