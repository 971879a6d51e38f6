#pragma once

#include "doctest.h"
#include "ifp/kernel.hpp"

#include <string>

inline std::string corpus_path(const std::string &f) { return std::string(IFP_CORPUS_DIR) + "/" + f; }

inline const ifp::Script &reals() {
    static ifp::Script s = ifp::load_script(corpus_path("reals.ifp"));
    return s;
}

inline const ifp::Script &stog_script() {
    static ifp::Script s = ifp::load_script(corpus_path("stog.ifp"));
    return s;
}

inline ifp::ExprP F(const std::string &text) { return ifp::parse(text, reals().sig); }
inline ifp::ExprP P(const std::string &text) { return ifp::parse_pred_text(text, reals().sig); }
