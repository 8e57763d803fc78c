#pragma once

#include "sealscript/sealscript.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(SEALSCRIPT_DATA_DIR) + "/" + name; }

inline sealscript::SignInventory inventory() { return sealscript::load_inventory(data("inventory.tsv")); }

inline sealscript::GrammarSpec grammar(const sealscript::SignInventory& inv) {
    return sealscript::load_grammar(data("grammar.tsv"), inv);
}

inline sealscript::SignInventory inventory_from(const std::string& text) {
    std::istringstream in(text);
    return sealscript::parse_inventory(in, "<test>");
}

inline sealscript::Corpus corpus_from(const std::string& text, const sealscript::SignInventory& inv) {
    std::istringstream in(text);
    return sealscript::parse_corpus(in, inv, "<test>");
}

inline sealscript::GrammarSpec grammar_from(const std::string& text, const sealscript::SignInventory& inv) {
    std::istringstream in(text);
    return sealscript::parse_grammar(in, inv, "<test>");
}

inline std::vector<sealscript::SignCode> codes(std::initializer_list<std::uint32_t> xs) {
    std::vector<sealscript::SignCode> out;
    for (auto x : xs) out.push_back(sealscript::SignCode{x});
    return out;
}

/// Corpus of bare sequences with ids s0, s1, ...
inline sealscript::Corpus corpus_of(const std::vector<std::vector<sealscript::SignCode>>& seqs) {
    sealscript::Corpus c;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        sealscript::Inscription ins;
        ins.id = "s" + std::to_string(i);
        ins.signs = seqs[i];
        c.inscriptions.push_back(std::move(ins));
    }
    return c;
}

/// Inventory of plain OTHER signs with the given codes.
inline sealscript::SignInventory plain_inventory(const std::vector<std::uint32_t>& xs) {
    sealscript::SignInventory inv("<plain>");
    for (auto x : xs)
        inv.add(sealscript::Sign{sealscript::SignCode{x}, {sealscript::SignClass::Other}, std::nullopt, std::nullopt, ""});
    return inv;
}

}  // namespace fixtures
