#pragma once

// Patterned-text grammar: four ordered optional components, Prefix Medial Core Terminal,
// in logical order. Segmentation is a single greedy left-to-right pass; anything the pass
// cannot consume makes the text Complex.

#include "sealscript/corpus.hpp"
#include "sealscript/random.hpp"

#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sealscript {

struct GrammarSpec {
    std::set<SignCode> prefix;
    std::set<SignCode> fish;
    std::set<SignCode> oval;
    std::set<SignCode> measure;
    std::set<SignCode> core;
    std::set<SignCode> terminal;
    /// Bound from the inventory's NUMERAL class at load time.
    std::set<SignCode> numerals;

    std::size_t max_prefix_len = 4;
    std::size_t max_core_len = 3;
    std::size_t max_terminal_len = 3;

    /// Polyvalence notes produced while loading (a code in more than one set).
    std::vector<std::string> warnings;

    bool is_numeral(SignCode c) const { return numerals.contains(c); }
};

enum class Component : std::uint8_t { Prefix = 0, Medial = 1, Core = 2, Terminal = 3 };
inline constexpr std::array<Component, 4> kComponents{Component::Prefix, Component::Medial, Component::Core,
                                                      Component::Terminal};

inline std::string_view to_string(Component c) {
    switch (c) {
        case Component::Prefix: return "prefix";
        case Component::Medial: return "medial";
        case Component::Core: return "core";
        case Component::Terminal: return "terminal";
    }
    return "?";
}

/// Economic reading attached to each component.
inline std::string_view role_of(Component c) {
    switch (c) {
        case Component::Prefix: return "Institution/Business/Landlord/Family/Person";
        case Component::Medial: return "Number/Quantity/Measures";
        case Component::Core: return "Commodity";
        case Component::Terminal: return "Function of sealing/tablet";
    }
    return "";
}

enum class MedialKind : std::uint8_t { None, FishOval, FishNumeral, NumeralMeasure };

inline std::string_view to_string(MedialKind k) {
    switch (k) {
        case MedialKind::None: return "none";
        case MedialKind::FishOval: return "fish-oval";
        case MedialKind::FishNumeral: return "fish-numeral";
        case MedialKind::NumeralMeasure: return "numeral-measure";
    }
    return "?";
}

/// Half-open index range over the logical sign list.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    bool empty() const { return begin == end; }
    friend bool operator==(const Span&, const Span&) = default;
};

struct Segmentation {
    std::vector<SignCode> signs;
    std::array<Span, 4> spans{};
    MedialKind medial_kind = MedialKind::None;
    std::array<std::optional<std::string_view>, 4> roles{};

    const Span& span(Component c) const { return spans[static_cast<std::size_t>(c)]; }
    std::span<const SignCode> component(Component c) const {
        const Span& s = span(c);
        return std::span<const SignCode>(signs).subspan(s.begin, s.size());
    }
    const std::optional<std::string_view>& role(Component c) const { return roles[static_cast<std::size_t>(c)]; }

    friend bool operator==(const Segmentation&, const Segmentation&) = default;
};

enum class Verdict : std::uint8_t { Patterned, Complex };

inline std::string_view to_string(Verdict v) { return v == Verdict::Patterned ? "Patterned" : "Complex"; }

struct Classification {
    Verdict verdict = Verdict::Complex;
    std::optional<Segmentation> segmentation;  // present iff Patterned
    std::string reason;                        // set iff Complex
    std::optional<std::size_t> failed_position;

    bool patterned() const { return verdict == Verdict::Patterned; }
};

// ---------------------------------------------------------------------------
// Grammar file: `set_name <TAB> codes` and `max_*_len <TAB> n`

inline GrammarSpec parse_grammar(std::istream& in, const SignInventory& inv, const std::string& source) {
    GrammarSpec g;
    for (const auto& [code, sign] : inv.signs())
        if (sign.is_numeral()) g.numerals.insert(code);

    auto set_for = [&](std::string_view key) -> std::set<SignCode>* {
        if (key.ends_with("_set")) key.remove_suffix(4);
        if (key == "prefix") return &g.prefix;
        if (key == "fish") return &g.fish;
        if (key == "oval") return &g.oval;
        if (key == "measure") return &g.measure;
        if (key == "core") return &g.core;
        if (key == "terminal") return &g.terminal;
        return nullptr;
    };
    auto cap_for = [&](std::string_view key) -> std::size_t* {
        if (key == "max_prefix_len") return &g.max_prefix_len;
        if (key == "max_core_len") return &g.max_core_len;
        if (key == "max_terminal_len") return &g.max_terminal_len;
        return nullptr;
    };

    detail::for_each_record(in, [&](std::size_t lineno, std::string_view line) {
        const auto tab = line.find('\t');
        if (tab == std::string_view::npos) throw FormatError(source, lineno, "expected `name<TAB>value`");
        const auto key = detail::trim(line.substr(0, tab));
        const auto value = detail::trim(line.substr(tab + 1));

        if (auto* cap = cap_for(key)) {
            auto n = detail::parse_int<std::size_t>(value);
            if (!n || *n == 0) throw FormatError(source, lineno, std::string(key) + " must be a positive integer");
            *cap = *n;
            return;
        }
        auto* set = set_for(key);
        if (!set) throw FormatError(source, lineno, "unknown grammar key '" + std::string(key) + "'");

        const auto tokens = detail::split_words(value);
        for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
            auto code = detail::parse_int<std::uint32_t>(tokens[pos]);
            if (!code) throw FormatError(source, lineno, "malformed sign code '" + std::string(tokens[pos]) + "'");
            if (!inv.contains(SignCode{*code}))
                throw ValidationError(source, lineno, "", std::nullopt,
                                      "unknown sign code " + std::to_string(*code) + " in " + std::string(key) +
                                          " set (position " + std::to_string(pos) + ")");
            set->insert(SignCode{*code});
        }
    });

    const std::array<std::pair<std::string_view, const std::set<SignCode>*>, 6> named{{
        {"prefix", &g.prefix},
        {"fish", &g.fish},
        {"oval", &g.oval},
        {"measure", &g.measure},
        {"core", &g.core},
        {"terminal", &g.terminal},
    }};
    std::set<SignCode> all;
    for (const auto& [_, s] : named) all.insert(s->begin(), s->end());
    for (auto code : all) {
        std::string where;
        int hits = 0;
        for (const auto& [name, s] : named) {
            if (!s->contains(code)) continue;
            where += (hits++ ? ", " : "") + std::string(name);
        }
        if (hits > 1) g.warnings.push_back("polyvalent sign " + to_string(code) + " in sets: " + where);
    }
    return g;
}

inline GrammarSpec load_grammar(const std::string& path, const SignInventory& inv) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open grammar file '" + path + "'");
    return parse_grammar(in, inv, path);
}

// ---------------------------------------------------------------------------

namespace detail {

inline std::size_t greedy_run(std::span<const SignCode> s, std::size_t pos, const std::set<SignCode>& set,
                              std::size_t cap) {
    std::size_t n = 0;
    while (pos + n < s.size() && n < cap && set.contains(s[pos + n])) ++n;
    return n;
}

struct MedialMatch {
    std::size_t length = 0;
    MedialKind kind = MedialKind::None;
};

/// Longest of: fish+ oval | numeral fish+ | numeral [measure].
inline MedialMatch match_medial(std::span<const SignCode> s, std::size_t pos, const GrammarSpec& g) {
    MedialMatch best;
    auto offer = [&](std::size_t len, MedialKind kind) {
        if (len > best.length) best = {len, kind};
    };

    for (std::size_t i = pos; i < s.size() && g.fish.contains(s[i]); ++i)
        if (i + 1 < s.size() && g.oval.contains(s[i + 1])) offer(i + 2 - pos, MedialKind::FishOval);

    if (pos < s.size() && g.is_numeral(s[pos])) {
        const std::size_t fish = greedy_run(s, pos + 1, g.fish, s.size());
        if (fish > 0) offer(1 + fish, MedialKind::FishNumeral);
        const bool measured = pos + 1 < s.size() && g.measure.contains(s[pos + 1]);
        offer(measured ? 2 : 1, MedialKind::NumeralMeasure);
    }
    return best;
}

}  // namespace detail

/// Segments a logical-order sign list. Each component takes its longest admissible run in
/// the order Prefix, Medial, Core, Terminal; the text is Patterned iff nothing is left over.
inline Classification segment(std::span<const SignCode> signs, const GrammarSpec& g) {
    Segmentation seg;
    seg.signs.assign(signs.begin(), signs.end());
    std::size_t pos = 0;

    auto take = [&](Component c, std::size_t len) {
        seg.spans[static_cast<std::size_t>(c)] = Span{pos, pos + len};
        pos += len;
    };

    take(Component::Prefix, detail::greedy_run(signs, pos, g.prefix, g.max_prefix_len));
    const auto medial = detail::match_medial(signs, pos, g);
    seg.medial_kind = medial.kind;
    take(Component::Medial, medial.length);
    take(Component::Core, detail::greedy_run(signs, pos, g.core, g.max_core_len));
    take(Component::Terminal, detail::greedy_run(signs, pos, g.terminal, g.max_terminal_len));

    Classification out;
    if (!signs.empty() && pos == signs.size()) {
        out.verdict = Verdict::Patterned;
        out.segmentation = std::move(seg);
        return out;
    }
    out.verdict = Verdict::Complex;
    out.failed_position = pos;
    out.reason = signs.empty() ? "empty inscription"
                               : "sign " + to_string(signs[pos]) + " at position " + std::to_string(pos) +
                                     " not consumed by any component";
    return out;
}

inline Classification segment(const Inscription& ins, const GrammarSpec& g) { return segment(ins.signs, g); }

struct ClassifiedInscription {
    std::string id;
    Classification classification;
};

struct CorpusClassification {
    std::vector<ClassifiedInscription> results;  // corpus order
    std::size_t patterned = 0;
    std::size_t complex = 0;
};

inline CorpusClassification classify_corpus(const Corpus& c, const GrammarSpec& g) {
    CorpusClassification out;
    out.results.reserve(c.size());
    for (const auto& ins : c.inscriptions) {
        auto cls = segment(ins, g);
        ++(cls.patterned() ? out.patterned : out.complex);
        out.results.push_back({ins.id, std::move(cls)});
    }
    return out;
}

inline Segmentation label_roles(Segmentation s) {
    for (auto c : kComponents) {
        const auto i = static_cast<std::size_t>(c);
        s.roles[i] = s.spans[i].empty() ? std::nullopt : std::optional<std::string_view>(role_of(c));
    }
    return s;
}

inline Segmentation label_roles(const Classification& cls) {
    if (!cls.patterned() || !cls.segmentation)
        throw ContractViolation("label_roles: Complex texts have no segmentation");
    return label_roles(*cls.segmentation);
}

// ---------------------------------------------------------------------------
// Synthetic patterned inscriptions

/// Upper bound on the fish run emitted inside a generated Medial cluster.
inline constexpr std::size_t kMaxGeneratedFishRun = 3;

namespace detail {

inline SignCode pick(Rng& rng, const std::set<SignCode>& set) {
    auto it = set.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(rng.below(set.size())));
    return *it;
}

inline void emit_run(Rng& rng, const std::set<SignCode>& set, std::size_t cap, std::vector<SignCode>& out) {
    const std::size_t len = 1 + rng.below(cap);
    for (std::size_t i = 0; i < len; ++i) out.push_back(pick(rng, set));
}

inline void emit_medial(Rng& rng, const GrammarSpec& g, std::vector<SignCode>& out) {
    std::vector<MedialKind> options;
    if (!g.fish.empty() && !g.oval.empty()) options.push_back(MedialKind::FishOval);
    if (!g.numerals.empty() && !g.fish.empty()) options.push_back(MedialKind::FishNumeral);
    if (!g.numerals.empty()) options.push_back(MedialKind::NumeralMeasure);

    switch (options[rng.below(options.size())]) {
        case MedialKind::FishOval:
            emit_run(rng, g.fish, kMaxGeneratedFishRun, out);
            out.push_back(pick(rng, g.oval));
            break;
        case MedialKind::FishNumeral:
            out.push_back(pick(rng, g.numerals));
            emit_run(rng, g.fish, kMaxGeneratedFishRun, out);
            break;
        case MedialKind::NumeralMeasure:
            out.push_back(pick(rng, g.numerals));
            if (!g.measure.empty() && rng.coin()) out.push_back(pick(rng, g.measure));
            break;
        case MedialKind::None:
            break;
    }
}

}  // namespace detail

/// Emits `n` inscriptions, each an independent draw of optional Prefix, Medial, Core and
/// Terminal realizations (present with probability 1/2, lengths and codes uniform).
/// All-absent draws are redrawn, so no inscription is empty.
inline std::vector<Inscription> generate(const GrammarSpec& g, std::uint64_t seed, std::size_t n,
                                         std::string_view id_prefix = "gen") {
    const bool has_prefix = !g.prefix.empty();
    const bool has_medial = !g.numerals.empty() || (!g.fish.empty() && !g.oval.empty());
    const bool has_core = !g.core.empty();
    const bool has_terminal = !g.terminal.empty();
    if (!has_prefix && !has_medial && !has_core && !has_terminal)
        throw GenerationError("grammar admits no component: all sets are empty and the inventory has no numerals");

    Rng rng(seed);
    std::vector<Inscription> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<SignCode> signs;
        while (signs.empty()) {
            if (has_prefix && rng.coin()) detail::emit_run(rng, g.prefix, g.max_prefix_len, signs);
            if (has_medial && rng.coin()) detail::emit_medial(rng, g, signs);
            if (has_core && rng.coin()) detail::emit_run(rng, g.core, g.max_core_len, signs);
            if (has_terminal && rng.coin()) detail::emit_run(rng, g.terminal, g.max_terminal_len, signs);
        }
        Inscription ins;
        ins.id = std::string(id_prefix) + "-" + std::to_string(seed) + "-" + std::to_string(i);
        ins.signs = std::move(signs);
        ins.object_type = ObjectType::Other;
        ins.source_direction = SourceDirection::Logical;
        out.push_back(std::move(ins));
    }
    return out;
}

}  // namespace sealscript
