#pragma once

// Sign inventory and inscription data model, TSV ingestion and reading-order normalization.

#include "sealscript/error.hpp"
#include "sealscript/litres.hpp"
#include "sealscript/text.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sealscript {

/// Opaque concordance number of a sign.
enum class SignCode : std::uint32_t {};

constexpr std::uint32_t to_int(SignCode c) noexcept { return static_cast<std::uint32_t>(c); }
inline std::string to_string(SignCode c) { return std::to_string(to_int(c)); }

enum class SignClass : std::uint8_t { Numeral, Measure, Fish, Oval, Anthropomorph, Prefix, Core, Terminal, Other };

inline constexpr std::array<std::pair<SignClass, std::string_view>, 9> kSignClassNames{{
    {SignClass::Numeral, "NUMERAL"},
    {SignClass::Measure, "MEASURE"},
    {SignClass::Fish, "FISH"},
    {SignClass::Oval, "OVAL"},
    {SignClass::Anthropomorph, "ANTHROPOMORPH"},
    {SignClass::Prefix, "PREFIX"},
    {SignClass::Core, "CORE"},
    {SignClass::Terminal, "TERMINAL"},
    {SignClass::Other, "OTHER"},
}};

inline std::string_view to_string(SignClass c) {
    for (const auto& [cls, name] : kSignClassNames)
        if (cls == c) return name;
    return "OTHER";
}

inline std::optional<SignClass> parse_sign_class(std::string_view s) {
    for (const auto& [cls, name] : kSignClassNames)
        if (name == s) return cls;
    return std::nullopt;
}

struct Sign {
    SignCode code{};
    std::set<SignClass> classes;
    std::optional<std::int64_t> numeral_value;  // present iff Numeral
    std::optional<Litres> unit_volume;          // only on Measure signs
    std::string name;

    bool has(SignClass c) const { return classes.contains(c); }
    bool is_numeral() const { return has(SignClass::Numeral); }

    friend bool operator==(const Sign&, const Sign&) = default;
};

class SignInventory {
public:
    SignInventory() = default;
    explicit SignInventory(std::string source) : source_(std::move(source)) {}

    /// Throws ContractViolation on a duplicate code or a sign that breaks the
    /// numeral/volume invariants. File loading reports the same conditions as FormatError first.
    void add(Sign sign) {
        if (auto why = invariant_violation(sign)) throw ContractViolation(*why);
        const auto code = sign.code;
        if (!signs_.emplace(code, std::move(sign)).second)
            throw ContractViolation("duplicate sign code " + sealscript::to_string(code));
    }

    /// Number of distinct codes, the alphabet size L.
    std::size_t size() const noexcept { return signs_.size(); }
    bool empty() const noexcept { return signs_.empty(); }

    bool contains(SignCode c) const { return signs_.contains(c); }
    const Sign* find(SignCode c) const {
        auto it = signs_.find(c);
        return it == signs_.end() ? nullptr : &it->second;
    }
    const Sign& at(SignCode c) const {
        if (const Sign* s = find(c)) return *s;
        throw ContractViolation("sign code " + sealscript::to_string(c) + " not in inventory");
    }
    bool is_numeral(SignCode c) const {
        const Sign* s = find(c);
        return s != nullptr && s->is_numeral();
    }

    /// Codes in ascending order.
    std::vector<SignCode> codes() const {
        std::vector<SignCode> out;
        out.reserve(signs_.size());
        for (const auto& [code, _] : signs_) out.push_back(code);
        return out;
    }
    SignCode min_code() const {
        if (signs_.empty()) throw ContractViolation("empty inventory has no minimum code");
        return signs_.begin()->first;
    }

    const std::map<SignCode, Sign>& signs() const noexcept { return signs_; }
    const std::string& source() const noexcept { return source_; }

    static std::optional<std::string> invariant_violation(const Sign& s) {
        if (to_int(s.code) == 0) return "sign code must be positive";
        if (s.classes.empty()) return "sign " + sealscript::to_string(s.code) + " has no class";
        if (s.is_numeral() && !s.numeral_value)
            return "NUMERAL sign " + sealscript::to_string(s.code) + " lacks a numeral_value";
        if (!s.is_numeral() && s.numeral_value)
            return "numeral_value on non-NUMERAL sign " + sealscript::to_string(s.code);
        if (s.numeral_value && *s.numeral_value <= 0)
            return "numeral_value of sign " + sealscript::to_string(s.code) + " must be positive";
        if (s.unit_volume && !s.has(SignClass::Measure))
            return "unit_volume on non-MEASURE sign " + sealscript::to_string(s.code);
        if (s.unit_volume && !s.unit_volume->positive())
            return "unit_volume of sign " + sealscript::to_string(s.code) + " must be positive";
        return std::nullopt;
    }

private:
    std::string source_;
    std::map<SignCode, Sign> signs_;
};

enum class ObjectType : std::uint8_t { Seal, Sealing, MiniatureTablet, CopperTablet, Pottery, Token, Signboard, Other };
enum class SourceDirection : std::uint8_t { Logical, SealFace, Impression };

inline constexpr std::array<std::pair<ObjectType, std::string_view>, 8> kObjectTypeNames{{
    {ObjectType::Seal, "seal"},
    {ObjectType::Sealing, "sealing"},
    {ObjectType::MiniatureTablet, "miniature_tablet"},
    {ObjectType::CopperTablet, "copper_tablet"},
    {ObjectType::Pottery, "pottery"},
    {ObjectType::Token, "token"},
    {ObjectType::Signboard, "signboard"},
    {ObjectType::Other, "other"},
}};

inline constexpr std::array<std::pair<SourceDirection, std::string_view>, 3> kDirectionNames{{
    {SourceDirection::Logical, "logical"},
    {SourceDirection::SealFace, "seal_face"},
    {SourceDirection::Impression, "impression"},
}};

template <typename E, std::size_t N>
std::string_view enum_name(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
    for (const auto& [e, name] : table)
        if (e == value) return name;
    return "?";
}

template <typename E, std::size_t N>
std::optional<E> enum_parse(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view s) {
    for (const auto& [e, name] : table)
        if (name == s) return e;
    return std::nullopt;
}

inline std::string_view to_string(ObjectType t) { return enum_name(kObjectTypeNames, t); }
inline std::string_view to_string(SourceDirection d) { return enum_name(kDirectionNames, d); }

struct Inscription {
    std::string id;
    std::vector<SignCode> signs;  // logical reading order, Prefix first
    ObjectType object_type = ObjectType::Other;
    std::optional<std::string> site;
    SourceDirection source_direction = SourceDirection::Logical;

    friend bool operator==(const Inscription&, const Inscription&) = default;
};

struct Corpus {
    std::vector<Inscription> inscriptions;
    std::string inventory_ref;
    std::string source;  // where it was read from; not part of identity

    std::size_t size() const noexcept { return inscriptions.size(); }
    bool empty() const noexcept { return inscriptions.empty(); }

    friend bool operator==(const Corpus& a, const Corpus& b) {
        return a.inscriptions == b.inscriptions && a.inventory_ref == b.inventory_ref;
    }
};

/// Brings a transcription into logical order. Impressions are scanned left to right but
/// read right to left, so they are reversed; seal faces are expected already mirrored by
/// the encoder and pass through unchanged.
inline std::vector<SignCode> normalize_reading_order(std::span<const SignCode> signs, SourceDirection dir) {
    if (signs.empty()) throw ContractViolation("normalize_reading_order: empty sign list");
    std::vector<SignCode> out(signs.begin(), signs.end());
    if (dir == SourceDirection::Impression) std::reverse(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Inventory TSV: code, classes, numeral_value|-, unit_volume|-, name

inline SignInventory parse_inventory(std::istream& in, const std::string& source) {
    SignInventory inv(source);
    std::unordered_map<std::uint32_t, std::size_t> first_line;

    detail::for_each_record(in, [&](std::size_t lineno, std::string_view line) {
        auto fail = [&](const std::string& what) { return FormatError(source, lineno, what); };
        const auto fields = detail::split(line, '\t');
        if (fields.size() != 5)
            throw fail("expected 5 tab-separated fields (code, classes, numeral_value, unit_volume, name), got " +
                       std::to_string(fields.size()));

        Sign sign;
        const auto code = detail::parse_int<std::uint32_t>(detail::trim(fields[0]));
        if (!code || *code == 0) throw fail("sign code must be a positive integer: '" + std::string(fields[0]) + "'");
        sign.code = SignCode{*code};

        if (auto it = first_line.find(*code); it != first_line.end())
            throw fail("duplicate sign code " + std::to_string(*code) + " (first defined at line " +
                       std::to_string(it->second) + ")");

        for (auto tag : detail::split(detail::trim(fields[1]), ',')) {
            tag = detail::trim(tag);
            auto cls = parse_sign_class(tag);
            if (!cls) throw fail("unknown sign class '" + std::string(tag) + "'");
            sign.classes.insert(*cls);
        }

        const auto numeral = detail::trim(fields[2]);
        if (numeral != "-") {
            auto v = detail::parse_int<std::int64_t>(numeral);
            if (!v || *v <= 0) throw fail("numeral_value must be a positive integer or '-': '" + std::string(numeral) + "'");
            sign.numeral_value = *v;
        }

        const auto volume = detail::trim(fields[3]);
        if (volume != "-") {
            try {
                sign.unit_volume = Litres::parse(volume);
            } catch (const std::invalid_argument&) {
                throw fail("unit_volume must be a positive decimal (at most 6 places) or '-': '" +
                           std::string(volume) + "'");
            }
        }

        sign.name = std::string(detail::trim(fields[4]));
        if (auto why = SignInventory::invariant_violation(sign)) throw fail(*why);

        first_line.emplace(*code, lineno);
        inv.add(std::move(sign));
    });

    if (inv.empty()) throw FormatError(source, 0, "inventory has no signs");
    return inv;
}

inline SignInventory load_inventory(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open inventory file '" + path + "'");
    return parse_inventory(in, path);
}

inline void write_inventory(std::ostream& out, const SignInventory& inv) {
    for (const auto& [code, s] : inv.signs()) {
        out << to_int(code) << '\t';
        bool first = true;
        for (auto c : s.classes) {
            out << (first ? "" : ",") << to_string(c);
            first = false;
        }
        out << '\t' << (s.numeral_value ? std::to_string(*s.numeral_value) : "-") << '\t'
            << (s.unit_volume ? s.unit_volume->to_string() : "-") << '\t' << s.name << '\n';
    }
}

// ---------------------------------------------------------------------------
// Corpus TSV: id, object_type, site|-, source_direction, space-separated codes

inline Corpus parse_corpus(std::istream& in, const SignInventory& inv, const std::string& source) {
    Corpus corpus;
    corpus.inventory_ref = inv.source();
    corpus.source = source;
    std::unordered_map<std::string, std::size_t> first_line;

    detail::for_each_record(in, [&](std::size_t lineno, std::string_view line) {
        auto fail = [&](const std::string& what) { return FormatError(source, lineno, what); };
        const auto fields = detail::split(line, '\t');
        if (fields.size() != 5)
            throw fail("expected 5 tab-separated fields (id, object_type, site, source_direction, signs), got " +
                       std::to_string(fields.size()));

        Inscription ins;
        ins.id = std::string(detail::trim(fields[0]));
        if (ins.id.empty() || ins.id.find(' ') != std::string::npos)
            throw fail("inscription id must be non-empty and contain no spaces");

        auto type = enum_parse(kObjectTypeNames, detail::trim(fields[1]));
        if (!type) throw fail("unknown object_type '" + std::string(detail::trim(fields[1])) + "'");
        ins.object_type = *type;

        const auto site = detail::trim(fields[2]);
        if (site != "-" && !site.empty()) ins.site = std::string(site);

        auto dir = enum_parse(kDirectionNames, detail::trim(fields[3]));
        if (!dir) throw fail("unknown source_direction '" + std::string(detail::trim(fields[3])) + "'");

        if (auto it = first_line.find(ins.id); it != first_line.end())
            throw ValidationError(source, lineno, ins.id, std::nullopt,
                                  "duplicate inscription id (first at line " + std::to_string(it->second) + ")");

        const auto tokens = detail::split_words(detail::trim(fields[4]));
        if (tokens.empty()) throw ValidationError(source, lineno, ins.id, std::nullopt, "empty sign list");

        std::vector<SignCode> raw;
        raw.reserve(tokens.size());
        for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
            auto code = detail::parse_int<std::uint32_t>(tokens[pos]);
            if (!code || *code == 0)
                throw ValidationError(source, lineno, ins.id, pos,
                                      "malformed sign code '" + std::string(tokens[pos]) + "'");
            if (!inv.contains(SignCode{*code}))
                throw ValidationError(source, lineno, ins.id, pos, "unknown sign code " + std::to_string(*code));
            raw.push_back(SignCode{*code});
        }

        ins.signs = normalize_reading_order(raw, *dir);
        ins.source_direction = SourceDirection::Logical;
        first_line.emplace(ins.id, lineno);
        corpus.inscriptions.push_back(std::move(ins));
    });

    return corpus;
}

inline Corpus load_corpus(const std::string& path, const SignInventory& inv) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file '" + path + "'");
    return parse_corpus(in, inv, path);
}

inline std::string join_codes(std::span<const SignCode> codes, std::string_view sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (i) out += sep;
        out += to_string(codes[i]);
    }
    return out;
}

inline void write_inscription(std::ostream& out, const Inscription& ins) {
    out << ins.id << '\t' << to_string(ins.object_type) << '\t' << (ins.site ? *ins.site : "-") << '\t'
        << to_string(ins.source_direction) << '\t' << join_codes(ins.signs) << '\n';
}

inline void write_corpus(std::ostream& out, const Corpus& c) {
    for (const auto& ins : c.inscriptions) write_inscription(out, ins);
}

// ---------------------------------------------------------------------------

struct CorpusSummary {
    std::map<SignCode, std::size_t> frequency;
    std::map<std::size_t, std::size_t> length_histogram;
    std::map<ObjectType, std::size_t> object_types;
    std::size_t inscriptions = 0;
    std::size_t tokens = 0;
};

inline CorpusSummary corpus_summary(const Corpus& c) {
    CorpusSummary s;
    s.inscriptions = c.size();
    for (const auto& ins : c.inscriptions) {
        for (auto code : ins.signs) ++s.frequency[code];
        ++s.length_histogram[ins.signs.size()];
        ++s.object_types[ins.object_type];
        s.tokens += ins.signs.size();
    }
    return s;
}

}  // namespace sealscript
