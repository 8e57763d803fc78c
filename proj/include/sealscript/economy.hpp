#pragma once

// Economic readings of patterned texts: numeral x measure quantities, duplicate-text
// clusters, seal-stamped token batches and per-commodity ration totals.

#include "sealscript/corpus.hpp"
#include "sealscript/grammar.hpp"
#include "sealscript/random.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sealscript {

struct VolumetricReading {
    std::int64_t numeral_value = 0;
    SignCode measure_code{};  // the counted sign
    std::optional<Litres> unit_volume;
    std::optional<Litres> total_volume;  // numeral_value * unit_volume

    friend bool operator==(const VolumetricReading&, const VolumetricReading&) = default;
};

/// Reads a numeral followed by the sign it counts, e.g. {4, vessel} -> 4 x 40 L.
inline VolumetricReading read_quantity(std::span<const SignCode> pair, const SignInventory& inv) {
    const auto numerals = std::count_if(pair.begin(), pair.end(), [&](SignCode c) { return inv.is_numeral(c); });
    if (numerals == 0)
        throw QuantityError(QuantityError::Kind::NotAQuantity, "no numeral in [" + join_codes(pair) + "]");
    if (numerals > 1)
        throw QuantityError(QuantityError::Kind::Ambiguous,
                            std::to_string(numerals) + " numerals in [" + join_codes(pair) + "]");
    if (pair.size() != 2 || !inv.is_numeral(pair[0]))
        throw QuantityError(QuantityError::Kind::NotAQuantity,
                            "expected a numeral followed by one counted sign, got [" + join_codes(pair) + "]");

    VolumetricReading r;
    r.numeral_value = *inv.at(pair[0]).numeral_value;
    r.measure_code = pair[1];
    r.unit_volume = inv.at(pair[1]).unit_volume;
    if (r.unit_volume) r.total_volume = *r.unit_volume * r.numeral_value;
    return r;
}

/// Reads the quantity of a patterned text. The counted sign is the one paired with the
/// numeral inside Medial, or, for a bare numeral, the first Core sign.
inline VolumetricReading read_quantity(const Segmentation& s, const SignInventory& inv) {
    const auto medial = s.component(Component::Medial);
    const auto core = s.component(Component::Core);
    const auto numerals = std::count_if(medial.begin(), medial.end(), [&](SignCode c) { return inv.is_numeral(c); });
    if (numerals > 1)
        throw QuantityError(QuantityError::Kind::Ambiguous,
                            std::to_string(numerals) + " numerals in medial [" + join_codes(medial) + "]");
    if (numerals == 1 && medial.size() == 1 && !core.empty()) {
        const SignCode pair[2] = {medial[0], core[0]};
        return read_quantity(pair, inv);
    }
    return read_quantity(medial, inv);
}

// ---------------------------------------------------------------------------

enum class GroupBy : std::uint8_t { SingleInscription, ArtifactSides };

struct DuplicateCluster {
    /// One sequence per side, ordered by side label; a single entry in per-inscription mode.
    std::vector<std::vector<SignCode>> signature;
    std::vector<std::string> member_ids;  // sorted
    std::size_t size = 0;
    /// All members carry the same recorded site (found together).
    bool co_located = false;
};

inline std::string signature_text(const DuplicateCluster& c) {
    std::string out;
    for (std::size_t i = 0; i < c.signature.size(); ++i) {
        if (i) out += '|';
        out += join_codes(c.signature[i]);
    }
    return out;
}

/// Groups identical texts. In ArtifactSides mode ids must read `artifact/side` and an
/// artifact's signature is the tuple of its side texts ordered by side label.
inline std::vector<DuplicateCluster> find_duplicate_clusters(const Corpus& c, GroupBy group_by) {
    struct Unit {
        std::vector<std::vector<SignCode>> signature;
        std::optional<std::string> site;
        bool site_consistent = true;
    };
    std::map<std::string, Unit> units;

    if (group_by == GroupBy::SingleInscription) {
        for (const auto& ins : c.inscriptions) units[ins.id] = Unit{{ins.signs}, ins.site, true};
    } else {
        std::map<std::string, std::map<std::string, const Inscription*>> sides;
        for (const auto& ins : c.inscriptions) {
            const auto slash = ins.id.find('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 == ins.id.size() ||
                ins.id.find('/', slash + 1) != std::string::npos)
                throw ValidationError(c.source.empty() ? "<corpus>" : c.source, 0, ins.id, std::nullopt,
                                      "id is not of the form artifact/side");
            sides[ins.id.substr(0, slash)][ins.id.substr(slash + 1)] = &ins;
        }
        for (const auto& [artifact, by_side] : sides) {
            Unit u;
            bool first = true;
            for (const auto& [_, ins] : by_side) {
                u.signature.push_back(ins->signs);
                if (first) u.site = ins->site;
                else if (u.site != ins->site) u.site_consistent = false;
                first = false;
            }
            units[artifact] = std::move(u);
        }
    }

    std::map<std::vector<std::vector<SignCode>>, std::vector<const std::pair<const std::string, Unit>*>> groups;
    for (const auto& entry : units) groups[entry.second.signature].push_back(&entry);

    std::vector<DuplicateCluster> out;
    for (const auto& [signature, members] : groups) {
        if (members.size() < 2) continue;
        DuplicateCluster cl;
        cl.signature = signature;
        cl.size = members.size();
        const auto& site0 = members.front()->second.site;
        cl.co_located = site0.has_value();
        for (const auto* m : members) {
            cl.member_ids.push_back(m->first);
            if (!m->second.site_consistent || m->second.site != site0) cl.co_located = false;
        }
        out.push_back(std::move(cl));
    }
    std::stable_sort(out.begin(), out.end(), [](const DuplicateCluster& a, const DuplicateCluster& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.signature < b.signature;
    });
    return out;
}

// ---------------------------------------------------------------------------

struct TokenRecord {
    std::string token_id;
    std::string seal_id;
    std::vector<SignCode> impression;  // impression scan order: the seal text mirrored
    std::size_t mint_index = 0;
    bool strung = true;  // pierced for stringing

    friend bool operator==(const TokenRecord&, const TokenRecord&) = default;
};

/// Stamps `count` tokens from one seal. Every token carries the same impression; ids are
/// a function of (seal id, seed, index) only.
inline std::vector<TokenRecord> mint_tokens(const Inscription& seal, std::size_t count, std::uint64_t seed,
                                            bool strung = true) {
    if (seal.object_type != ObjectType::Seal)
        throw ContractViolation("mint_tokens: '" + seal.id + "' is a " + std::string(to_string(seal.object_type)) +
                                ", not a seal");
    if (count < 1) throw ContractViolation("mint_tokens: count must be >= 1");

    std::vector<SignCode> impression(seal.signs.rbegin(), seal.signs.rend());
    const auto batch = Fnv1a{}.add(seal.id.data(), seal.id.size()).add_u64(seed).digest();
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(batch));

    std::vector<TokenRecord> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        out.push_back({seal.id + "-" + hex + "-" + std::to_string(i), seal.id, impression, i, strung});
    return out;
}

// ---------------------------------------------------------------------------

struct RationRow {
    SignCode counted_code{};
    std::string name;
    std::int64_t total_count = 0;
    std::optional<Litres> total_volume;
    std::size_t readings = 0;

    friend bool operator==(const RationRow&, const RationRow&) = default;
};

struct RationTable {
    std::map<SignCode, RationRow> rows;
    std::size_t tabulated = 0;
    std::size_t skipped_complex = 0;
    std::size_t skipped_no_quantity = 0;

    std::size_t skipped() const { return skipped_complex + skipped_no_quantity; }

    void add(const VolumetricReading& r, const SignInventory& inv) {
        auto [it, fresh] = rows.try_emplace(r.measure_code);
        RationRow& row = it->second;
        if (fresh) {
            row.counted_code = r.measure_code;
            row.name = inv.at(r.measure_code).name;
        }
        row.total_count += r.numeral_value;
        if (r.total_volume) row.total_volume = row.total_volume.value_or(Litres{}) + *r.total_volume;
        ++row.readings;
        ++tabulated;
    }

    RationTable& operator+=(const RationTable& other) {
        for (const auto& [code, row] : other.rows) {
            auto [it, fresh] = rows.try_emplace(code, row);
            if (fresh) continue;
            it->second.total_count += row.total_count;
            if (row.total_volume)
                it->second.total_volume = it->second.total_volume.value_or(Litres{}) + *row.total_volume;
            it->second.readings += row.readings;
        }
        tabulated += other.tabulated;
        skipped_complex += other.skipped_complex;
        skipped_no_quantity += other.skipped_no_quantity;
        return *this;
    }

    friend bool operator==(const RationTable&, const RationTable&) = default;
};

inline RationTable tabulate_rations(const Corpus& c, const GrammarSpec& g, const SignInventory& inv) {
    RationTable t;
    for (const auto& ins : c.inscriptions) {
        const auto cls = segment(ins, g);
        if (!cls.patterned()) {
            ++t.skipped_complex;
            continue;
        }
        try {
            t.add(read_quantity(*cls.segmentation, inv), inv);
        } catch (const QuantityError&) {
            ++t.skipped_no_quantity;
        }
    }
    return t;
}

}  // namespace sealscript
