#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace sealscript;
using fixtures::codes;

namespace {

std::vector<SignCode> concat_spans(const Segmentation& s) {
    std::vector<SignCode> out;
    for (auto c : kComponents) {
        const auto part = s.component(c);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

bool spans_tile(const Segmentation& s) {
    std::size_t pos = 0;
    for (auto c : kComponents) {
        if (s.span(c).begin != pos) return false;
        pos = s.span(c).end;
    }
    return pos == s.signs.size();
}

}  // namespace

TEST_CASE("load_grammar reads sets and defaults", "[grammar][load]") {
    const auto inv = fixtures::inventory();
    const auto g = fixtures::grammar_from("prefix\t501\nfish\t601\ncore\t700\nterminal\t401 402\n", inv);
    CHECK(g.prefix == std::set<SignCode>{SignCode{501}});
    CHECK(g.fish == std::set<SignCode>{SignCode{601}});
    CHECK(g.core == std::set<SignCode>{SignCode{700}});
    CHECK(g.terminal == std::set<SignCode>{SignCode{401}, SignCode{402}});
    CHECK(g.max_prefix_len == 4);
    CHECK(g.max_core_len == 3);
    CHECK(g.max_terminal_len == 3);
    CHECK(g.numerals == std::set<SignCode>{SignCode{101}, SignCode{102}, SignCode{103}, SignCode{104}});
    CHECK(g.warnings.empty());

    const auto capped = fixtures::grammar_from("terminal\t401\nmax_terminal_len\t1\n", inv);
    CHECK(capped.max_terminal_len == 1);
}

TEST_CASE("load_grammar rejects unknown codes and keys", "[grammar][load]") {
    const auto inv = fixtures::inventory();
    CHECK_THROWS_AS(fixtures::grammar_from("core\t700 999\n", inv), ValidationError);
    CHECK_THROWS_WITH(fixtures::grammar_from("core\t700 999\n", inv), Catch::Matchers::ContainsSubstring("999"));
    CHECK_THROWS_AS(fixtures::grammar_from("medial\t601\n", inv), FormatError);
    CHECK_THROWS_AS(fixtures::grammar_from("max_core_len\t0\n", inv), FormatError);
    CHECK_THROWS_AS(fixtures::grammar_from("core 700\n", inv), FormatError);
}

TEST_CASE("a code in both measure and core loads with a polyvalence warning", "[grammar][load]") {
    const auto inv = fixtures::inventory();
    const auto g = load_grammar(fixtures::data("grammar_polyvalent.tsv"), inv);
    REQUIRE(g.warnings.size() == 1);
    CHECK_THAT(g.warnings[0], Catch::Matchers::ContainsSubstring("201"));
    CHECK_THAT(g.warnings[0], Catch::Matchers::ContainsSubstring("measure, core"));
}

TEST_CASE("segment applies greedy component matching", "[grammar][segment]") {
    const auto inv = fixtures::inventory();
    const auto g = fixtures::grammar(inv);

    SECTION("prefix, fish-numeral medial, core, terminal") {
        const auto cls = segment(codes({501, 103, 601, 700, 401}), g);
        REQUIRE(cls.patterned());
        const auto& s = *cls.segmentation;
        CHECK(std::vector<SignCode>(s.component(Component::Prefix).begin(), s.component(Component::Prefix).end()) ==
              codes({501}));
        CHECK(s.span(Component::Medial) == Span{1, 3});
        CHECK(s.medial_kind == MedialKind::FishNumeral);
        CHECK(s.span(Component::Core) == Span{3, 4});
        CHECK(s.span(Component::Terminal) == Span{4, 5});
    }

    SECTION("numeral followed by a measure is wholly medial") {
        const auto cls = segment(codes({103, 201}), g);
        REQUIRE(cls.patterned());
        const auto& s = *cls.segmentation;
        CHECK(s.span(Component::Medial) == Span{0, 2});
        CHECK(s.medial_kind == MedialKind::NumeralMeasure);
        CHECK(s.span(Component::Prefix).empty());
        CHECK(s.span(Component::Core).empty());
        CHECK(s.span(Component::Terminal).empty());
    }

    SECTION("numeral followed by a countable sign leaves it to core") {
        const auto cls = segment(codes({103, 211}), g);
        REQUIRE(cls.patterned());
        CHECK(cls.segmentation->span(Component::Medial) == Span{0, 1});
        CHECK(cls.segmentation->span(Component::Core) == Span{1, 2});
    }

    SECTION("fish-oval cluster") {
        const auto cls = segment(codes({501, 601, 602, 651, 701, 401}), g);
        REQUIRE(cls.patterned());
        CHECK(cls.segmentation->medial_kind == MedialKind::FishOval);
        CHECK(cls.segmentation->span(Component::Medial) == Span{1, 4});
    }

    SECTION("a ten-sign text without numerals or grammar signs is Complex at position 0") {
        const auto board = load_corpus(fixtures::data("signboard.tsv"), inv);
        const auto cls = segment(board.inscriptions.at(0), g);
        CHECK(cls.verdict == Verdict::Complex);
        CHECK_FALSE(cls.segmentation.has_value());
        CHECK(cls.failed_position == 0u);
        CHECK_THAT(cls.reason, Catch::Matchers::ContainsSubstring("position 0"));
    }

    SECTION("terminal must end the text") {
        const auto cls = segment(codes({401, 700}), g);
        CHECK(cls.verdict == Verdict::Complex);
        CHECK(cls.failed_position == 1u);
    }

    SECTION("length caps bound greedy runs") {
        CHECK(segment(codes({401, 401, 401}), g).patterned());
        CHECK_FALSE(segment(codes({401, 401, 401, 401}), g).patterned());
        CHECK(segment(codes({501, 502, 501, 502, 700}), g).patterned());
        CHECK_FALSE(segment(codes({501, 502, 501, 502, 501}), g).patterned());
    }

    SECTION("polyvalent measure/core code is consumed by medial first") {
        const auto pg = load_grammar(fixtures::data("grammar_polyvalent.tsv"), inv);
        const auto cls = segment(codes({103, 201, 700}), pg);
        REQUIRE(cls.patterned());
        CHECK(cls.segmentation->span(Component::Medial) == Span{0, 2});
        CHECK(cls.segmentation->span(Component::Core) == Span{2, 3});
        const auto alone = segment(codes({201, 700}), pg);
        REQUIRE(alone.patterned());
        CHECK(alone.segmentation->span(Component::Core) == Span{0, 2});
    }
}

TEST_CASE("classify_corpus partitions the corpus", "[grammar][classify]") {
    const auto inv = fixtures::inventory();
    const auto g = fixtures::grammar(inv);
    const auto board = load_corpus(fixtures::data("signboard.tsv"), inv).inscriptions.at(0).signs;

    const auto mixed = classify_corpus(fixtures::corpus_of({codes({103, 201}), board}), g);
    CHECK(mixed.patterned == 1);
    CHECK(mixed.complex == 1);
    CHECK(mixed.results[0].id == "s0");

    const auto empty = classify_corpus(Corpus{}, g);
    CHECK(empty.patterned == 0);
    CHECK(empty.complex == 0);

    const auto five = classify_corpus(fixtures::corpus_of(std::vector(5, codes({501, 103, 601, 700, 401}))), g);
    CHECK(five.patterned == 5);
    CHECK(five.complex == 0);

    const auto fixture = classify_corpus(load_corpus(fixtures::data("corpus.tsv"), inv), g);
    CHECK(fixture.patterned + fixture.complex == 10);
    CHECK(fixture.complex == 1);
}

TEST_CASE("label_roles attaches the fixed role of each non-empty span", "[grammar][roles]") {
    const auto inv = fixtures::inventory();
    const auto g = fixtures::grammar(inv);

    const auto tablet = label_roles(segment(codes({103, 201}), g));
    CHECK(tablet.role(Component::Medial) == "Number/Quantity/Measures");
    CHECK_FALSE(tablet.role(Component::Prefix).has_value());
    CHECK_FALSE(tablet.role(Component::Core).has_value());

    const auto full = label_roles(segment(codes({501, 103, 601, 700, 401}), g));
    CHECK(full.role(Component::Prefix) == "Institution/Business/Landlord/Family/Person");
    CHECK(full.role(Component::Core) == "Commodity");
    CHECK(full.role(Component::Terminal) == "Function of sealing/tablet");

    const auto core_only = label_roles(segment(codes({700}), g));
    CHECK(core_only.role(Component::Core) == "Commodity");
    for (auto c : {Component::Prefix, Component::Medial, Component::Terminal})
        CHECK_FALSE(core_only.role(c).has_value());

    CHECK_THROWS_AS(label_roles(segment(codes({801}), g)), ContractViolation);
}

TEST_CASE("generate is deterministic and emits patterned texts", "[grammar][generate]") {
    const auto inv = fixtures::inventory();
    const auto g = fixtures::grammar(inv);

    const auto a = generate(g, 7, 3);
    REQUIRE(a.size() == 3);
    for (const auto& ins : a) CHECK(segment(ins, g).patterned());
    CHECK(generate(g, 7, 3) == a);
    CHECK(generate(g, 8, 3) != a);

    for (std::uint64_t seed = 0; seed < 50; ++seed)
        for (const auto& ins : generate(g, seed, 40)) {
            REQUIRE_FALSE(ins.signs.empty());
            const auto cls = segment(ins, g);
            REQUIRE(cls.patterned());
            REQUIRE(concat_spans(*cls.segmentation) == ins.signs);
        }
}

TEST_CASE("generate with only a terminal set emits short runs of that sign", "[grammar][generate]") {
    // Admissible outputs, enumerated: [401], [401 401], [401 401 401].
    const auto inv = fixtures::inventory_from("401\tTERMINAL\t-\t-\tjar\n");
    const auto g = fixtures::grammar_from("terminal\t401\n", inv);
    std::set<std::size_t> lengths;
    for (const auto& ins : generate(g, 7, 200)) {
        REQUIRE(ins.signs.size() >= 1);
        REQUIRE(ins.signs.size() <= g.max_terminal_len);
        REQUIRE(std::all_of(ins.signs.begin(), ins.signs.end(), [](SignCode c) { return c == SignCode{401}; }));
        lengths.insert(ins.signs.size());
    }
    CHECK(lengths == std::set<std::size_t>{1, 2, 3});
}

TEST_CASE("generate refuses an empty grammar without numerals", "[grammar][generate]") {
    const auto inv = fixtures::inventory_from("801\tOTHER\t-\t-\tx\n");
    const auto g = fixtures::grammar_from("# nothing\n", inv);
    CHECK_THROWS_AS(generate(g, 1, 1), GenerationError);
}

TEST_CASE("segmentation properties over random texts", "[grammar][property]") {
    const auto inv = fixtures::inventory();
    const auto g = fixtures::grammar(inv);
    const auto pool = inv.codes();
    std::mt19937 gen(2024);

    for (int trial = 0; trial < 5000; ++trial) {
        std::vector<SignCode> s(1 + gen() % 9);
        // Draw mostly from grammar signs so that a fair share of texts are Patterned.
        for (auto& c : s) c = pool[gen() % (pool.size() - 10)];
        const auto cls = segment(s, g);

        // Determinism.
        const auto again = segment(s, g);
        REQUIRE(again.verdict == cls.verdict);
        REQUIRE(again.segmentation == cls.segmentation);

        if (cls.patterned()) {
            // Full coverage and contiguous tiling.
            REQUIRE(concat_spans(*cls.segmentation) == s);
            REQUIRE(spans_tile(*cls.segmentation));
            // Monotone closure.
            if (cls.segmentation->span(Component::Terminal).size() < g.max_terminal_len)
                for (auto t : g.terminal) {
                    auto longer = s;
                    longer.push_back(t);
                    REQUIRE(segment(longer, g).patterned());
                }
        } else {
            REQUIRE(cls.failed_position.has_value());
            REQUIRE(*cls.failed_position < s.size());
        }

        // Complex soundness: an OTHER sign outside every set can never be consumed.
        auto spoiled = s;
        spoiled.insert(spoiled.begin() + static_cast<std::ptrdiff_t>(gen() % (s.size() + 1)), SignCode{805});
        REQUIRE_FALSE(segment(spoiled, g).patterned());
    }
}

TEST_CASE("round-trip also holds under the polyvalent grammar", "[grammar][property]") {
    const auto inv = fixtures::inventory();
    const auto g = load_grammar(fixtures::data("grammar_polyvalent.tsv"), inv);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
        for (const auto& ins : generate(g, seed, 50)) REQUIRE(segment(ins, g).patterned());
}
