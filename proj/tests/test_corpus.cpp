#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

using namespace sealscript;
using fixtures::codes;

TEST_CASE("load_inventory reads back a three-row file", "[corpus][inventory]") {
    const auto inv = fixtures::inventory_from(
        "# header\n"
        "101\tNUMERAL\t1\t-\tone stroke\n"
        "201\tMEASURE\t-\t40\tvessel\n"
        "401\tTERMINAL\t-\t-\tjar\n");
    REQUIRE(inv.size() == 3);
    CHECK(*inv.at(SignCode{101}).numeral_value == 1);
    CHECK(inv.at(SignCode{201}).unit_volume == Litres::whole(40));
    CHECK(inv.at(SignCode{401}).has(SignClass::Terminal));
    CHECK(inv.at(SignCode{201}).name == "vessel");
}

TEST_CASE("load_inventory rejects duplicate codes at the second row", "[corpus][inventory]") {
    try {
        fixtures::inventory_from("101\tNUMERAL\t1\t-\ta\n101\tNUMERAL\t1\t-\tb\n");
        FAIL("expected a format error");
    } catch (const FormatError& e) {
        CHECK(e.line() == 2);
        CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("duplicate sign code 101"));
    }
    CHECK_THROWS_AS(load_inventory(fixtures::data("bad_inventory_duplicate.tsv")), FormatError);
}

TEST_CASE("load_inventory enforces the numeral and volume invariants", "[corpus][inventory]") {
    CHECK_THROWS_WITH(fixtures::inventory_from("201\tMEASURE\t3\t-\tx\n"),
                      Catch::Matchers::ContainsSubstring("numeral_value on non-NUMERAL"));
    CHECK_THROWS_WITH(fixtures::inventory_from("101\tNUMERAL\t-\t-\tx\n"),
                      Catch::Matchers::ContainsSubstring("lacks a numeral_value"));
    CHECK_THROWS_WITH(fixtures::inventory_from("401\tTERMINAL\t-\t40\tx\n"),
                      Catch::Matchers::ContainsSubstring("unit_volume on non-MEASURE"));
    CHECK_THROWS_AS(fixtures::inventory_from("0\tOTHER\t-\t-\tx\n"), FormatError);
    CHECK_THROWS_AS(fixtures::inventory_from("7\tBOGUS\t-\t-\tx\n"), FormatError);
    CHECK_THROWS_AS(fixtures::inventory_from("7\tOTHER\t-\n"), FormatError);
    CHECK_THROWS_AS(fixtures::inventory_from("# only a comment\n"), FormatError);
    CHECK_THROWS_AS(load_inventory(fixtures::data("does-not-exist.tsv")), IoError);
}

TEST_CASE("a 417-sign inventory has L = 417", "[corpus][inventory]") {
    std::string text;
    for (int code = 1; code <= 417; ++code) text += std::to_string(code) + "\tOTHER\t-\t-\tsign " + std::to_string(code) + "\n";
    const auto inv = fixtures::inventory_from(text);
    CHECK(inv.size() == 417);
    CHECK(inv.min_code() == SignCode{1});
}

TEST_CASE("load_corpus reads and validates inscriptions", "[corpus]") {
    const auto inv = fixtures::inventory();

    SECTION("one tablet line") {
        const auto c = fixtures::corpus_from("t1\tminiature_tablet\tharappa\tlogical\t103 201\n", inv);
        REQUIRE(c.size() == 1);
        const auto& ins = c.inscriptions[0];
        CHECK(ins.id == "t1");
        CHECK(ins.signs == codes({103, 201}));
        CHECK(ins.object_type == ObjectType::MiniatureTablet);
        CHECK(ins.site == "harappa");
        CHECK(ins.source_direction == SourceDirection::Logical);
    }

    SECTION("unknown code names the inscription and position") {
        try {
            fixtures::corpus_from("t1\tminiature_tablet\tharappa\tlogical\t103 999\n", inv);
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            CHECK(e.inscription_id() == "t1");
            CHECK(e.position() == 1u);
            CHECK(e.line() == 1);
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("unknown sign code 999"));
        }
    }

    SECTION("duplicate id") {
        CHECK_THROWS_AS(load_corpus(fixtures::data("bad_duplicate_id.tsv"), inv), ValidationError);
    }

    SECTION("empty sign list") {
        CHECK_THROWS_WITH(fixtures::corpus_from("t1\ttoken\t-\tlogical\t   \n", inv),
                          Catch::Matchers::ContainsSubstring("empty sign list"));
    }

    SECTION("bad enums and field counts are format errors") {
        CHECK_THROWS_AS(fixtures::corpus_from("t1\tcoin\t-\tlogical\t103\n", inv), FormatError);
        CHECK_THROWS_AS(fixtures::corpus_from("t1\ttoken\t-\tsideways\t103\n", inv), FormatError);
        CHECK_THROWS_AS(fixtures::corpus_from("t1\ttoken\t-\tlogical\n", inv), FormatError);
    }

    SECTION("impressions are normalized to logical order") {
        const auto c = fixtures::corpus_from("s1\tsealing\t-\timpression\t201 103\n", inv);
        CHECK(c.inscriptions[0].signs == codes({103, 201}));
        CHECK(c.inscriptions[0].source_direction == SourceDirection::Logical);
        CHECK_FALSE(c.inscriptions[0].site.has_value());
    }
}

TEST_CASE("normalize_reading_order", "[corpus][direction]") {
    CHECK(normalize_reading_order(codes({103, 201}), SourceDirection::Logical) == codes({103, 201}));
    CHECK(normalize_reading_order(codes({201, 103}), SourceDirection::Impression) == codes({103, 201}));
    CHECK(normalize_reading_order(codes({103, 201}), SourceDirection::SealFace) == codes({103, 201}));
    CHECK_THROWS_AS(normalize_reading_order({}, SourceDirection::Logical), ContractViolation);

    std::mt19937 gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<SignCode> s(1 + gen() % 12);
        for (auto& c : s) c = SignCode{1 + static_cast<std::uint32_t>(gen() % 50)};
        const auto twice =
            normalize_reading_order(normalize_reading_order(s, SourceDirection::Impression), SourceDirection::Impression);
        REQUIRE(twice == s);
    }
}

TEST_CASE("corpus_summary counts", "[corpus][summary]") {
    const auto inv = fixtures::inventory();

    const auto two = corpus_summary(fixtures::corpus_of({codes({103, 201}), codes({103, 201})}));
    CHECK(two.frequency == std::map<SignCode, std::size_t>{{SignCode{103}, 2}, {SignCode{201}, 2}});
    CHECK(two.length_histogram == std::map<std::size_t, std::size_t>{{2, 2}});

    const auto empty = corpus_summary(Corpus{});
    CHECK(empty.frequency.empty());
    CHECK(empty.length_histogram.empty());
    CHECK(empty.tokens == 0);

    const auto single = corpus_summary(fixtures::corpus_of({codes({101})}));
    CHECK(single.frequency == std::map<SignCode, std::size_t>{{SignCode{101}, 1}});
    CHECK(single.length_histogram == std::map<std::size_t, std::size_t>{{1, 1}});

    const auto fixture = corpus_summary(load_corpus(fixtures::data("corpus.tsv"), inv));
    const auto freq_sum = std::accumulate(fixture.frequency.begin(), fixture.frequency.end(), std::size_t{0},
                                          [](std::size_t acc, const auto& kv) { return acc + kv.second; });
    const auto hist_sum = std::accumulate(fixture.length_histogram.begin(), fixture.length_histogram.end(), std::size_t{0},
                                          [](std::size_t acc, const auto& kv) { return acc + kv.first * kv.second; });
    CHECK(freq_sum == fixture.tokens);
    CHECK(hist_sum == fixture.tokens);
    CHECK(fixture.object_types.at(ObjectType::Seal) == 4);
}

TEST_CASE("writing a corpus and reloading it is the identity", "[corpus][roundtrip]") {
    const auto inv = fixtures::inventory();
    const auto codes_all = inv.codes();
    std::mt19937 gen(5);
    for (int trial = 0; trial < 25; ++trial) {
        Corpus c;
        c.inventory_ref = inv.source();
        const auto n = gen() % 15;
        for (std::uint32_t i = 0; i < n; ++i) {
            Inscription ins;
            ins.id = "x" + std::to_string(i);
            ins.object_type = kObjectTypeNames[gen() % kObjectTypeNames.size()].first;
            if (gen() % 2) ins.site = "site" + std::to_string(gen() % 3);
            const auto len = 1 + gen() % 8;
            for (std::uint32_t k = 0; k < len; ++k) ins.signs.push_back(codes_all[gen() % codes_all.size()]);
            c.inscriptions.push_back(std::move(ins));
        }
        std::ostringstream out;
        write_corpus(out, c);
        REQUIRE(fixtures::corpus_from(out.str(), inv) == c);
    }

    const auto fixture = load_corpus(fixtures::data("corpus.tsv"), inv);
    std::ostringstream out;
    write_corpus(out, fixture);
    CHECK(fixtures::corpus_from(out.str(), inv) == fixture);
}

TEST_CASE("inventory survives write and reload", "[corpus][inventory][roundtrip]") {
    const auto inv = fixtures::inventory();
    std::ostringstream out;
    write_inventory(out, inv);
    CHECK(fixtures::inventory_from(out.str()).signs() == inv.signs());
}

TEST_CASE("Litres parses and prints exact decimals", "[corpus][litres]") {
    CHECK(Litres::parse("40") == Litres::whole(40));
    CHECK(Litres::parse("40.5").micro() == 40'500'000);
    CHECK(Litres::parse("0.000001").micro() == 1);
    CHECK((Litres::parse("40") * 4).to_string() == "160");
    CHECK((Litres::parse("0.1") * 3).to_string() == "0.3");
    CHECK(Litres::parse("12.250").to_string() == "12.25");
    for (const char* bad : {"", ".5", "5.", "-1", "1e3", "1.0000001", "abc"})
        CHECK_THROWS_AS(Litres::parse(bad), std::invalid_argument);
}
