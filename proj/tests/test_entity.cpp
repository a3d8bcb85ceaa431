#include <doctest.h>

#include <string>
#include <vector>

#include "oracles.hpp"
#include "testutil.hpp"
#include "vbscore/backends.hpp"
#include "vbscore/entity.hpp"
#include "vbscore/errors.hpp"

using namespace vbscore;

namespace {

EntitySet set_of(const std::vector<std::string>& raw, const AbbreviationTable& table) {
    return EntitySet::from_raw(raw, table);
}

bool table1_row(const std::string& ref, const std::string& gen, MatchReason* reason) {
    AbbreviationTable table = AbbreviationTable::defaults();
    return entities_match(normalize_entity(ref, table), ref, normalize_entity(gen, table),
                          gen, table, kDefaultMinTokenLen, reason);
}

}  // namespace

TEST_SUITE("entity") {

TEST_CASE("normalization drops case, punctuation, and leading articles") {
    AbbreviationTable table = AbbreviationTable::defaults();
    CHECK(normalize_entity("Fever", table) == "fever");
    CHECK(normalize_entity("the cough", table) == "cough");
    CHECK(normalize_entity("acetaminophen,", table) == "acetaminophen");
}

TEST_CASE("abbreviations map to one canonical form") {
    AbbreviationTable table = AbbreviationTable::defaults();
    CHECK(normalize_entity("mg", table) == normalize_entity("milligrams", table));
    CHECK(normalize_entity("TB", table) == normalize_entity("tuberculosis", table));
    CHECK(normalize_entity("tab", table) == normalize_entity("tablet", table));
    // canonicalization applies inside larger phrases too
    CHECK(normalize_entity("500 mg", table) == "500 milligrams");
}

TEST_CASE("normalization rejects entities that vanish") {
    AbbreviationTable table = AbbreviationTable::defaults();
    CHECK_THROWS_AS(normalize_entity("...", table), EmptyAfterNormalization);
    CHECK_THROWS_AS(normalize_entity("the", table), EmptyAfterNormalization);
    CHECK_THROWS_AS(normalize_entity("a an the", table), EmptyAfterNormalization);
}

TEST_CASE("normalization is idempotent on a fuzz corpus") {
    AbbreviationTable table = AbbreviationTable::defaults();
    oracle::Rng rng(20250810);
    const std::string alphabet = "abcXYZ ,.!()-'0159 the an mg";
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        std::string raw;
        int len = rng.uniform_int(1, 24);
        for (int j = 0; j < len; ++j)
            raw += alphabet[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(alphabet.size() - 1)))];
        std::string once;
        try {
            once = normalize_entity(raw, table);
        } catch (const EmptyAfterNormalization&) {
            continue;  // nothing survived; idempotence is vacuous
        }
        CHECK(normalize_entity(once, table) == once);
        ++checked;
    }
    CHECK(checked > 100);  // the corpus actually exercised the property
}

TEST_CASE("abbreviation table canonicalization is idempotent") {
    AbbreviationTable table = AbbreviationTable::defaults();
    for (const std::string s : {"mg", "milligrams", "tb", "tuberculosis", "tab", "tablet"}) {
        std::string once = table.canonicalize(s);
        CHECK(table.canonicalize(once) == once);
    }
}

TEST_CASE("chained and cyclic abbreviation pairs stay a function") {
    AbbreviationTable chained;
    chained.add_pair("tab", "tablet");
    chained.add_pair("tablet", "tablets");
    // the chain resolves all the way down and stays idempotent
    CHECK(chained.canonicalize("tab") == "tablets");
    CHECK(chained.canonicalize("tablet") == "tablets");
    CHECK(chained.canonicalize(chained.canonicalize("tab")) ==
          chained.canonicalize("tab"));

    AbbreviationTable cyclic;
    cyclic.add_pair("flu", "influenza");
    cyclic.add_pair("influenza", "flu");
    std::string a = cyclic.canonicalize("flu");
    std::string b = cyclic.canonicalize("influenza");
    CHECK(a == b);
    CHECK(cyclic.canonicalize(a) == a);
}

TEST_CASE("abbreviation table loads the tab-separated file format") {
    testutil::TempDir tmp;
    testutil::write_file(tmp.file("abbrev.tsv"),
                         "# pairs\nmg\tmilligrams\nBP\tblood pressure\n");
    auto table = AbbreviationTable::load(tmp.file("abbrev.tsv"));
    CHECK(normalize_entity("BP", table) == "blood pressure");
    CHECK(normalize_entity("mg", table) == "milligrams");

    testutil::write_file(tmp.file("bad.tsv"), "no tab here\n");
    CHECK_THROWS_AS(AbbreviationTable::load(tmp.file("bad.tsv")), MalformedLine);
}

// The seven documented matching examples, expected verdict and reason.
TEST_CASE("matching examples reproduce exactly") {
    MatchReason reason;

    CHECK(table1_row("fever", "fever", &reason));
    CHECK(reason == MatchReason::Exact);

    CHECK(table1_row("acetaminophen", "Acetaminophen", &reason));
    CHECK(reason == MatchReason::CaseNormalized);

    CHECK(table1_row("tuberculosis", "TB", &reason));
    CHECK(reason == MatchReason::Abbreviation);

    CHECK(table1_row("shortness of breath", "difficulty breathing", &reason));
    CHECK(reason == MatchReason::TokenSubstring);

    // "cough, fever" lists two reference entities; neither matches
    CHECK_FALSE(table1_row("cough", "respiratory symptoms", &reason));
    CHECK_FALSE(table1_row("fever", "respiratory symptoms", &reason));

    CHECK_FALSE(table1_row("heart attack", "myocardial infarction", &reason));

    CHECK_FALSE(table1_row("metformin", "oral medication", &reason));
}

TEST_CASE("whole-string substring matches take precedence over token overlap") {
    MatchReason reason;
    CHECK(table1_row("diabetes", "type 2 diabetes", &reason));
    CHECK(reason == MatchReason::WholeSubstring);
    CHECK(table1_row("flu", "influenza", &reason));  // short whole strings still count
    CHECK(reason == MatchReason::WholeSubstring);
}

TEST_CASE("short tokens do not create spurious matches") {
    MatchReason reason;
    // "of" appears in both but is below the token length floor
    CHECK_FALSE(table1_row("loss of taste", "out of breath", &reason));
}

TEST_CASE("match existence is symmetric") {
    AbbreviationTable table = AbbreviationTable::defaults();
    const std::vector<std::string> corpus = {
        "fever",        "high fever",  "tuberculosis", "tb",          "cough",
        "severe cough", "breathing",   "breath",       "metformin",   "insulin",
        "the rash",     "skin rash",   "acetaminophen", "mg",         "milligrams",
        "heart attack", "heart",       "blood pressure", "bp reading", "nausea",
    };
    for (const auto& a : corpus) {
        for (const auto& b : corpus) {
            std::string na = normalize_entity(a, table);
            std::string nb = normalize_entity(b, table);
            bool ab = entities_match(na, a, nb, b, table, kDefaultMinTokenLen, nullptr);
            bool ba = entities_match(nb, b, na, a, table, kDefaultMinTokenLen, nullptr);
            CHECK(ab == ba);
        }
    }
}

TEST_CASE("match report partitions both sides") {
    AbbreviationTable table = AbbreviationTable::defaults();
    auto ref = set_of({"fever", "cough", "nausea"}, table);
    auto gen = set_of({"fever", "headache"}, table);
    auto report = match_entities(ref, gen, table);

    REQUIRE(report.matched_pairs.size() == 1);
    CHECK(report.matched_pairs[0].reference == "fever");
    CHECK(report.unmatched_reference.count("cough") == 1);
    CHECK(report.unmatched_reference.count("nausea") == 1);
    CHECK(report.unmatched_generated.count("headache") == 1);

    auto prf = entity_prf(report);
    CHECK(prf.precision == doctest::Approx(0.5));
    CHECK(prf.recall == doctest::Approx(1.0 / 3.0));
    CHECK(prf.f1 == doctest::Approx(0.4));
}

TEST_CASE("identical nonempty sets score perfectly") {
    AbbreviationTable table = AbbreviationTable::defaults();
    auto ref = set_of({"fever", "cough"}, table);
    auto prf = entity_prf(match_entities(ref, ref, table));
    CHECK(prf.precision == doctest::Approx(1.0));
    CHECK(prf.recall == doctest::Approx(1.0));
    CHECK(prf.f1 == doctest::Approx(1.0));
}

TEST_CASE("degenerate sets score zero") {
    AbbreviationTable table = AbbreviationTable::defaults();
    auto ref = set_of({"fever"}, table);
    auto empty = set_of({}, table);

    auto prf = entity_prf(match_entities(ref, empty, table));
    CHECK(prf.precision == 0.0);
    CHECK(prf.recall == 0.0);
    CHECK(prf.f1 == 0.0);

    auto both = entity_prf(match_entities(empty, empty, table));
    CHECK(both.f1 == 0.0);
}

TEST_CASE("f1 bounds hold on random match reports") {
    AbbreviationTable table = AbbreviationTable::defaults();
    oracle::Rng rng(42);
    const std::vector<std::string> pool = {
        "fever", "cough", "nausea", "rash", "fatigue", "headache", "dizziness",
        "insulin", "metformin", "aspirin", "tuberculosis", "asthma", "anemia",
    };
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> ref_raw, gen_raw;
        int nr = rng.uniform_int(0, 6), ng = rng.uniform_int(0, 6);
        for (int i = 0; i < nr; ++i)
            ref_raw.push_back(pool[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(pool.size() - 1)))]);
        for (int i = 0; i < ng; ++i)
            gen_raw.push_back(pool[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(pool.size() - 1)))]);
        auto prf = entity_prf(match_entities(set_of(ref_raw, table), set_of(gen_raw, table), table));
        CHECK(prf.f1 >= 0.0);
        CHECK(prf.f1 <= 1.0);
        CHECK(prf.f1 <= 2.0 * prf.precision + 1e-12);
        CHECK(prf.f1 <= 2.0 * prf.recall + 1e-12);
        if (prf.precision == 0.0 || prf.recall == 0.0) CHECK(prf.f1 == 0.0);
    }
}

TEST_CASE("lexicon backend finds whole-word phrases") {
    LexiconEntityBackend backend({"fever", "cough"});
    AbbreviationTable table = AbbreviationTable::defaults();

    auto set = extract_entities("Patients report fever and severe cough.", backend, table);
    CHECK(set.entities() == std::set<std::string>{"fever", "cough"});

    auto empty = extract_entities("", backend, table);
    CHECK(empty.empty());

    auto dedup = extract_entities("Fever, fever, FEVER", backend, table);
    CHECK(dedup.entities() == std::set<std::string>{"fever"});
}

TEST_CASE("lexicon backend respects word boundaries and records spans") {
    LexiconEntityBackend backend({"flu", "rash"});
    AbbreviationTable table = AbbreviationTable::defaults();
    // "influenza" must not produce a "flu" hit
    auto set = extract_entities("Influenza differs from a rash.", backend, table);
    CHECK(set.entities() == std::set<std::string>{"rash"});
    REQUIRE(set.entries.size() == 1);
    CHECK(set.entries[0].raw == "rash");
    CHECK(set.entries[0].start == 25);
    CHECK(set.entries[0].end == 29);
}

}  // TEST_SUITE
