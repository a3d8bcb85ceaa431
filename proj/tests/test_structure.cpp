#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vbscore/structure.hpp"

using namespace vbscore;

namespace {

std::set<std::string> items_of(const EnumerationSet& set) {
    std::set<std::string> out;
    for (const auto& i : set.items) out.insert(i.text);
    return out;
}

EnumerationSet enum_of(const std::vector<std::string>& items) {
    EnumerationSet set;
    for (const auto& i : items) set.items.push_back({i, EnumerationOrigin::Bullet});
    return set;
}

}  // namespace

TEST_SUITE("structure") {

TEST_CASE("bulleted lines become items") {
    auto set = extract_enumerations("- fever\n- cough\n- fatigue");
    CHECK(items_of(set) == std::set<std::string>{"fever", "cough", "fatigue"});
    for (const auto& item : set.items) CHECK(item.origin == EnumerationOrigin::Bullet);
}

TEST_CASE("star and unicode bullets, numbered markers") {
    auto set = extract_enumerations(
        "* rest\n\xE2\x80\xA2 fluids\n1. see a doctor\n2) stay home");
    CHECK(items_of(set) ==
          std::set<std::string>{"rest", "fluids", "see a doctor", "stay home"});
}

TEST_CASE("comma series of three or more items is extracted") {
    auto set = extract_enumerations("Symptoms include fever, cough, and fatigue.");
    CHECK(items_of(set) == std::set<std::string>{"fever", "cough", "fatigue"});
    for (const auto& item : set.items)
        CHECK(item.origin == EnumerationOrigin::CommaSeries);
}

TEST_CASE("two-item clauses are not series") {
    auto set = extract_enumerations("Rest, and drink fluids.");
    CHECK(set.empty());
}

TEST_CASE("non-Oxford series still yields three items") {
    auto set = extract_enumerations("Common signs are fever, cough and fatigue.");
    CHECK(items_of(set) == std::set<std::string>{"fever", "cough", "fatigue"});
}

TEST_CASE("colon introductions are stripped from the first item") {
    auto set = extract_enumerations("Watch for these signs: fever, stiff neck, and confusion.");
    CHECK(items_of(set) == std::set<std::string>{"fever", "stiff neck", "confusion"});
}

TEST_CASE("series keep multi-word items") {
    auto set = extract_enumerations(
        "Symptoms include muscle aches, sore throat, and runny nose.");
    CHECK(items_of(set) == std::set<std::string>{"muscle aches", "sore throat", "runny nose"});
}

TEST_CASE("mixed bullets and prose extract from both") {
    auto set = extract_enumerations(
        "Management includes rest, fluids, and monitoring.\n- call a doctor if fever persists");
    CHECK(set.contains("rest"));
    CHECK(set.contains("fluids"));
    CHECK(set.contains("monitoring"));
    CHECK(set.contains("call a doctor if fever persists"));
}

TEST_CASE("plain prose yields nothing") {
    CHECK(extract_enumerations("Take medication as directed.").empty());
    CHECK(extract_enumerations("").empty());
}

TEST_CASE("items deduplicate after normalization") {
    auto set = extract_enumerations("- Fever\n- fever,\n- FEVER");
    CHECK(set.size() == 1);
}

TEST_CASE("jaccard identities") {
    auto a = enum_of({"fever", "cough", "rash"});
    CHECK(structured_overlap(a, a) == doctest::Approx(1.0));

    auto b = enum_of({"insulin", "metformin"});
    CHECK(structured_overlap(a, b) == doctest::Approx(0.0));

    EnumerationSet empty;
    CHECK(structured_overlap(a, empty) == 0.0);
    CHECK(structured_overlap(empty, empty) == 0.0);  // documented both-empty convention
}

TEST_CASE("partial overlap counts matched items") {
    // {a,b,c} vs {b,c,d} -> 2 matched / 4 in the union
    auto a = enum_of({"fever", "cough", "rash"});
    auto b = enum_of({"cough", "rash", "nausea"});
    CHECK(structured_overlap(a, b) == doctest::Approx(0.5));
}

TEST_CASE("intersection goes through the entity matcher") {
    auto a = enum_of({"tb", "fever"});
    auto b = enum_of({"tuberculosis", "fever"});
    // tb and tuberculosis intersect through the abbreviation table
    CHECK(structured_overlap(a, b) == doctest::Approx(1.0));
}

TEST_CASE("overlap is symmetric and bounded on random item sets") {
    const std::vector<std::string> pool = {
        "fever", "high fever", "cough", "dry cough", "rash",      "fatigue",
        "chest pain",  "pain",  "nausea", "vomiting", "tb", "tuberculosis",
    };
    oracle::Rng rng(314159);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::string> raw_a, raw_b;
        for (int i = rng.uniform_int(0, 5); i > 0; --i)
            raw_a.push_back(pool[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(pool.size() - 1)))]);
        for (int i = rng.uniform_int(0, 5); i > 0; --i)
            raw_b.push_back(pool[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(pool.size() - 1)))]);
        // dedupe through EnumerationSet semantics
        EnumerationSet a, b;
        for (const auto& s : raw_a)
            if (!a.contains(s)) a.items.push_back({s, EnumerationOrigin::Bullet});
        for (const auto& s : raw_b)
            if (!b.contains(s)) b.items.push_back({s, EnumerationOrigin::Bullet});

        double ab = structured_overlap(a, b);
        double ba = structured_overlap(b, a);
        CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
    }
}

TEST_CASE("adding a shared item never decreases the overlap") {
    auto a = enum_of({"fever", "cough"});
    auto b = enum_of({"cough", "rash"});
    double before = structured_overlap(a, b);
    a.items.push_back({"insulin", EnumerationOrigin::Bullet});
    b.items.push_back({"insulin", EnumerationOrigin::Bullet});
    double after = structured_overlap(a, b);
    CHECK(after >= before);
}

}  // TEST_SUITE
