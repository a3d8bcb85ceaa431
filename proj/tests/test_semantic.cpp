#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "vbscore/backends.hpp"
#include "vbscore/errors.hpp"
#include "vbscore/semantic.hpp"

using namespace vbscore;

namespace {

// backend returning canned vectors per call order
class FixedVectorBackend : public EmbeddingBackend {
public:
    explicit FixedVectorBackend(std::vector<std::vector<double>> vectors)
        : vectors_(std::move(vectors)) {}
    std::vector<std::vector<double>> embed(const std::vector<std::string>&) override {
        return vectors_;
    }

private:
    std::vector<std::vector<double>> vectors_;
};

// multiplies one side's vectors by a constant
class ScalingBackend : public EmbeddingBackend {
public:
    ScalingBackend(EmbeddingBackend& inner, double factor, size_t which)
        : inner_(inner), factor_(factor), which_(which) {}
    std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) override {
        auto vectors = inner_.embed(texts);
        for (auto& v : vectors[which_]) v *= factor_;
        return vectors;
    }

private:
    EmbeddingBackend& inner_;
    double factor_;
    size_t which_;
};

}  // namespace

TEST_SUITE("semantic") {

TEST_CASE("identical texts score 1") {
    HashingEmbeddingBackend backend;
    double s = semantic_similarity("Influenza causes fever and cough.",
                                   "Influenza causes fever and cough.", backend);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("orthogonal vectors score 0") {
    FixedVectorBackend backend({{1.0, 0.0}, {0.0, 1.0}});
    CHECK(semantic_similarity("a", "b", backend) == doctest::Approx(0.0));
}

TEST_CASE("known angle reproduces the dot-product value") {
    FixedVectorBackend backend({{1.0, 0.0}, {1.0, 1.0}});
    CHECK(semantic_similarity("a", "b", backend) ==
          doctest::Approx(0.70710678).epsilon(1e-6));
}

TEST_CASE("negative cosine clamps to 0") {
    FixedVectorBackend backend({{1.0, 0.0}, {-1.0, 0.0}});
    CHECK(semantic_similarity("a", "b", backend) == 0.0);
}

TEST_CASE("similarity is symmetric") {
    HashingEmbeddingBackend backend;
    const std::vector<std::string> texts = {
        "Wash your hands often.",
        "Hand washing prevents infection.",
        "Diabetes raises blood sugar.",
        "Wash your hands often.",
    };
    for (const auto& a : texts) {
        for (const auto& b : texts) {
            CHECK(semantic_similarity(a, b, backend) ==
                  doctest::Approx(semantic_similarity(b, a, backend)).epsilon(1e-12));
        }
    }
}

TEST_CASE("positive scaling of either vector leaves the score unchanged") {
    HashingEmbeddingBackend inner;
    std::string a = "Flu spreads through droplets.";
    std::string b = "Influenza transmission involves droplets.";
    double base = semantic_similarity(a, b, inner);
    for (double factor : {0.5, 3.0, 1000.0}) {
        for (size_t which : {0u, 1u}) {
            ScalingBackend scaled(inner, factor, which);
            CHECK(semantic_similarity(a, b, scaled) ==
                  doctest::Approx(base).epsilon(1e-12));
        }
    }
}

TEST_CASE("similarity stays in [0,1] on random text pairs") {
    HashingEmbeddingBackend backend;
    oracle::Rng rng(7);
    const std::vector<std::string> words = {"fever", "cough", "rest",   "fluids",
                                            "virus", "cells", "doctor", "sleep"};
    for (int i = 0; i < 200; ++i) {
        std::string a, b;
        for (int j = rng.uniform_int(1, 8); j > 0; --j)
            a += words[static_cast<size_t>(rng.uniform_int(0, 7))] + " ";
        for (int j = rng.uniform_int(1, 8); j > 0; --j)
            b += words[static_cast<size_t>(rng.uniform_int(0, 7))] + " ";
        double s = semantic_similarity(a, b, backend);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}

TEST_CASE("dimension mismatch and zero vectors are reported") {
    FixedVectorBackend mismatched({{1.0, 0.0}, {1.0, 0.0, 0.0}});
    CHECK_THROWS_AS(semantic_similarity("a", "b", mismatched), DimensionMismatch);

    FixedVectorBackend zero({{0.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(semantic_similarity("a", "b", zero), ZeroVector);

    HashingEmbeddingBackend backend;
    CHECK_THROWS_AS(semantic_similarity("", "b", backend), ValidationError);
    // nonempty but token-free text embeds to the zero vector
    CHECK_THROWS_AS(semantic_similarity("...", "fever", backend), ZeroVector);
}

}  // TEST_SUITE
