#include "vbscore/datamodel.hpp"

#include "vbscore/errors.hpp"

namespace vbscore {

std::string to_string(Source v) {
    switch (v) {
        case Source::CDC: return "CDC";
        case Source::WHO: return "WHO";
        case Source::NHS: return "NHS";
        case Source::MayoClinic: return "MayoClinic";
        case Source::Other: return "Other";
    }
    return "Other";
}

std::string to_string(DiseaseCategory v) {
    switch (v) {
        case DiseaseCategory::Infectious: return "Infectious";
        case DiseaseCategory::Chronic: return "Chronic";
        case DiseaseCategory::Other: return "Other";
    }
    return "Other";
}

std::string to_string(QuestionType v) {
    switch (v) {
        case QuestionType::Definition: return "Definition";
        case QuestionType::GeneralHealth: return "GeneralHealth";
        case QuestionType::Treatment: return "Treatment";
        case QuestionType::Prevention: return "Prevention";
        case QuestionType::Other: return "Other";
    }
    return "Other";
}

std::string to_string(PromptConfigKind v) {
    switch (v) {
        case PromptConfigKind::ZeroShotBaseline: return "ZeroShotBaseline";
        case PromptConfigKind::ZeroShotStrict: return "ZeroShotStrict";
        case PromptConfigKind::RAGContext: return "RAGContext";
        case PromptConfigKind::FewShot: return "FewShot";
    }
    return "ZeroShotBaseline";
}

std::string to_string(FailureFlag v) {
    switch (v) {
        case FailureFlag::EntityFail: return "EntityFail";
        case FailureFlag::SemanticFail: return "SemanticFail";
        case FailureFlag::FactualFail: return "FactualFail";
        case FailureFlag::StructureFail: return "StructureFail";
        case FailureFlag::SystemicFail: return "SystemicFail";
    }
    return "SystemicFail";
}

namespace {
[[noreturn]] void bad_enum(const char* type, const std::string& s) {
    throw ValidationError(std::string("unknown ") + type + " value: `" + s + "`");
}
}  // namespace

Source source_from_string(const std::string& s) {
    if (s == "CDC") return Source::CDC;
    if (s == "WHO") return Source::WHO;
    if (s == "NHS") return Source::NHS;
    if (s == "MayoClinic") return Source::MayoClinic;
    if (s == "Other") return Source::Other;
    bad_enum("source", s);
}

DiseaseCategory disease_category_from_string(const std::string& s) {
    if (s == "Infectious") return DiseaseCategory::Infectious;
    if (s == "Chronic") return DiseaseCategory::Chronic;
    if (s == "Other") return DiseaseCategory::Other;
    bad_enum("disease_category", s);
}

QuestionType question_type_from_string(const std::string& s) {
    if (s == "Definition") return QuestionType::Definition;
    if (s == "GeneralHealth") return QuestionType::GeneralHealth;
    if (s == "Treatment") return QuestionType::Treatment;
    if (s == "Prevention") return QuestionType::Prevention;
    if (s == "Other") return QuestionType::Other;
    bad_enum("question_type", s);
}

PromptConfigKind prompt_config_from_string(const std::string& s) {
    if (s == "ZeroShotBaseline") return PromptConfigKind::ZeroShotBaseline;
    if (s == "ZeroShotStrict") return PromptConfigKind::ZeroShotStrict;
    if (s == "RAGContext") return PromptConfigKind::RAGContext;
    if (s == "FewShot") return PromptConfigKind::FewShot;
    bad_enum("prompt_config", s);
}

FailureFlag failure_flag_from_string(const std::string& s) {
    if (s == "EntityFail") return FailureFlag::EntityFail;
    if (s == "SemanticFail") return FailureFlag::SemanticFail;
    if (s == "FactualFail") return FailureFlag::FactualFail;
    if (s == "StructureFail") return FailureFlag::StructureFail;
    if (s == "SystemicFail") return FailureFlag::SystemicFail;
    bad_enum("failure_flag", s);
}

void GenerationParams::validate() const {
    if (temperature < 0.0) throw ValidationError("temperature must be >= 0");
    if (max_tokens <= 0) throw ValidationError("max_tokens must be > 0");
    if (!(top_p > 0.0 && top_p <= 1.0)) throw ValidationError("top_p must be in (0,1]");
}

void ComponentScores::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0))
            throw ValidationError(std::string(name) + " outside [0,1]");
    };
    check(entity_f1, "entity_f1");
    check(semantic_similarity, "semantic_similarity");
    check(factual_consistency, "factual_consistency");
    check(structured_overlap, "structured_overlap");
}

}  // namespace vbscore
