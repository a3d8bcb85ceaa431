#include "vbscore/config.hpp"

#include <filesystem>

#include <nlohmann/json.hpp>

#include "vbscore/errors.hpp"
#include "vbscore/io.hpp"

namespace vbscore {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string resolve_relative(const fs::path& base_dir, const std::string& p) {
    if (p.empty()) return p;
    fs::path path(p);
    if (path.is_absolute()) return p;
    return (base_dir / path).lexically_normal().string();
}

}  // namespace

void apply_config_file(RunConfig& config, const std::string& path) {
    std::string content = io::read_file(path);
    json obj = json::parse(content, nullptr, false, /*ignore_comments=*/true);
    if (obj.is_discarded() || !obj.is_object())
        throw ValidationError("config file " + path + " must hold a JSON object");
    fs::path base_dir = fs::path(path).parent_path();

    auto get_path = [&](const char* key, std::string& target) {
        if (obj.contains(key)) target = resolve_relative(base_dir, obj[key].get<std::string>());
    };
    get_path("dataset", config.dataset_path);
    get_path("abbreviations", config.abbreviations_path);
    get_path("lexicon", config.lexicon_path);
    get_path("prices", config.prices_path);
    get_path("templates_dir", config.templates_dir);
    get_path("out", config.out_dir);

    if (obj.contains("responses")) {
        config.responses_paths.clear();
        for (const auto& p : obj["responses"])
            config.responses_paths.push_back(resolve_relative(base_dir, p.get<std::string>()));
    }
    if (obj.contains("scheme")) config.scheme_name = obj["scheme"].get<std::string>();
    if (obj.contains("weight_schemes")) {
        for (const auto& s : obj["weight_schemes"]) {
            WeightScheme scheme;
            scheme.name = s.at("name").get<std::string>();
            scheme.w_entity = s.at("entity").get<double>();
            scheme.w_semantic = s.at("semantic").get<double>();
            scheme.w_factual = s.at("factual").get<double>();
            scheme.w_structured = s.at("structured").get<double>();
            scheme.validate();
            config.extra_schemes.push_back(scheme);
        }
    }
    if (obj.contains("sensitivity_schemes")) {
        config.sensitivity_schemes.clear();
        for (const auto& s : obj["sensitivity_schemes"])
            config.sensitivity_schemes.push_back(s.get<std::string>());
    }
    if (obj.contains("thresholds")) {
        const auto& t = obj["thresholds"];
        if (t.contains("entity")) config.thresholds.entity = t["entity"].get<double>();
        if (t.contains("semantic")) config.thresholds.semantic = t["semantic"].get<double>();
        if (t.contains("factual")) config.thresholds.factual = t["factual"].get<double>();
        if (t.contains("structured")) config.thresholds.structured = t["structured"].get<double>();
        if (t.contains("overall")) config.thresholds.overall = t["overall"].get<double>();
        config.thresholds.validate();
        config.semantic_high = config.thresholds.semantic;
    }
    if (obj.contains("semantic_high")) config.semantic_high = obj["semantic_high"].get<double>();
    if (obj.contains("min_token_len")) config.min_token_len = obj["min_token_len"].get<int>();
    if (obj.contains("nli")) {
        const auto& n = obj["nli"];
        if (n.contains("mode")) {
            std::string mode = n["mode"].get<std::string>();
            if (mode == "per_sentence") config.nli_mode = ConsistencyMode::PerSentence;
            else if (mode == "whole_response") config.nli_mode = ConsistencyMode::WholeResponse;
            else throw ValidationError("nli.mode must be per_sentence or whole_response");
        }
        if (n.contains("mapping")) {
            const auto& m = n["mapping"];
            if (m.contains("entailment")) config.nli_mapping.entailment = m["entailment"].get<double>();
            if (m.contains("neutral")) config.nli_mapping.neutral = m["neutral"].get<double>();
            if (m.contains("contradiction"))
                config.nli_mapping.contradiction = m["contradiction"].get<double>();
        }
    }
    if (obj.contains("embedding_dim")) config.embedding_dim = obj["embedding_dim"].get<size_t>();
    if (obj.contains("welch")) config.welch = obj["welch"].get<bool>();
    if (obj.contains("alpha")) config.alpha = obj["alpha"].get<double>();
    if (obj.contains("reference_backends"))
        config.reference_backends = obj["reference_backends"].get<bool>();
    if (obj.contains("backends")) {
        for (auto it = obj["backends"].begin(); it != obj["backends"].end(); ++it)
            config.backend_urls[it.key()] = it.value().get<std::string>();
    }
    if (obj.contains("model_auth_header"))
        config.model_auth_header = obj["model_auth_header"].get<std::string>();
    if (obj.contains("model_auth_env"))
        config.model_auth_env = obj["model_auth_env"].get<std::string>();
    if (obj.contains("models")) {
        config.sweep_models.clear();
        for (const auto& m : obj["models"]) config.sweep_models.push_back(m.get<std::string>());
    }
    if (obj.contains("few_shot_count"))
        config.few_shot_count = obj["few_shot_count"].get<size_t>();
    if (obj.contains("retry")) {
        const auto& r = obj["retry"];
        if (r.contains("max_attempts")) config.retry.max_attempts = r["max_attempts"].get<int>();
        if (r.contains("initial_delay_ms"))
            config.retry.initial_delay_ms = r["initial_delay_ms"].get<int>();
        if (r.contains("multiplier")) config.retry.multiplier = r["multiplier"].get<double>();
    }
    if (obj.contains("parallel")) config.parallel = obj["parallel"].get<int>();
}

AbbreviationTable load_abbreviations(const RunConfig& config) {
    if (config.abbreviations_path.empty()) return AbbreviationTable::defaults();
    return AbbreviationTable::load(config.abbreviations_path);
}

PriceTable load_prices(const RunConfig& config) {
    if (config.prices_path.empty()) return PriceTable::defaults();
    return PriceTable::load(config.prices_path);
}

PromptTemplates load_templates(const RunConfig& config) {
    if (config.templates_dir.empty()) return PromptTemplates::defaults();
    return PromptTemplates::load(config.templates_dir);
}

const std::vector<std::string>& default_lexicon() {
    static const std::vector<std::string> phrases = {
        // conditions
        "asthma", "diabetes", "type 1 diabetes", "type 2 diabetes", "hypertension",
        "high blood pressure", "heart disease", "cardiovascular disease", "heart attack",
        "stroke", "cancer", "breast cancer", "lung cancer", "obesity", "arthritis",
        "osteoarthritis", "rheumatoid arthritis", "depression", "anxiety", "dementia",
        "alzheimer's disease", "copd", "chronic obstructive pulmonary disease",
        "chronic kidney disease", "osteoporosis", "epilepsy", "migraine", "anemia",
        "influenza", "flu", "covid-19", "coronavirus", "tuberculosis", "pneumonia",
        "measles", "chickenpox", "hepatitis", "hepatitis b", "hiv", "aids", "malaria",
        "dengue", "cholera", "tetanus", "whooping cough", "pertussis", "polio", "rabies",
        "salmonella", "norovirus", "meningitis", "sepsis", "bronchitis", "sinusitis",
        "strep throat", "ear infection", "urinary tract infection", "food poisoning",
        "eczema", "psoriasis", "glaucoma", "cataract", "gout", "ulcer", "gerd",
        "irritable bowel syndrome", "celiac disease", "thyroid disease", "hypothyroidism",
        "insomnia", "sleep apnea", "allergy", "allergic rhinitis", "hay fever",
        // symptoms
        "fever", "cough", "sore throat", "runny nose", "nasal congestion", "sneezing",
        "shortness of breath", "difficulty breathing", "wheezing", "chest pain",
        "chest tightness", "fatigue", "tiredness", "headache", "muscle aches",
        "body aches", "joint pain", "nausea", "vomiting", "diarrhea", "constipation",
        "abdominal pain", "stomach pain", "loss of appetite", "weight loss",
        "weight gain", "dizziness", "fainting", "rash", "itching", "swelling",
        "night sweats", "chills", "loss of taste", "loss of smell", "blurred vision",
        "frequent urination", "excessive thirst", "numbness", "tingling", "palpitations",
        "high blood sugar", "low blood sugar", "dehydration", "dark urine", "dry mouth",
        "back pain", "stiffness", "confusion", "memory loss", "mood changes",
        "irritability", "sadness", "trouble sleeping", "snoring", "jaundice",
        // medications and treatments
        "acetaminophen", "paracetamol", "ibuprofen", "aspirin", "antibiotics",
        "penicillin", "amoxicillin", "metformin", "insulin", "statins", "antihistamines",
        "decongestants", "inhaler", "bronchodilator", "corticosteroids", "antivirals",
        "oseltamivir", "vaccine", "vaccination", "booster", "chemotherapy", "radiation",
        "dialysis", "surgery", "physical therapy", "oxygen therapy", "antidepressants",
        "beta blockers", "ace inhibitors", "diuretics", "anticoagulants", "epinephrine",
        "oral rehydration", "rest", "fluids",
        // anatomy
        "lungs", "airways", "heart", "arteries", "blood vessels", "kidneys", "liver",
        "pancreas", "brain", "joints", "bones", "skin", "stomach", "intestine",
        "bladder", "thyroid", "immune system", "nervous system", "blood pressure",
        "blood sugar", "cholesterol", "artery walls", "insulin resistance",
        // procedures and measures
        "screening", "blood test", "x-ray", "ct scan", "mri", "biopsy", "colonoscopy",
        "mammogram", "handwashing", "social distancing", "isolation", "quarantine",
        "mask", "exercise", "healthy diet", "balanced diet", "smoking cessation",
        "weight management", "blood pressure monitoring", "glucose monitoring",
        // dosage-ish units
        "milligrams", "mg", "dose", "dosage", "tablet", "tab",
    };
    return phrases;
}

ScoringBackends make_scoring_backends(const RunConfig& config) {
    ScoringBackends backends;
    auto url_of = [&](const char* name) -> std::string {
        if (config.reference_backends) return "";
        auto it = config.backend_urls.find(name);
        return it == config.backend_urls.end() ? "" : it->second;
    };

    std::string entity_url = url_of("entity");
    if (entity_url.empty()) {
        if (!config.lexicon_path.empty()) {
            backends.entity = std::make_unique<LexiconEntityBackend>(
                LexiconEntityBackend::from_file(config.lexicon_path));
        } else {
            backends.entity = std::make_unique<LexiconEntityBackend>(default_lexicon());
        }
    } else {
        backends.entity = std::make_unique<HttpEntityBackend>(entity_url);
    }

    std::string embedding_url = url_of("embedding");
    if (embedding_url.empty()) {
        backends.embedding = std::make_unique<HashingEmbeddingBackend>(config.embedding_dim);
    } else {
        backends.embedding = std::make_unique<HttpEmbeddingBackend>(embedding_url);
    }

    std::string nli_url = url_of("nli");
    if (nli_url.empty()) {
        backends.nli = std::make_unique<RuleNLIBackend>();
    } else {
        backends.nli = std::make_unique<HttpNLIBackend>(nli_url);
    }
    return backends;
}

std::unique_ptr<ModelBackend> make_model_backend(const RunConfig& config) {
    std::string url;
    if (!config.reference_backends) {
        auto it = config.backend_urls.find("model");
        if (it != config.backend_urls.end()) url = it->second;
    }
    if (url.empty()) return std::make_unique<MockModelBackend>();
    return std::make_unique<HttpModelBackend>(url, config.model_auth_header,
                                              config.model_auth_env);
}

}  // namespace vbscore
