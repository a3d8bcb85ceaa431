#include "vbscore/semantic.hpp"

#include <algorithm>
#include <cmath>

#include "vbscore/backends.hpp"
#include "vbscore/errors.hpp"

namespace vbscore {

void EmbeddingVector::validate() const {
    if (values.empty()) throw ValidationError("embedding dimension must be positive");
    for (double v : values) {
        if (!std::isfinite(v)) throw ValidationError("embedding values must be finite");
    }
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dimension() != b.dimension()) throw DimensionMismatch(a.dimension(), b.dimension());
    a.validate();
    b.validate();
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na == 0.0 || nb == 0.0) throw ZeroVector();
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double semantic_similarity(const std::string& reference, const std::string& generated,
                           EmbeddingBackend& backend) {
    if (reference.empty() || generated.empty())
        throw ValidationError("semantic similarity needs nonempty texts");
    auto vectors = backend.embed({reference, generated});
    if (vectors.size() != 2)
        throw BackendProtocolError("embedding backend returned wrong vector count");
    EmbeddingVector a{std::move(vectors[0])};
    EmbeddingVector b{std::move(vectors[1])};
    double cos = cosine_similarity(a, b);
    return std::clamp(cos, 0.0, 1.0);
}

}  // namespace vbscore
