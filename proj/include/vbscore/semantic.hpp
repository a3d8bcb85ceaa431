#pragma once

#include <string>
#include <vector>

namespace vbscore {

class EmbeddingBackend;  // see backends.hpp

struct EmbeddingVector {
    std::vector<double> values;

    size_t dimension() const { return values.size(); }
    void validate() const;  // nonzero dimension, all values finite
};

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

// Embeds both texts with the backend and returns their cosine
// similarity clamped to [0,1]. Identical texts score 1.0 under any
// deterministic backend.
double semantic_similarity(const std::string& reference, const std::string& generated,
                           EmbeddingBackend& backend);

}  // namespace vbscore
