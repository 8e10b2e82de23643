#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "colacare/json_io.hpp"

namespace colacare::retrieval {

using Embedding = std::vector<double>;

class Embedder {
 public:
  virtual ~Embedder() = default;
  /// Unit-norm vector of length dim().
  virtual Embedding embed(std::string_view text) const = 0;
  virtual std::size_t dim() const = 0;
  virtual std::string name() const = 0;
};

inline constexpr std::size_t kDefaultEmbeddingDim = 128;
inline constexpr std::size_t kMinEmbeddingDim = 16;

/// Lowercased alphanumeric runs.
std::vector<std::string> tokenize(std::string_view text);

/// Signed feature hashing of unigrams and bigrams, L2-normalized. Text with
/// no tokens maps to e1.
Embedding hash_embed(std::string_view text, std::size_t d = kDefaultEmbeddingDim);

class HashEmbedder final : public Embedder {
 public:
  explicit HashEmbedder(std::size_t d = kDefaultEmbeddingDim);
  Embedding embed(std::string_view text) const override { return hash_embed(text, d_); }
  std::size_t dim() const override { return d_; }
  std::string name() const override { return "hash"; }

 private:
  std::size_t d_;
};

struct CorpusDoc {
  std::string id;
  std::string title;
  std::string text;
};

/// JSON lines, one {"id", "title", "text"} per line. Blank lines are skipped.
std::vector<CorpusDoc> load_corpus(const std::filesystem::path& path);

struct TextSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Window starts at multiples of (chunk_size - overlap) while inside the
/// text; each window is moved off partial words at both ends and trimmed.
/// Text no longer than chunk_size is one span.
std::vector<TextSpan> chunk_text(std::string_view text, std::size_t chunk_size, std::size_t overlap);

struct CorpusChunk {
  std::string chunk_id;  // "<doc id>#<k>"
  std::string doc_title;
  std::string text;
  Embedding embedding;
};

struct Index {
  std::size_t d = 0;
  std::string embedder;
  std::vector<CorpusChunk> chunks;
};

inline constexpr std::size_t kDefaultChunkSize = 400;
inline constexpr std::size_t kDefaultOverlap = 100;
inline constexpr std::size_t kDefaultTopK = 16;

Index ingest_documents(const std::vector<CorpusDoc>& docs, std::size_t chunk_size,
                       std::size_t overlap, const Embedder& embedder);
Index ingest_corpus(const std::filesystem::path& path, std::size_t chunk_size, std::size_t overlap,
                    const Embedder& embedder);

struct Hit {
  std::string chunk_id;
  double score = 0.0;
};

struct RetrievedEvidence {
  std::string query_digest;  // fnv1a64 of the query, hex
  std::vector<Hit> hits;
};

/// Exact cosine scan; hits sorted by score descending, then chunk id.
RetrievedEvidence retrieve(const Index& index, std::string_view query, std::size_t k,
                           const Embedder& embedder);

const CorpusChunk* find_chunk(const Index& index, std::string_view chunk_id);

Json index_to_json(const Index& index);
Index index_from_json(const Json& doc);
void save_index(const std::filesystem::path& path, const Index& index);
Index load_index(const std::filesystem::path& path);

Json evidence_to_json(const RetrievedEvidence& evidence);
RetrievedEvidence evidence_from_json(const Json& doc);

}  // namespace colacare::retrieval
