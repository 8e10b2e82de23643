#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "colacare/agents.hpp"
#include "colacare/attribution.hpp"
#include "colacare/ehr_data.hpp"
#include "colacare/experts.hpp"
#include "colacare/llm_gateway.hpp"
#include "colacare/retrieval.hpp"

namespace colacare::consultation {

struct ConsultationConfig {
  int n_doctors = 3;
  int max_rounds = 3;
  std::size_t k_retrieval = retrieval::kDefaultTopK;
  std::size_t k_top_features = agents::kDefaultTopFeatures;
  bool reretrieve_per_round = false;
  bool llm_output_variant = true;
  bool store_prompts = false;
  int parallelism = 1;

  void validate() const;
};

Json config_to_json(const ConsultationConfig& c);
ConsultationConfig config_from_json(const Json& doc);

enum class Status { ok, aborted };
std::string to_string(Status s);

struct DoctorOpening {
  int role_id = 0;
  std::string expert_name;
  double z = 0.5;
  attribution::AttributionResult attribution;
  std::string record_text;
  retrieval::RetrievedEvidence evidence;
  agents::DoctorTurn review;
};

struct RoundRecord {
  int round = 0;
  std::vector<agents::DoctorTurn> statements;
  // Per-doctor evidence when re-retrieving each round.
  std::vector<retrieval::RetrievedEvidence> evidence;
  bool unanimous = false;
  std::optional<agents::Action> meta_action;  // unset when unanimous (no call)
  agents::Action effective_action = agents::Action::stop;
  bool forced_stop = false;  // round cap reached while the MetaAgent asked to continue
};

struct CallSummary {
  std::string role;
  int role_id = 0;
  llm::Tag tag = llm::Tag::doctor_review;
  bool reprompt = false;
  std::size_t system_chars = 0;
  std::size_t user_chars = 0;
  long input_tokens = 0;
  long output_tokens = 0;
  std::string response;
  std::string system_prompt;  // only with store_prompts
  std::string user_prompt;
};

struct ConsultationTranscript {
  std::string patient_id;
  int label = 0;
  Status status = Status::ok;
  std::string error;
  std::vector<DoctorOpening> openings;
  std::vector<agents::MetaReport> reports;
  std::vector<RoundRecord> rounds;
  int rounds_used = 0;
  bool consensus = false;
  double mean_expert_logit = 0.5;
  std::optional<agents::VariantResult> llm_output;
  std::vector<CallSummary> calls;
  llm::CostLedger ledger;

  const agents::MetaReport& final_report() const;
};

/// Calls the closed form predicts: n reviews, one synthesis, and per round n
/// statements, an action call unless unanimous and a revision when the round
/// continues. Reprompts and the LLM-output call are not included.
long closed_form_calls(const ConsultationTranscript& t);

/// Ledger calls excluding reprompts and the LLM-output call.
long protocol_calls(const ConsultationTranscript& t);

Json transcript_to_json(const ConsultationTranscript& t);
ConsultationTranscript transcript_from_json(const Json& doc);

/// z and exact (or sampled, above the exact limit) Shapley values of each
/// expert for one prepared record.
std::vector<agents::ExpertView> expert_views(const std::vector<const experts::Expert*>& experts,
                                             const ehr::PatientRecord& prepared, int n_permutations = 200,
                                             std::uint64_t seed = 0);

struct PatientCase {
  const ehr::PatientRecord* raw = nullptr;  // unnormalized, for the record text
  std::vector<agents::ExpertView> views;    // one per doctor, in doctor order
};

/// Per-doctor record text and retrieved evidence, as the consultation
/// builds them before the first call.
std::vector<agents::DoctorContext> doctor_contexts(const ConsultationConfig& config, const PatientCase& patient,
                                                   const std::vector<ehr::FeatureSpec>& specs,
                                                   const retrieval::Index& index,
                                                   const retrieval::Embedder& embedder);

/// One patient's consultation. Gateway failures end it with status aborted;
/// everything completed so far is kept.
ConsultationTranscript run_consultation(const ConsultationConfig& config, const PatientCase& patient,
                                        const std::vector<ehr::FeatureSpec>& specs, const retrieval::Index& index,
                                        const retrieval::Embedder& embedder, llm::ChatProvider& provider);

struct DoctorVoteStats {
  int role_id = 0;
  std::string expert_name;
  long agree = 0;
  long disagree = 0;
  double agree_pct() const;
  double disagree_pct() const;
};

struct ConsultationStats {
  std::string dataset;
  long patients = 0;
  long completed = 0;
  long aborted = 0;
  double avg_rounds = 0.0;
  double consensus_rate = 0.0;
  long parse_failures = 0;
  long reprompts = 0;
  std::vector<DoctorVoteStats> doctors;
  llm::CostLedger ledger;
};

/// Aggregates completed transcripts in patient-id order; aborted ones are
/// only counted.
ConsultationStats compute_stats(const std::vector<ConsultationTranscript>& transcripts, const std::string& dataset);
Json stats_to_json(const ConsultationStats& s, const llm::Prices& prices = {});

/// Runs every case with up to config.parallelism worker threads, each patient
/// on its own provider session. Transcripts come back in input order.
std::vector<ConsultationTranscript> run_cohort(const ConsultationConfig& config, const std::vector<PatientCase>& cases,
                                               const std::vector<ehr::FeatureSpec>& specs,
                                               const retrieval::Index& index, const retrieval::Embedder& embedder,
                                               const llm::ChatProvider& provider);

/// <dir>/<patient-id>.json
void save_transcripts(const std::filesystem::path& dir, const std::vector<ConsultationTranscript>& transcripts);
std::vector<ConsultationTranscript> load_transcripts(const std::filesystem::path& dir);

}  // namespace colacare::consultation
