#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "colacare/attribution.hpp"
#include "colacare/ehr_data.hpp"
#include "colacare/json_io.hpp"
#include "colacare/llm_gateway.hpp"
#include "colacare/retrieval.hpp"

namespace colacare::agents {

// --- patient record ---------------------------------------------------------

enum class Trend { rising, falling, flat };
std::string to_string(Trend t);

inline constexpr double kFlatSlope = 0.01;
inline constexpr std::size_t kDefaultTopFeatures = 10;
inline constexpr std::size_t kExcerptChars = 500;

/// Sign of the least-squares slope of the values against their visit index;
/// fewer than two points or |slope| < 0.01 is flat.
Trend trend_of(const std::vector<std::pair<double, double>>& time_value);

/// Trend of one feature over the observed cells of a raw record.
Trend feature_trend(const ehr::PatientRecord& raw, std::size_t feature);

/// One expert's view of the patient.
struct ExpertView {
  std::string expert_name;
  double z = 0.5;
  attribution::AttributionResult attribution;
};

struct FeatureLine {
  std::string name;
  std::string unit;
  double phi = 0.0;
  std::optional<double> last_value;
  Trend trend = Trend::flat;
};

struct PatientRecordText {
  std::string text;
  std::map<std::string, double> z_values;
  std::vector<FeatureLine> top_features;
  std::string static_summary;
};

std::string static_summary(const ehr::PatientRecord& raw);

/// x_record for a raw (unnormalized) record. Features are ranked by the mean
/// |phi| over the given views when there is more than one.
PatientRecordText build_patient_record(const ehr::PatientRecord& raw,
                                       const std::vector<ehr::FeatureSpec>& specs,
                                       const std::vector<ExpertView>& views, std::size_t k_top);

// --- replies ----------------------------------------------------------------

enum class Vote { none, agree, disagree };
enum class Risk { high, low };
enum class Action { continue_, stop };

std::string to_string(Vote v);
std::string to_string(Risk r);
std::string to_string(Action a);
Vote vote_from_string(const std::string& s);
Risk risk_from_string(const std::string& s);
Action action_from_string(const std::string& s);

struct DoctorTurn {
  int role_id = 0;
  int round = 0;
  Vote vote = Vote::none;
  std::string reason;
  std::vector<std::string> cited_chunk_ids;
  std::string raw_text;
  bool parse_failed = false;
};

struct EvidenceRef {
  int doctor = 0;
  std::string chunk_id;
  friend bool operator==(const EvidenceRef&, const EvidenceRef&) = default;
};

struct MetaReport {
  int round = 0;
  Risk risk = Risk::high;
  std::string narrative;
  std::vector<EvidenceRef> incorporated_evidence;
  std::string raw_text;
  bool parse_failed = false;
};

Json turn_to_json(const DoctorTurn& t);
Json report_to_json(const MetaReport& r);
DoctorTurn turn_from_json(const Json& j);
MetaReport report_from_json(const Json& j);

/// First balanced {...} in the text that parses as a JSON object.
std::optional<Json> extract_json_object(std::string_view text);

/// Bracketed id lists such as "[c3, c7]", in order of appearance.
std::vector<std::string> bracketed_ids(std::string_view text);

/// First number in the text lying in [0, 1].
std::optional<double> first_probability(std::string_view text);

// --- calls ------------------------------------------------------------------

struct CallRecord {
  std::string role;
  llm::ChatRequest request;
  llm::ChatResponse response;
  bool reprompt = false;  // retry after an unreadable reply
};

/// One patient's conversation with a provider: every call is kept in order
/// and added to the ledger.
class Session {
 public:
  Session(llm::ChatProvider& provider, std::string patient_id)
      : provider_(provider), patient_id_(std::move(patient_id)) {}

  llm::ChatResponse ask(const std::string& role, int role_id, llm::Tag tag, std::string system_prompt,
                        std::string user_prompt, bool reprompt = false);

  const std::vector<CallRecord>& calls() const { return calls_; }
  const llm::CostLedger& ledger() const { return ledger_; }
  const std::string& patient_id() const { return patient_id_; }

 private:
  llm::ChatProvider& provider_;
  std::string patient_id_;
  std::vector<CallRecord> calls_;
  llm::CostLedger ledger_;
};

std::string doctor_role(int role_id);
inline const std::string kMetaRole = "meta";
inline const std::string kVariantRole = "llm_output";

/// Evidence excerpts as they appear in prompts.
std::string render_evidence(const retrieval::RetrievedEvidence& evidence, const retrieval::Index& index);

struct DoctorContext {
  int role_id = 0;
  std::string expert_name;
  PatientRecordText record;
  retrieval::RetrievedEvidence evidence;
  std::set<std::string> retrieved_ids() const;
};

DoctorTurn doctor_initial_review(const DoctorContext& doctor, const retrieval::Index& index, Session& session);

MetaReport meta_synthesize(const std::vector<DoctorTurn>& reviews, const std::vector<DoctorContext>& doctors,
                           const ehr::PatientRecord& raw, double mean_expert_logit, Session& session);

DoctorTurn doctor_statement(const DoctorContext& doctor, const DoctorTurn& own_previous,
                            const MetaReport& current_report, int round, const retrieval::Index& index,
                            Session& session);

/// Stops without a call when every vote is agree.
Action meta_action(const std::vector<DoctorTurn>& statements, const MetaReport& current_report,
                   Session& session);

MetaReport meta_revise(const MetaReport& previous, const std::vector<DoctorTurn>& statements,
                       const std::vector<DoctorContext>& doctors, double mean_expert_logit, Session& session);

/// Probability read from the LLM given the final report; falls back to the
/// mean expert logit after one retry.
struct VariantResult {
  double probability = 0.5;
  bool parse_failed = false;
};
VariantResult llm_output_probability(const MetaReport& final_report, const std::string& record_text,
                                     double mean_expert_logit, Session& session);

}  // namespace colacare::agents
