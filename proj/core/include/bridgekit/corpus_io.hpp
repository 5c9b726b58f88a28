#pragma once

// File-based ingestion of user corpora, contact networks, annotation labels
// and survey responses.
//
// Layout of one user directory:
//   user.jsonl      profile object first, then one post object per line
//   contacts.jsonl  optional, one contact object per line
//
//   {"type":"profile","handle":"...","screen_name":"...","location":"...",
//    "description":"...","profile_image_url":"...","home_countries":["US"]}
//   {"type":"post","id":"...","text":"...","timestamp":"2014-06-06T10:00:00Z"}
//   {"handle":"...","screen_name":"...","location":"...","description":"...",
//    "profile_image_url":"...","reciprocal":true,"country":"HR",
//    "posts":[{"id":"...","text":"...","timestamp":"..."}]}

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bridgekit/types.hpp"

namespace bridgekit {

using Timestamp = std::chrono::sys_seconds;

/// Parses "YYYY-MM-DDTHH:MM:SSZ" (a "+00:00" suffix is also accepted).
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

struct UserProfile {
  std::string handle;
  std::string screen_name;
  std::string location;
  std::string description;
  std::string profile_image_url;
};

struct Post {
  std::string id;
  std::string author_handle;
  std::string text;
  Timestamp timestamp{};
};

struct Contact {
  UserProfile profile;
  std::vector<Post> posts;  // only filled for reciprocal contacts
  bool is_reciprocal = false;
  std::optional<CountryCode> resolved_country;
};

struct UserRecord {
  UserProfile profile;
  std::vector<Post> posts;
  std::vector<Contact> contacts;
  std::set<CountryCode> home_countries;
};

struct LoadOptions {
  std::size_t post_cap = 3200;
  std::size_t contact_cap = 5000;
};

/// Loads `<dir>/user.jsonl` and, when present, `<dir>/contacts.jsonl`.
/// Posts beyond `post_cap` are truncated to the newest by timestamp (disk
/// order is kept among the survivors); contacts beyond `contact_cap` are
/// truncated in disk order. Both truncations add a warning. Malformed lines,
/// empty post text, duplicate post ids and duplicate contact handles throw
/// DataError.
UserRecord load_user_record(const std::filesystem::path& dir, const LoadOptions& options = {},
                            Warnings* warnings = nullptr);

UserRecord parse_user_record(std::istream& user_jsonl, std::istream* contacts_jsonl,
                             const LoadOptions& options, Warnings* warnings,
                             const std::string& source_name = "user.jsonl",
                             const std::string& contacts_source_name = "contacts.jsonl");

/// Canonical serialization; load(write(r)) == r for any loaded record.
std::string user_jsonl(const UserRecord& record);
std::string contacts_jsonl(const UserRecord& record);
void write_user_record(const UserRecord& record, const std::filesystem::path& dir);

enum class LabelSubject { interest, fact };

/// One labeled pair. For interest labels key1 is the user handle and key2 the
/// normalized interest; for fact labels key1 is the normalized interest and
/// key2 the fact id (the bridge's source_ref). An empty fact key1 matches bridges
/// that carry no interest.
struct AnnotationLabel {
  LabelSubject subject = LabelSubject::interest;
  std::string key1;
  std::string key2;
  std::vector<bool> verdicts;

  /// Strictly more true than false verdicts; ties are false.
  bool majority() const;
};

/// `subject_type<TAB>key1<TAB>key2<TAB>verdicts` with verdicts a comma list of
/// y/n (yes/no also accepted). Blank and '#' lines are skipped.
std::vector<AnnotationLabel> load_labels(const std::filesystem::path& path);
std::vector<AnnotationLabel> parse_labels(std::istream& in, const std::string& source_name);

inline constexpr int kMinScore = 0;
inline constexpr int kMaxScore = 10;

struct SurveyResponse {
  std::string user_handle;
  CountryCode country;
  int initial_interest = 0;
  int closeness = 0;
  std::map<BridgeKind, int> per_bridge;  // interest increase per rated kind
  std::set<BridgeKind> glitch;
  std::string comment;
};

/// CSV with header `user,country,initial,closeness,<kind>_increase...,glitch,comment`.
/// Empty increase cells mean "not rated"; the glitch cell lists kinds
/// separated by ';'. Scores outside 0-10 throw DataError naming the row.
std::vector<SurveyResponse> load_survey_responses(const std::filesystem::path& path);
std::vector<SurveyResponse> parse_survey_responses(std::string_view csv_text,
                                                   const std::string& source_name);

}  // namespace bridgekit
