#include "bridgekit/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "bridgekit/io.hpp"
#include "bridgekit/text_pipeline.hpp"

namespace bridgekit {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Timestamps

namespace {

bool parse_fixed(std::string_view s, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  // 2014-06-06T10:00:00Z
  if (text.size() < 20) return std::nullopt;
  int y, mo, d, h, mi, s;
  if (!parse_fixed(text, 0, 4, y) || text[4] != '-' || !parse_fixed(text, 5, 2, mo) ||
      text[7] != '-' || !parse_fixed(text, 8, 2, d) || text[10] != 'T' ||
      !parse_fixed(text, 11, 2, h) || text[13] != ':' || !parse_fixed(text, 14, 2, mi) ||
      text[16] != ':' || !parse_fixed(text, 17, 2, s)) {
    return std::nullopt;
  }
  const std::string_view zone = text.substr(19);
  if (zone != "Z" && zone != "+00:00") return std::nullopt;
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(mo)},
                                        std::chrono::day{unsigned(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) return std::nullopt;
  return Timestamp{std::chrono::sys_days{ymd}} + std::chrono::hours{h} +
         std::chrono::minutes{mi} + std::chrono::seconds{s};
}

std::string format_timestamp(Timestamp ts) {
  const auto days = std::chrono::floor<std::chrono::days>(ts);
  const std::chrono::year_month_day ymd{days};
  const std::chrono::hh_mm_ss hms{ts - days};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), int(hms.hours().count()),
                int(hms.minutes().count()), int(hms.seconds().count()));
  return buf;
}

// ---------------------------------------------------------------------------
// User records

namespace {

UserProfile parse_profile(const json& obj, const std::string& src, std::size_t line) {
  UserProfile p;
  p.handle = json_string(obj, "handle", src, line);
  if (p.handle.empty()) throw DataError(src, line, "handle", "must not be empty");
  p.screen_name = json_string_or(obj, "screen_name", "", src, line);
  p.location = json_string_or(obj, "location", "", src, line);
  p.description = json_string_or(obj, "description", "", src, line);
  p.profile_image_url = json_string_or(obj, "profile_image_url", "", src, line);
  return p;
}

Post parse_post(const json& obj, const std::string& author, const std::string& src,
                std::size_t line) {
  Post p;
  p.id = json_string(obj, "id", src, line);
  if (p.id.empty()) throw DataError(src, line, "id", "must not be empty");
  p.author_handle = json_string_or(obj, "author", author, src, line);
  if (p.author_handle != author) {
    throw DataError(src, line, "author", "does not match profile handle '" + author + "'");
  }
  p.text = json_string(obj, "text", src, line);
  if (p.text.empty()) throw DataError(src, line, "text", "must not be empty");
  const std::string ts = json_string(obj, "timestamp", src, line);
  auto parsed = parse_timestamp(ts);
  if (!parsed) throw DataError(src, line, "timestamp", "expected YYYY-MM-DDTHH:MM:SSZ");
  p.timestamp = *parsed;
  return p;
}

// Keeps the newest `cap` posts, preserving their original order.
std::vector<Post> keep_newest(std::vector<Post> posts, std::size_t cap) {
  if (posts.size() <= cap) return posts;
  std::vector<std::size_t> idx(posts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return posts[a].timestamp > posts[b].timestamp;
  });
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  std::vector<Post> out;
  out.reserve(cap);
  for (std::size_t i : idx) out.push_back(std::move(posts[i]));
  return out;
}

void check_unique_ids(const std::vector<std::pair<std::size_t, const Post*>>& posts,
                      const std::string& src) {
  std::unordered_set<std::string> seen;
  for (const auto& [line, post] : posts) {
    if (!seen.insert(post->id).second) {
      throw DataError(src, line, "id", "duplicate post id '" + post->id + "'");
    }
  }
}

std::vector<Post> parse_post_array(const json& arr, const std::string& author,
                                   const std::string& src, std::size_t line) {
  if (!arr.is_array()) throw DataError(src, line, "posts", "expected an array");
  std::vector<Post> posts;
  std::unordered_set<std::string> seen;
  for (const auto& item : arr) {
    if (!item.is_object()) throw DataError(src, line, "posts", "expected objects");
    Post p = parse_post(item, author, src, line);
    if (!seen.insert(p.id).second) {
      throw DataError(src, line, "posts", "duplicate post id '" + p.id + "'");
    }
    posts.push_back(std::move(p));
  }
  return posts;
}

}  // namespace

UserRecord parse_user_record(std::istream& user_in, std::istream* contacts_in,
                             const LoadOptions& options, Warnings* warnings,
                             const std::string& source_name,
                             const std::string& contacts_source_name) {
  UserRecord rec;
  bool have_profile = false;
  std::vector<std::pair<std::size_t, Post>> posts;

  for_each_jsonl(user_in, source_name, [&](const json& obj, std::size_t line) {
    const std::string type = json_string(obj, "type", source_name, line);
    if (type == "profile") {
      if (have_profile) throw DataError(source_name, line, "type", "second profile line");
      rec.profile = parse_profile(obj, source_name, line);
      if (auto it = obj.find("home_countries"); it != obj.end()) {
        if (!it->is_array()) {
          throw DataError(source_name, line, "home_countries", "expected an array");
        }
        for (const auto& c : *it) {
          if (!c.is_string() || !CountryCode::is_valid(c.get<std::string>())) {
            throw DataError(source_name, line, "home_countries", "expected ISO alpha-2 codes");
          }
          rec.home_countries.emplace(c.get<std::string>());
        }
      }
      have_profile = true;
    } else if (type == "post") {
      if (!have_profile) throw DataError(source_name, line, "type", "post before profile line");
      posts.emplace_back(line, parse_post(obj, rec.profile.handle, source_name, line));
    } else {
      throw DataError(source_name, line, "type", "unknown record type '" + type + "'");
    }
  });
  if (!have_profile) throw DataError(source_name, 0, "", "missing profile line");

  {
    std::vector<std::pair<std::size_t, const Post*>> view;
    for (const auto& [line, p] : posts) view.emplace_back(line, &p);
    check_unique_ids(view, source_name);
  }
  rec.posts.reserve(posts.size());
  for (auto& [line, p] : posts) rec.posts.push_back(std::move(p));
  if (rec.posts.size() > options.post_cap) {
    if (warnings) {
      warnings->push_back({"post_cap", rec.profile.handle, "",
                           "kept newest " + std::to_string(options.post_cap) + " of " +
                               std::to_string(rec.posts.size()) + " posts"});
    }
    rec.posts = keep_newest(std::move(rec.posts), options.post_cap);
  }

  if (contacts_in) {
    const std::string& csrc = contacts_source_name;
    std::unordered_set<std::string> handles{rec.profile.handle};
    for_each_jsonl(*contacts_in, csrc, [&](const json& obj, std::size_t line) {
      Contact c;
      c.profile = parse_profile(obj, csrc, line);
      if (!handles.insert(c.profile.handle).second) {
        throw DataError(csrc, line, "handle", "duplicate handle '" + c.profile.handle + "'");
      }
      if (auto it = obj.find("reciprocal"); it != obj.end()) {
        if (!it->is_boolean()) throw DataError(csrc, line, "reciprocal", "expected a boolean");
        c.is_reciprocal = it->get<bool>();
      }
      if (auto it = obj.find("country"); it != obj.end() && !it->is_null()) {
        if (!it->is_string() || !CountryCode::is_valid(it->get<std::string>())) {
          throw DataError(csrc, line, "country", "expected an ISO alpha-2 code");
        }
        c.resolved_country = CountryCode(it->get<std::string>());
      }
      if (auto it = obj.find("posts"); it != obj.end()) {
        c.posts = parse_post_array(*it, c.profile.handle, csrc, line);
        if (!c.posts.empty() && !c.is_reciprocal) {
          throw DataError(csrc, line, "posts", "only reciprocal contacts may carry posts");
        }
        if (c.posts.size() > options.post_cap) {
          if (warnings) {
            warnings->push_back({"post_cap", rec.profile.handle, "",
                                 "contact " + c.profile.handle + ": kept newest " +
                                     std::to_string(options.post_cap) + " posts"});
          }
          c.posts = keep_newest(std::move(c.posts), options.post_cap);
        }
      }
      rec.contacts.push_back(std::move(c));
    });
    if (rec.contacts.size() > options.contact_cap) {
      if (warnings) {
        warnings->push_back({"contact_cap", rec.profile.handle, "",
                             "kept first " + std::to_string(options.contact_cap) + " of " +
                                 std::to_string(rec.contacts.size()) + " contacts"});
      }
      rec.contacts.resize(options.contact_cap);
    }
  }
  return rec;
}

UserRecord load_user_record(const fs::path& dir, const LoadOptions& options, Warnings* warnings) {
  const fs::path user_path = dir / "user.jsonl";
  std::ifstream user_in(user_path);
  if (!user_in) throw DataError(user_path.string(), 0, "", "cannot open file");
  const fs::path contacts_path = dir / "contacts.jsonl";
  std::ifstream contacts_in;
  if (fs::exists(contacts_path)) {
    contacts_in.open(contacts_path);
    if (!contacts_in) throw DataError(contacts_path.string(), 0, "", "cannot open file");
  }
  return parse_user_record(user_in, contacts_in.is_open() ? &contacts_in : nullptr, options,
                           warnings, user_path.string(), contacts_path.string());
}

namespace {

OrderedJson profile_json(const UserProfile& p) {
  OrderedJson o;
  o["handle"] = p.handle;
  o["screen_name"] = p.screen_name;
  o["location"] = p.location;
  o["description"] = p.description;
  o["profile_image_url"] = p.profile_image_url;
  return o;
}

OrderedJson post_json(const Post& p) {
  OrderedJson o;
  o["id"] = p.id;
  o["text"] = p.text;
  o["timestamp"] = format_timestamp(p.timestamp);
  return o;
}

}  // namespace

std::string user_jsonl(const UserRecord& record) {
  OrderedJson head;
  head["type"] = "profile";
  const OrderedJson profile = profile_json(record.profile);
  for (auto& [k, v] : profile.items()) head[k] = v;
  head["home_countries"] = OrderedJson::array();
  for (const auto& c : record.home_countries) head["home_countries"].push_back(c.str());
  std::string out = head.dump() + "\n";
  for (const auto& p : record.posts) {
    OrderedJson o;
    o["type"] = "post";
    const OrderedJson post = post_json(p);
    for (auto& [k, v] : post.items()) o[k] = v;
    out += o.dump() + "\n";
  }
  return out;
}

std::string contacts_jsonl(const UserRecord& record) {
  std::string out;
  for (const auto& c : record.contacts) {
    OrderedJson o = profile_json(c.profile);
    o["reciprocal"] = c.is_reciprocal;
    if (c.resolved_country) o["country"] = c.resolved_country->str();
    o["posts"] = OrderedJson::array();
    for (const auto& p : c.posts) o["posts"].push_back(post_json(p));
    out += o.dump() + "\n";
  }
  return out;
}

void write_user_record(const UserRecord& record, const fs::path& dir) {
  write_file_atomic(dir / "user.jsonl", user_jsonl(record));
  write_file_atomic(dir / "contacts.jsonl", contacts_jsonl(record));
}

// ---------------------------------------------------------------------------
// Labels

bool AnnotationLabel::majority() const {
  const auto yes = std::count(verdicts.begin(), verdicts.end(), true);
  return 2 * static_cast<std::size_t>(yes) > verdicts.size();
}

std::vector<AnnotationLabel> parse_labels(std::istream& in, const std::string& source_name) {
  std::vector<AnnotationLabel> labels;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[0] == '#') continue;
    auto f = split(line, '\t');
    if (f.size() != 4) throw DataError(source_name, row, "", "expected 4 tab-separated fields");
    AnnotationLabel label;
    if (f[0] == "interest") {
      label.subject = LabelSubject::interest;
      label.key1 = f[1];
      label.key2 = normalize_text(f[2]);
    } else if (f[0] == "fact") {
      label.subject = LabelSubject::fact;
      label.key1 = normalize_text(f[1]);
      label.key2 = f[2];
    } else {
      throw DataError(source_name, row, "subject_type", "expected 'interest' or 'fact'");
    }
    // An empty interest key on a fact label targets bridges without an interest.
    if ((label.subject == LabelSubject::interest && label.key1.empty()) || label.key2.empty()) {
      throw DataError(source_name, row, "key", "keys must not be empty");
    }
    for (auto v : split(f[3], ',')) {
      std::transform(v.begin(), v.end(), v.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (v == "y" || v == "yes") {
        label.verdicts.push_back(true);
      } else if (v == "n" || v == "no") {
        label.verdicts.push_back(false);
      } else {
        throw DataError(source_name, row, "verdicts", "expected y/n values, got '" + v + "'");
      }
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::vector<AnnotationLabel> load_labels(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(path.string(), 0, "", "cannot open file");
  return parse_labels(in, path.string());
}

// ---------------------------------------------------------------------------
// Survey responses

namespace {

int parse_score(const std::string& cell, const std::string& src, std::size_t row,
                const std::string& column) {
  if (cell.empty() || cell.size() > 3 ||
      !std::all_of(cell.begin(), cell.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw DataError(src, row, column, "expected an integer score, got '" + cell + "'");
  }
  const int v = std::stoi(cell);
  if (v < kMinScore || v > kMaxScore) {
    throw DataError(src, row, column, "score " + cell + " outside 0-10");
  }
  return v;
}

}  // namespace

std::vector<SurveyResponse> parse_survey_responses(std::string_view csv_text,
                                                   const std::string& source_name) {
  std::vector<CsvRow> rows;
  try {
    rows = parse_csv(csv_text);
  } catch (const DataError& e) {
    throw DataError(source_name, e.line(), "", "malformed CSV");
  }
  if (rows.empty()) throw DataError(source_name, 1, "", "missing header");
  const auto& header = rows.front().fields;

  int col_user = -1, col_country = -1, col_initial = -1, col_close = -1, col_glitch = -1,
      col_comment = -1;
  std::vector<std::pair<int, BridgeKind>> kind_cols;
  for (int i = 0; i < static_cast<int>(header.size()); ++i) {
    const std::string& h = header[static_cast<std::size_t>(i)];
    if (h == "user") col_user = i;
    else if (h == "country") col_country = i;
    else if (h == "initial") col_initial = i;
    else if (h == "closeness") col_close = i;
    else if (h == "glitch") col_glitch = i;
    else if (h == "comment") col_comment = i;
    else if (h.size() > 9 && h.ends_with("_increase")) {
      auto kind = parse_bridge_kind(h.substr(0, h.size() - 9));
      if (!kind) throw DataError(source_name, 1, h, "unknown bridge kind column");
      kind_cols.emplace_back(i, *kind);
    } else {
      throw DataError(source_name, 1, h, "unknown column");
    }
  }
  for (auto [col, name] : {std::pair{col_user, "user"}, {col_country, "country"},
                           {col_initial, "initial"}, {col_close, "closeness"},
                           {col_glitch, "glitch"}, {col_comment, "comment"}}) {
    if (col < 0) throw DataError(source_name, 1, name, "missing column");
  }

  std::vector<SurveyResponse> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != header.size()) {
      throw DataError(source_name, row.line, "", "expected " + std::to_string(header.size()) +
                                                     " fields, got " +
                                                     std::to_string(row.fields.size()));
    }
    auto cell = [&](int c) -> const std::string& { return row.fields[static_cast<std::size_t>(c)]; };
    SurveyResponse resp;
    resp.user_handle = cell(col_user);
    if (resp.user_handle.empty()) throw DataError(source_name, row.line, "user", "empty");
    if (!CountryCode::is_valid(cell(col_country))) {
      throw DataError(source_name, row.line, "country", "expected an ISO alpha-2 code");
    }
    resp.country = CountryCode(cell(col_country));
    resp.initial_interest = parse_score(cell(col_initial), source_name, row.line, "initial");
    resp.closeness = parse_score(cell(col_close), source_name, row.line, "closeness");
    for (auto [col, kind] : kind_cols) {
      if (cell(col).empty()) continue;
      resp.per_bridge[kind] =
          parse_score(cell(col), source_name, row.line, header[static_cast<std::size_t>(col)]);
    }
    if (!cell(col_glitch).empty()) {
      for (const auto& name : split(cell(col_glitch), ';')) {
        if (name.empty()) continue;
        auto kind = parse_bridge_kind(name);
        if (!kind) throw DataError(source_name, row.line, "glitch", "unknown kind '" + name + "'");
        resp.glitch.insert(*kind);
      }
    }
    resp.comment = cell(col_comment);
    out.push_back(std::move(resp));
  }
  return out;
}

std::vector<SurveyResponse> load_survey_responses(const fs::path& path) {
  return parse_survey_responses(read_file(path), path.string());
}

}  // namespace bridgekit
