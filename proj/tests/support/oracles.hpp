#pragma once

// Brute-force reference implementations used to check the library. They are
// written against strings and plain loops and share no code with core/.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bridgekit::oracle {

using Stream = std::vector<std::string>;

inline std::string join(const Stream& s, std::size_t from, std::size_t n) {
  std::string out;
  for (std::size_t k = 0; k < n; ++k) {
    if (k) out += ' ';
    out += s[from + k];
  }
  return out;
}

inline std::size_t words(const std::string& key) {
  return static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
}

inline bool key_contains(const std::string& outer, const std::string& inner) {
  return (" " + outer + " ").find(" " + inner + " ") != std::string::npos;
}

// Counts every 1/2/3-token window of every stream, then subtracts: bigrams
// lose the counts of trigram keys containing them, unigrams lose the
// (already reduced) counts of bigram keys containing them. Keys are the
// space-joined tokens.
inline std::map<std::string, long long> merged_counts(const std::vector<Stream>& docs) {
  std::map<std::string, long long> raw;
  for (const auto& d : docs) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (std::size_t i = 0; i + n <= d.size(); ++i) ++raw[join(d, i, n)];
    }
  }
  std::map<std::string, long long> out;
  for (const auto& [k, v] : raw) {
    if (words(k) == 3) out[k] = v;
  }
  for (const auto& [k, v] : raw) {
    if (words(k) != 2) continue;
    long long c = v;
    for (const auto& [t, tv] : raw) {
      if (words(t) == 3 && key_contains(t, k)) c -= tv;
    }
    out[k] = std::max(0LL, c);
  }
  for (const auto& [k, v] : raw) {
    if (words(k) != 1) continue;
    long long c = v;
    for (const auto& [b, bv] : out) {
      if (words(b) == 2 && key_contains(b, k)) c -= bv;
    }
    out[k] = std::max(0LL, c);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second <= 0; });
  return out;
}

// Closed-form search score for indicator bits and rank.
inline double score(int tc, int ti, int dc, int di, int rank) {
  return 30.0 * (tc + ti) + 20.0 * (dc + di) - rank / 10.0;
}

struct SnippetHit {
  std::size_t unit = 0;
  std::size_t offset = 0;
};

// Linear scan over already-normalized units using padded substring search.
inline std::optional<SnippetHit> earliest(const std::vector<std::string>& normalized_units,
                                          const std::string& phrase) {
  std::optional<SnippetHit> best;
  for (std::size_t u = 0; u < normalized_units.size(); ++u) {
    const std::string padded = " " + normalized_units[u] + " ";
    const auto pos = padded.find(" " + phrase + " ");
    if (pos == std::string::npos) continue;
    const SnippetHit hit{u, pos};
    if (!best || std::tie(hit.unit, hit.offset) < std::tie(best->unit, best->offset)) best = hit;
  }
  return best;
}

// Pearson r as covariance over the product of standard deviations (n-1 form).
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double cov = 0, vx = 0, vy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cov += (x[i] - mx) * (y[i] - my) / (n - 1);
    vx += (x[i] - mx) * (x[i] - mx) / (n - 1);
    vy += (y[i] - my) * (y[i] - my) / (n - 1);
  }
  return cov / (std::sqrt(vx) * std::sqrt(vy));
}

}  // namespace bridgekit::oracle
