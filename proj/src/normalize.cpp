#include "nerlab/normalize.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "nerlab/error.hpp"
#include "nerlab/text.hpp"

namespace nerlab::norm {

namespace {

struct Block {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;
};

// Longest common substring via row DP; strict '>' keeps the earliest start in
// `a`, then in `b`.
Block longest_block(std::u32string_view a, std::u32string_view b) {
  Block best;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
    }
    // A block ending at row i starts at i - len; scan for the best start order.
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t len = cur[j];
      if (len == 0) continue;
      const std::size_t sa = i - len;
      const std::size_t sb = j - len;
      if (len > best.size || (len == best.size && (sa < best.a || (sa == best.a && sb < best.b))))
        best = {sa, sb, len};
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

std::size_t matching_characters(std::u32string_view a, std::u32string_view b) {
  if (a.empty() || b.empty()) return 0;
  const Block k = longest_block(a, b);
  if (k.size == 0) return 0;
  return k.size + matching_characters(a.substr(0, k.a), b.substr(0, k.b)) +
         matching_characters(a.substr(k.a + k.size), b.substr(k.b + k.size));
}

double ratcliff_similarity(std::string_view a, std::string_view b) {
  std::u32string x = text::decode(text::to_lower(a));
  std::u32string y = text::decode(text::to_lower(b));
  if (x.empty() && y.empty()) return 1.0;
  if (y < x) std::swap(x, y);
  return 2.0 * static_cast<double>(matching_characters(x, y)) / static_cast<double>(x.size() + y.size());
}

std::string group_name(const std::vector<std::string>& members) {
  std::map<std::string, std::size_t> freq;
  for (const auto& m : members) ++freq[m];
  std::string best;
  std::size_t best_n = 0;
  for (const auto& [s, n] : freq) {
    if (n > best_n) {
      best = s;
      best_n = n;
    }
  }
  return best;
}

std::vector<MentionGroup> group_mentions_by_key(const std::vector<std::string>& surfaces,
                                               const std::vector<std::string>& keys, GroupingOptions opts) {
  if (!(opts.threshold > 0)) throw ConfigError("grouping threshold must be positive");
  if (keys.size() != surfaces.size()) throw ConfigError("one comparison key is needed per surface");
  std::vector<MentionGroup> groups;
  std::vector<std::vector<std::string>> group_keys;
  std::unordered_map<std::string, std::size_t> seen;  // lowercased key -> group
  for (std::size_t i = 0; i < surfaces.size(); ++i) {
    const std::string& k = keys[i];
    const std::string lowered = text::to_lower(k);
    std::size_t target = groups.size();
    if (auto it = seen.find(lowered); it != seen.end() && opts.threshold < 1.0) {
      target = it->second;
    } else {
      double best = opts.threshold;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        double sum = 0;
        for (const auto& m : group_keys[g]) sum += ratcliff_similarity(k, m);
        const double mean = sum / static_cast<double>(group_keys[g].size());
        if (mean > best) {
          best = mean;
          target = g;
        }
      }
    }
    if (target == groups.size()) {
      groups.emplace_back();
      group_keys.emplace_back();
    }
    groups[target].members.push_back(surfaces[i]);
    group_keys[target].push_back(k);
    seen.emplace(lowered, target);
  }
  for (auto& g : groups) g.name = group_name(g.members);
  return groups;
}

std::vector<MentionGroup> group_mentions(const std::vector<std::string>& surfaces, GroupingOptions opts) {
  return group_mentions_by_key(surfaces, surfaces, opts);
}

std::vector<MentionGroup> assign_codes(std::vector<MentionGroup> groups, const CodeMapping& mapping) {
  for (auto& g : groups) {
    auto it = mapping.codes.find(text::to_lower(g.name));
    if (it == mapping.codes.end() || it->second.empty()) {
      g.codes.clear();
      g.concept_less = true;
    } else {
      g.codes = it->second;
      g.concept_less = false;
    }
  }
  return groups;
}

}  // namespace nerlab::norm
