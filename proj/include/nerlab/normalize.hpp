#pragma once

// Surface-form grouping of mentions (gestalt pattern matching) and
// application of a name -> code table to the resulting groups.

#include <string>
#include <string_view>
#include <vector>

#include "nerlab/core.hpp"
#include "nerlab/formats.hpp"

namespace nerlab::norm {

/// Ratcliff/Obershelp similarity 2M/(|a|+|b|) on lowercased code points.
/// The lexicographically smaller string is scanned first, which makes the
/// result symmetric. Two empty strings score 1.
double ratcliff_similarity(std::string_view a, std::string_view b);

/// Matched-character count M for already lowercased/ordered inputs: longest
/// common block (earliest in `a`, then earliest in `b`), recursively on both sides.
std::size_t matching_characters(std::u32string_view a, std::u32string_view b);

struct MentionGroup {
  std::string name;
  /// Member surfaces in arrival order (a multiset).
  std::vector<std::string> members;
  std::vector<Code> codes;
  bool concept_less = false;
};

struct GroupingOptions {
  double threshold = 0.8;
};

/// Single pass in input order. A surface joins the group with the highest
/// mean similarity strictly above the threshold (oldest group on ties);
/// otherwise it founds a new group. With threshold < 1 an exact duplicate
/// (after lowercasing) of an earlier surface joins that surface's group.
std::vector<MentionGroup> group_mentions(const std::vector<std::string>& surfaces, GroupingOptions opts = {});

/// Same pass, but similarity is computed on `keys` (e.g. joined lemmas)
/// while groups collect and are named after the surfaces.
std::vector<MentionGroup> group_mentions_by_key(const std::vector<std::string>& surfaces,
                                               const std::vector<std::string>& keys, GroupingOptions opts = {});

/// Most frequent member; ties go to the lexicographically smallest.
std::string group_name(const std::vector<std::string>& members);

/// Attaches every code listed for a group's (lowercased) name; groups without
/// an entry are flagged concept_less.
std::vector<MentionGroup> assign_codes(std::vector<MentionGroup> groups, const CodeMapping& mapping);

}  // namespace nerlab::norm
