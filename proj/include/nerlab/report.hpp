#pragma once

// JSON and plain-text renderings of library results, shared by the command
// line tool and the Python module.

#include <string>
#include <vector>

#include "json.hpp"
#include "nerlab/evaluate.hpp"
#include "nerlab/linker.hpp"
#include "nerlab/normalize.hpp"
#include "nerlab/stats.hpp"

namespace nerlab::report {

using Json = nlohmann::ordered_json;

/// Percentages are rounded half-up to one decimal in every rendering.
Json to_json(const eval::Score& s);
Json to_json(const eval::MetricReport& r);
Json to_json(const eval::AgreementSummary& s);
Json to_json(const eval::CorefReport& r);
Json to_json(const std::vector<norm::MentionGroup>& groups);
Json to_json(const stats::CorpusStats& s);
Json to_json(const stats::CooccurrenceMatrix& m);
Json to_json(const std::map<std::string, stats::TonalityCounts>& t);

std::string to_text(const eval::MetricReport& r);
std::string to_text(const eval::CorefReport& r);
std::string to_text(const stats::CorpusStats& s);
std::string to_text(const stats::CooccurrenceMatrix& m);
std::string to_text(const std::map<std::string, stats::TonalityCounts>& t);

std::string to_csv(const eval::MetricReport& r);
std::string to_csv(const eval::CorefReport& r);
std::string to_csv(const stats::CooccurrenceMatrix& m);

/// "name<TAB>size<TAB>member|member<TAB>scheme:code;..." (or "concept_less").
std::string groups_tsv(const std::vector<norm::MentionGroup>& groups);

/// "word<TAB>code<TAB>score<TAB>method", score with six decimals.
std::string links_tsv(const std::vector<link::WordLink>& links);

/// Fixed one-decimal (or `decimals`) rendering after half-up rounding.
std::string fixed(double value, int decimals = 1);

}  // namespace nerlab::report
