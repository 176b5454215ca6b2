#ifndef F2LIN_REPORT_HPP
#define F2LIN_REPORT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "f2lin/birthday.hpp"
#include "f2lin/lattice.hpp"
#include "f2lin/merit.hpp"

// Report bodies are deterministic: identical configs yield byte-identical
// text. Anything wall-clock related is appended outside the body.

namespace f2lin {

enum class ReportFormat { tsv, json };
ReportFormat parse_format(const std::string& name);

// Ordered key/value pairs echoed into every report header.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

struct AnalyzeResult {
  std::string generator;
  int v_max = 0;
  int p = 0;
  std::vector<std::vector<int>> minima;  // index v-1
  std::vector<int> k;                    // index v-1
  std::vector<int> d;
  std::vector<std::optional<MeritReport>> merit;  // empty when skipped
  long long delta = 0;
  bool delta_complete = false;
};

std::string render_analyze(const AnalyzeResult& r, ReportFormat fmt,
                           const ConfigEcho& config);
std::string render_merit(const MeritReport& r, ReportFormat fmt,
                         const ConfigEcho& config);
std::string render_relations(const std::string& generator, int v,
                             uint64_t min_weight,
                             const std::vector<LinearRelation>& relations,
                             const ConfigEcho& config);
std::string render_birthday(const BirthdayReport& r, ReportFormat fmt,
                            const ConfigEcho& config, bool include_seconds);

}  // namespace f2lin

#endif
