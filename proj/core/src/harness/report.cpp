#include <cstdio>
#include <string>

#include "patchcp/harness.hpp"

namespace patchcp::harness {

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::vector<std::string> fields(const MetricsRow& r) {
  return {r.policy, r.transforms, r.eval, fixed2(r.area_mean), fixed2(r.streak_mean), fixed2(r.time_ms_mean),
          fixed2(r.alts_mean)};
}

const std::vector<std::string> kColumns{"policy", "transforms", "eval", "area_mean", "streak_mean", "time_ms_mean",
                                        "alts_mean"};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

}  // namespace

std::string write_csv(const std::vector<MetricsRow>& rows) {
  std::string out = join(kColumns, ",") + "\n";
  for (const auto& r : rows) out += join(fields(r), ",") + "\n";
  return out;
}

std::string write_markdown(const std::vector<MetricsRow>& rows) {
  std::string out = "| " + join(kColumns, " | ") + " |\n|";
  for (std::size_t i = 0; i < kColumns.size(); ++i) out += i < 3 ? "---|" : "---:|";
  out += "\n";
  for (const auto& r : rows) out += "| " + join(fields(r), " | ") + " |\n";
  return out;
}

std::string write_selfplay(const game::SelfplayStats& s) {
  std::string out = "games,mean_branching,mean_plies_p1,mean_plies_p2,wins_p1,wins_p2,draws\n";
  out += std::to_string(s.games) + "," + fixed2(s.mean_branching) + "," + fixed2(s.mean_plies_p1) + "," +
         fixed2(s.mean_plies_p2) + "," + std::to_string(s.wins_p1) + "," + std::to_string(s.wins_p2) + "," +
         std::to_string(s.draws) + "\n";
  return out;
}

}  // namespace patchcp::harness
