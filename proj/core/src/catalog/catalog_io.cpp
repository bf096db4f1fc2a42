#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "patchcp/catalog.hpp"

namespace patchcp::catalog {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  for (auto w : split(s, ' '))
    if (!w.empty()) out.push_back(w);
  return out;
}

int to_int(std::string_view s, int line, std::string_view key) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, "invalid integer for '" + std::string(key) + "': '" + std::string(s) + "'");
  return v;
}

std::vector<int> int_list(std::string_view s, int line, std::string_view key) {
  std::vector<int> out;
  for (auto part : split(s, ',')) out.push_back(to_int(part, line, key));
  return out;
}

std::map<std::string, std::string_view> attributes(const std::vector<std::string_view>& ws, int line) {
  std::map<std::string, std::string_view> out;
  for (std::size_t i = 1; i < ws.size(); ++i) {
    auto eq = ws[i].find('=');
    if (eq == std::string_view::npos || eq == 0) throw ParseError(line, "malformed attribute '" + std::string(ws[i]) + "'");
    std::string key(ws[i].substr(0, eq));
    if (!out.emplace(key, ws[i].substr(eq + 1)).second) throw ParseError(line, "repeated attribute '" + key + "'");
  }
  return out;
}

void check_keys(const std::map<std::string, std::string_view>& attrs, const std::set<std::string>& allowed, int line) {
  for (const auto& [k, v] : attrs)
    if (!allowed.count(k)) throw ParseError(line, "unknown attribute '" + k + "'");
}

void validate(const Patch& p, int line) {
  if (p.special) {
    if (p.size() != 1 || p.cost != 0 || p.time != 0 || p.income != 0)
      throw ParseError(line, "special patch must be a 1x1 with cost, time and income 0");
    return;
  }
  if (p.cost < 0 || p.cost > 10) throw ParseError(line, "cost must be in 0..10");
  if (p.time < 1 || p.time > 6) throw ParseError(line, "time must be in 1..6");
  if (p.income < 0 || p.income > 3) throw ParseError(line, "income must be in 0..3");
}

}  // namespace

PatchFile parse_patches(std::string_view text) {
  PatchFile out;
  std::set<int> ids;
  bool track_seen = false;

  struct Pending {
    Patch patch;
    int line = 0;
    std::vector<std::string> rows;
  };
  std::optional<Pending> pending;

  auto finish = [&]() {
    if (!pending) return;
    if (pending->rows.empty()) throw ParseError(pending->line, "patch has no shape rows");
    try {
      pending->patch.shape = Shape::from_rows(pending->rows);
    } catch (const std::invalid_argument& e) {
      throw ParseError(pending->line, e.what());
    }
    validate(pending->patch, pending->line);
    out.patches.push_back(std::move(pending->patch));
    pending.reset();
  };

  auto lines = split(text, '\n');
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int line = static_cast<int>(i) + 1;
    std::string_view l = lines[i];
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);

    if (pending && !l.empty() && (l.front() == '#' || l.front() == '.')) {
      if (l.find_first_not_of("#.") != std::string_view::npos)
        throw ParseError(line, "shape rows may only contain '#' and '.'");
      if (!pending->rows.empty() && pending->rows.front().size() != l.size())
        throw ParseError(line, "shape rows must all have the same width");
      pending->rows.emplace_back(l);
      continue;
    }
    if (l.find_first_not_of(' ') == std::string_view::npos) {
      finish();
      continue;
    }
    if (l.front() == '#') continue;
    if (pending) throw ParseError(line, "expected a shape row or a blank line");

    auto ws = words(l);
    auto attrs = attributes(ws, line);
    if (ws[0] == "track") {
      if (track_seen) throw ParseError(line, "repeated track line");
      track_seen = true;
      check_keys(attrs, {"income", "specials"}, line);
      if (auto it = attrs.find("income"); it != attrs.end()) out.track.income_positions = int_list(it->second, line, "income");
      if (auto it = attrs.find("specials"); it != attrs.end())
        out.track.special_positions = int_list(it->second, line, "specials");
      continue;
    }
    if (ws[0] != "patch") throw ParseError(line, "expected 'patch' or 'track', got '" + std::string(ws[0]) + "'");
    check_keys(attrs, {"id", "cost", "time", "income", "special"}, line);
    for (const char* key : {"id", "cost", "time", "income"})
      if (!attrs.count(key)) throw ParseError(line, std::string("missing attribute '") + key + "'");
    Pending p;
    p.line = line;
    p.patch.id = to_int(attrs["id"], line, "id");
    p.patch.cost = to_int(attrs["cost"], line, "cost");
    p.patch.time = to_int(attrs["time"], line, "time");
    p.patch.income = to_int(attrs["income"], line, "income");
    if (auto it = attrs.find("special"); it != attrs.end()) {
      const int sp = to_int(it->second, line, "special");
      if (sp != 0 && sp != 1) throw ParseError(line, "special must be 0 or 1");
      p.patch.special = sp == 1;
    }
    if (p.patch.id < 0) throw ParseError(line, "id must be non-negative");
    if (!ids.insert(p.patch.id).second) throw ParseError(line, "duplicate id " + std::to_string(p.patch.id));
    pending = std::move(p);
  }
  finish();
  return out;
}

Catalog parse_catalog(std::string_view text) {
  PatchFile file = parse_patches(text);
  Catalog c;
  c.track = std::move(file.track);
  for (Patch& p : file.patches) (p.special ? c.specials : c.circle).push_back(std::move(p));
  const int last_line = static_cast<int>(split(text, '\n').size());
  if (c.circle.size() != kCirclePatches)
    throw ParseError(last_line, "expected 33 circle patches, found " + std::to_string(c.circle.size()));
  if (c.specials.size() != kSpecialPatches)
    throw ParseError(last_line, "expected 5 special patches, found " + std::to_string(c.specials.size()));
  return c;
}

std::string serialize_catalog(const Catalog& catalog) {
  std::ostringstream out;
  auto list = [&](const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  };
  out << "track income=";
  list(catalog.track.income_positions);
  out << " specials=";
  list(catalog.track.special_positions);
  out << "\n\n";
  for (const auto* group : {&catalog.circle, &catalog.specials}) {
    for (const Patch& p : *group) {
      out << "patch id=" << p.id << " cost=" << p.cost << " time=" << p.time << " income=" << p.income
          << " special=" << (p.special ? 1 : 0) << "\n";
      for (const auto& row : p.shape.rows()) out << row << "\n";
      out << "\n";
    }
  }
  return out.str();
}

const Catalog& builtin_catalog() {
  static const Catalog c = parse_catalog(builtin_catalog_text());
  return c;
}

Catalog load_catalog() {
  const char* path = std::getenv("PATCHCP_CATALOG");
  if (!path || !*path) return builtin_catalog();
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("cannot open catalog file ") + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

}  // namespace patchcp::catalog
