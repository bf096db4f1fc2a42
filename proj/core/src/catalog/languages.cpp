#include <stdexcept>

#include "patchcp/catalog.hpp"

namespace patchcp::catalog {

using automata::Regex;

namespace {

void require_fit(const Shape& s, Geometry g) {
  if (s.width() > g.width || s.height() > g.height)
    throw std::invalid_argument("shape " + std::to_string(s.width()) + "x" + std::to_string(s.height()) +
                                " does not fit a " + std::to_string(g.width) + "x" + std::to_string(g.height) +
                                " board");
}

std::vector<int> linear_positions(const Shape& s, Geometry g) {
  std::vector<int> out;
  for (Cell c : s.cells()) out.push_back(c.row * g.stride() + c.col);
  return out;
}

Regex onehot(int s) {
  return Regex::seq({Regex::run(0, s), Regex::sym(1), Regex::run(0, kTransformSlots - 1 - s)});
}

Regex padded(const std::vector<int>& word, int offset, int total) {
  std::vector<Regex> parts{Regex::run(0, offset), Regex::literal(word),
                           Regex::run(0, total - offset - static_cast<int>(word.size()))};
  return Regex::seq(std::move(parts));
}

}  // namespace

std::vector<int> placement_word(const Shape& shape, int row, int col, Geometry g) {
  if (row < 0 || col < 0 || row + shape.height() > g.height || col + shape.width() > g.width)
    throw std::invalid_argument("placement outside the board");
  std::vector<int> word(static_cast<std::size_t>(g.positions()), 0);
  for (Cell c : shape.cells()) word[static_cast<std::size_t>((row + c.row) * g.stride() + col + c.col)] = 1;
  return word;
}

Regex placement_language(const Transform& t, Geometry g) {
  require_fit(t.shape, g);
  const auto pos = linear_positions(t.shape, g);
  std::vector<Regex> parts{Regex::star(Regex::sym(0)), Regex::sym(1)};
  for (std::size_t i = 1; i < pos.size(); ++i) {
    if (const int gap = pos[i] - pos[i - 1] - 1; gap > 0) parts.push_back(Regex::run(0, gap));
    parts.push_back(Regex::sym(1));
  }
  parts.push_back(Regex::star(Regex::sym(0)));
  return Regex::seq(std::move(parts));
}

Regex reified_patch_language(const Patch& p, Geometry g) {
  std::vector<Regex> placed;
  for (const Transform& t : transforms(p.shape)) placed.push_back(Regex::seq({onehot(t.index), placement_language(t, g)}));
  Regex used = Regex::seq({Regex::sym(1), Regex::sym(0), Regex::alt(std::move(placed))});
  Regex unused = Regex::seq({Regex::sym(0), Regex::sym(1), Regex::run(0, kTransformSlots + g.positions())});
  return Regex::alt({std::move(used), std::move(unused)});
}

Regex usage_language(const Patch& p, Geometry g) {
  std::vector<Regex> placed;
  for (const Transform& t : transforms(p.shape)) {
    require_fit(t.shape, g);
    const auto colw = t.shape.column_usage();
    const auto roww = t.shape.row_usage();
    std::vector<Regex> cols, rows;
    for (int a = 0; a + t.shape.width() <= g.width; ++a) cols.push_back(padded(colw, a, g.stride()));
    for (int b = 0; b + t.shape.height() <= g.height; ++b) rows.push_back(padded(roww, b, g.height));
    placed.push_back(Regex::seq({onehot(t.index), Regex::alt(std::move(cols)), Regex::alt(std::move(rows))}));
  }
  Regex used = Regex::seq({Regex::sym(1), Regex::sym(0), Regex::alt(std::move(placed))});
  Regex unused = Regex::seq({Regex::sym(0), Regex::sym(1), Regex::run(0, kTransformSlots + g.stride() + g.height)});
  return Regex::alt({std::move(used), std::move(unused)});
}

}  // namespace patchcp::catalog
