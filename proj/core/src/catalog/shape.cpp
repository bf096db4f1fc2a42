#include <algorithm>
#include <stdexcept>

#include "patchcp/catalog.hpp"

namespace patchcp::catalog {

namespace {

bool connected(const std::vector<Cell>& cells) {
  std::vector<Cell> seen{cells.front()};
  std::vector<Cell> stack{cells.front()};
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    const Cell around[] = {{c.row - 1, c.col}, {c.row + 1, c.col}, {c.row, c.col - 1}, {c.row, c.col + 1}};
    for (Cell n : around) {
      if (!std::binary_search(cells.begin(), cells.end(), n)) continue;
      if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
      seen.push_back(n);
      stack.push_back(n);
    }
  }
  return seen.size() == cells.size();
}

Shape rotate(const Shape& s) {
  std::vector<Cell> out;
  for (Cell c : s.cells()) out.push_back({c.col, -c.row});
  return Shape::from_cells(std::move(out));
}

Shape mirror(const Shape& s) {
  std::vector<Cell> out;
  for (Cell c : s.cells()) out.push_back({c.row, -c.col});
  return Shape::from_cells(std::move(out));
}

}  // namespace

Shape Shape::from_cells(std::vector<Cell> cells) {
  if (cells.empty()) throw std::invalid_argument("shape has no cells");
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  int min_r = cells.front().row, min_c = cells.front().col, max_r = min_r, max_c = min_c;
  for (Cell c : cells) {
    min_r = std::min(min_r, c.row);
    max_r = std::max(max_r, c.row);
    min_c = std::min(min_c, c.col);
    max_c = std::max(max_c, c.col);
  }
  for (Cell& c : cells) c = {c.row - min_r, c.col - min_c};
  std::sort(cells.begin(), cells.end());
  Shape s;
  s.width_ = max_c - min_c + 1;
  s.height_ = max_r - min_r + 1;
  if (s.width_ > 9 || s.height_ > 9) throw std::invalid_argument("shape exceeds 9x9");
  if (!connected(cells)) throw std::invalid_argument("shape is not edge-connected");
  s.cells_ = std::move(cells);
  return s;
}

Shape Shape::from_rows(const std::vector<std::string>& rows) {
  std::vector<Cell> cells;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] == '#')
        cells.push_back({static_cast<int>(r), static_cast<int>(c)});
      else if (rows[r][c] != '.')
        throw std::invalid_argument(std::string("unexpected character '") + rows[r][c] + "' in shape");
    }
  }
  return from_cells(std::move(cells));
}

bool Shape::contains(int row, int col) const { return std::binary_search(cells_.begin(), cells_.end(), Cell{row, col}); }

std::vector<std::string> Shape::rows() const {
  std::vector<std::string> out(static_cast<std::size_t>(height_), std::string(static_cast<std::size_t>(width_), '.'));
  for (Cell c : cells_) out[static_cast<std::size_t>(c.row)][static_cast<std::size_t>(c.col)] = '#';
  return out;
}

std::vector<int> Shape::column_usage() const {
  std::vector<int> out(static_cast<std::size_t>(width_), 0);
  for (Cell c : cells_) ++out[static_cast<std::size_t>(c.col)];
  return out;
}

std::vector<int> Shape::row_usage() const {
  std::vector<int> out(static_cast<std::size_t>(height_), 0);
  for (Cell c : cells_) ++out[static_cast<std::size_t>(c.row)];
  return out;
}

std::vector<Transform> transforms(const Shape& shape) {
  std::vector<Shape> generated;
  Shape r = shape;
  for (int k = 0; k < 4; ++k, r = rotate(r)) generated.push_back(r);
  for (int k = 0; k < 4; ++k) generated.push_back(mirror(generated[static_cast<std::size_t>(k)]));
  std::vector<Transform> out;
  for (const Shape& s : generated) {
    bool dup = std::any_of(out.begin(), out.end(), [&](const Transform& t) { return t.shape == s; });
    if (!dup) out.push_back({s, static_cast<int>(out.size())});
  }
  return out;
}

const Patch& Catalog::by_id(int id) const {
  for (const auto* list : {&circle, &specials})
    for (const Patch& p : *list)
      if (p.id == id) return p;
  throw std::out_of_range("no patch with id " + std::to_string(id));
}

}  // namespace patchcp::catalog
