#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "patchcp/automata.hpp"

namespace patchcp {

/// Board dimensions. Rows are encoded row-major with one extra dummy column
/// appended on the right, so a row occupies `stride()` positions.
struct Geometry {
  int width = 9;
  int height = 9;

  constexpr int stride() const { return width + 1; }
  constexpr int positions() const { return height * stride(); }
  constexpr int cells() const { return width * height; }
  constexpr bool operator==(const Geometry&) const = default;
};

inline constexpr Geometry kStandardBoard{};

}  // namespace patchcp

namespace patchcp::catalog {

inline constexpr int kTransformSlots = 8;

struct Cell {
  int row = 0;
  int col = 0;

  auto operator<=>(const Cell&) const = default;
};

/// Edge-connected polyomino, normalized so that the minimum row and column
/// are both 0. Cells are kept sorted row-major.
class Shape {
 public:
  /// Normalizes the cells. Throws std::invalid_argument if the set is empty,
  /// disconnected, larger than 81 cells, or wider/taller than 9.
  static Shape from_cells(std::vector<Cell> cells);
  /// Rows of '#' (cell) and '.' (empty), top row first.
  static Shape from_rows(const std::vector<std::string>& rows);

  const std::vector<Cell>& cells() const { return cells_; }
  int size() const { return static_cast<int>(cells_.size()); }
  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(int row, int col) const;
  std::vector<std::string> rows() const;

  /// Cells per column (left to right) and per row (top to bottom).
  std::vector<int> column_usage() const;
  std::vector<int> row_usage() const;

  bool operator==(const Shape& o) const { return cells_ == o.cells_; }

 private:
  std::vector<Cell> cells_;
  int width_ = 0;
  int height_ = 0;
};

struct Transform {
  Shape shape;
  int index = 0;

  bool operator==(const Transform&) const = default;
};

/// Distinct rotations and flips in the order r0, r90, r180, r270, f, f.r90,
/// f.r180, f.r270 (rotate, then mirror columns). Later duplicates are
/// dropped and the survivors are indexed 0..k-1.
std::vector<Transform> transforms(const Shape& shape);

struct Patch {
  int id = 0;
  Shape shape;
  int cost = 0;
  int time = 0;
  int income = 0;
  bool special = false;

  int size() const { return shape.size(); }
  bool operator==(const Patch&) const = default;
};

/// Time-track squares that pay income and hold the special 1x1 patches.
struct TrackLayout {
  std::vector<int> income_positions{5, 11, 17, 23, 29, 35, 41, 47, 53};
  std::vector<int> special_positions{20, 26, 32, 44, 50};

  bool operator==(const TrackLayout&) const = default;
};

inline constexpr int kCirclePatches = 33;
inline constexpr int kSpecialPatches = 5;

struct Catalog {
  std::vector<Patch> circle;
  std::vector<Patch> specials;
  TrackLayout track;

  const Patch& by_id(int id) const;
  bool operator==(const Catalog&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Patches and optional track line of a patch file, without the catalog
/// size checks. Throws ParseError.
struct PatchFile {
  std::vector<Patch> patches;
  TrackLayout track;
};
PatchFile parse_patches(std::string_view text);

/// Throws ParseError, including when there are not exactly 33 circle and 5
/// special patches.
Catalog parse_catalog(std::string_view text);
std::string serialize_catalog(const Catalog& catalog);

std::string_view builtin_catalog_text();
const Catalog& builtin_catalog();
/// The catalog named by $PATCHCP_CATALOG, or the builtin one.
Catalog load_catalog();

// Languages of the placement model.

/// Word over {0,1} with ones at the positions covered by `shape` anchored at
/// (row, col) on the dummy-extended board.
std::vector<int> placement_word(const Shape& shape, int row, int col, Geometry g = kStandardBoard);

/// 0* 1 0^g1 1 ... 1 0*, the gaps following the cell positions on the
/// dummy-extended board. Over words of exactly g.positions() symbols, and
/// with the dummy column fixed to 0, this accepts exactly the placements.
/// Throws std::invalid_argument if the shape does not fit the board.
automata::Regex placement_language(const Transform& t, Geometry g = kStandardBoard);

/// (1 0 R) | (0 1 0^(8 + positions)) over U N S[8] B, where R is the union
/// over transforms s of onehot(s) placement_language(s).
automata::Regex reified_patch_language(const Patch& p, Geometry g = kStandardBoard);

/// Exact finite language over U N S[8] Csum[stride] Rsum[height]: for each
/// transform and each pair of column/row anchors, the column usage word and
/// the row usage word padded with zeros; plus the unplaced word.
automata::Regex usage_language(const Patch& p, Geometry g = kStandardBoard);

/// Alphabet of usage_language: 0..max(width, height).
inline int usage_alphabet(Geometry g = kStandardBoard) { return (g.width > g.height ? g.width : g.height) + 1; }

}  // namespace patchcp::catalog
