#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace unruh {

/// Ordered list of two-level modes. The leftmost mode is the most
/// significant bit of a basis index, so |Q A_I B_I A_II B_II> = |01000>
/// is index 8.
class ModeLayout {
 public:
  ModeLayout() = default;
  explicit ModeLayout(std::vector<std::string> labels);
  ModeLayout(std::initializer_list<std::string> labels)
      : ModeLayout(std::vector<std::string>(labels)) {}

  std::size_t mode_count() const { return labels_.size(); }
  std::size_t dimension() const { return std::size_t{1} << labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  bool contains(std::string_view label) const;
  /// Throws ArgumentError for unknown labels.
  std::size_t position(std::string_view label) const;
  /// Single-bit mask of the mode within a basis index.
  std::size_t mask(std::string_view label) const;
  std::size_t mask(std::span<const std::string> labels) const;

  /// Basis index of an occupation string such as "01000".
  std::size_t index_of(std::string_view occupations) const;
  std::string occupations(std::size_t index) const;

  /// The named modes, in this layout's order.
  ModeLayout subset(std::span<const std::string> keep) const;
  /// The named modes, in the order given.
  ModeLayout reordered(std::span<const std::string> order) const;

  /// Tensor-product layout: this layout's modes followed by `other`'s.
  ModeLayout concat(const ModeLayout& other) const;

  /// Moves the bit of each mode of this layout to its position in `target`.
  /// Both layouts must hold the same label set.
  std::size_t remap_index(std::size_t index, const ModeLayout& target) const;

  friend bool operator==(const ModeLayout&, const ModeLayout&) = default;

 private:
  std::vector<std::string> labels_;
};

/// Layout of the two-mode states: [A_I, B_I, A_II, B_II].
const ModeLayout& two_mode_layout();
/// Layout of the teleportation states: [Q, A_I, B_I, A_II, B_II].
const ModeLayout& teleport_layout();

}  // namespace unruh
