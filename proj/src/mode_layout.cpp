#include "unruh/mode_layout.hpp"

#include "unruh/core.hpp"

#include <algorithm>
#include <set>

namespace unruh {

namespace {
constexpr std::size_t kMaxModes = 20;
}

ModeLayout::ModeLayout(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() > kMaxModes) {
    throw SizeError("ModeLayout: too many modes (" + std::to_string(labels_.size()) + ")");
  }
  std::set<std::string> seen;
  for (const auto& label : labels_) {
    if (label.empty()) throw ArgumentError("ModeLayout: empty mode label");
    if (!seen.insert(label).second) throw ArgumentError("ModeLayout: duplicate mode label '" + label + "'");
  }
}

bool ModeLayout::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t ModeLayout::position(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ArgumentError("unknown mode label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t ModeLayout::mask(std::string_view label) const {
  return std::size_t{1} << (labels_.size() - 1 - position(label));
}

std::size_t ModeLayout::mask(std::span<const std::string> labels) const {
  std::size_t m = 0;
  for (const auto& label : labels) m |= mask(label);
  return m;
}

std::size_t ModeLayout::index_of(std::string_view occupations) const {
  if (occupations.size() != labels_.size()) {
    throw ArgumentError("occupation string '" + std::string(occupations) + "' does not match " +
                        std::to_string(labels_.size()) + " modes");
  }
  std::size_t index = 0;
  for (char c : occupations) {
    if (c != '0' && c != '1') throw ArgumentError("occupation must be 0 or 1");
    index = (index << 1) | static_cast<std::size_t>(c - '0');
  }
  return index;
}

std::string ModeLayout::occupations(std::size_t index) const {
  std::string out(labels_.size(), '0');
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (index & (std::size_t{1} << (labels_.size() - 1 - k))) out[k] = '1';
  }
  return out;
}

ModeLayout ModeLayout::subset(std::span<const std::string> keep) const {
  for (const auto& label : keep) position(label);
  std::vector<std::string> kept;
  for (const auto& label : labels_) {
    if (std::find(keep.begin(), keep.end(), label) != keep.end()) kept.push_back(label);
  }
  return ModeLayout(std::move(kept));
}

ModeLayout ModeLayout::reordered(std::span<const std::string> order) const {
  if (order.size() != labels_.size()) throw ArgumentError("reordered: label count mismatch");
  for (const auto& label : order) position(label);
  return ModeLayout(std::vector<std::string>(order.begin(), order.end()));
}

ModeLayout ModeLayout::concat(const ModeLayout& other) const {
  std::vector<std::string> joined = labels_;
  joined.insert(joined.end(), other.labels_.begin(), other.labels_.end());
  return ModeLayout(std::move(joined));
}

std::size_t ModeLayout::remap_index(std::size_t index, const ModeLayout& target) const {
  std::size_t out = 0;
  const std::size_t n = labels_.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (index & (std::size_t{1} << (n - 1 - k))) out |= target.mask(labels_[k]);
  }
  return out;
}

const ModeLayout& two_mode_layout() {
  static const ModeLayout layout{"A_I", "B_I", "A_II", "B_II"};
  return layout;
}

const ModeLayout& teleport_layout() {
  static const ModeLayout layout{"Q", "A_I", "B_I", "A_II", "B_II"};
  return layout;
}

}  // namespace unruh
