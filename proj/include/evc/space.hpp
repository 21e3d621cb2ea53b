// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace evc {

class EquivalenceSpace;
using SpacePtr = std::shared_ptr<const EquivalenceSpace>;

/// Finite point set with a total class-label map. The induced relation
/// "same label" is the equivalence relation; its fibers are the classes.
/// Point order and class order (first appearance) are fixed at construction
/// and all downstream iteration follows them.
class EquivalenceSpace {
 public:
  static SpacePtr create(std::vector<std::string> points,
                         const std::map<std::string, std::string>& class_of);

  std::size_t point_count() const { return points_.size(); }
  std::size_t class_count() const { return class_ids_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::vector<std::string>& class_ids() const { return class_ids_; }

  const std::string& point_id(std::size_t p) const { return points_[p]; }
  std::size_t class_of(std::size_t p) const { return class_of_point_[p]; }
  const std::string& class_id_of(std::size_t p) const { return class_ids_[class_of_point_[p]]; }
  const std::vector<std::size_t>& class_members(std::size_t c) const { return fibers_[c]; }
  bool same_class(std::size_t a, std::size_t b) const {
    return class_of_point_[a] == class_of_point_[b];
  }

  std::size_t point_index(const std::string& id) const;  // throws UnknownPoint
  std::optional<std::size_t> find_point(const std::string& id) const;
  std::optional<std::size_t> find_class(const std::string& id) const;

  bool equals(const EquivalenceSpace& other) const;

  /// Point mask from a set of point ids; throws UnknownPoint.
  std::vector<bool> point_mask(const std::set<std::string>& point_set) const;

 private:
  EquivalenceSpace() = default;

  std::vector<std::string> points_;
  std::vector<std::string> class_ids_;
  std::vector<std::size_t> class_of_point_;
  std::vector<std::vector<std::size_t>> fibers_;
  std::map<std::string, std::size_t> point_lookup_;
  std::map<std::string, std::size_t> class_lookup_;
};

/// Union of equivalence classes (an element of the invariant sigma-field),
/// represented by a class mask on its space.
class SaturatedSet {
 public:
  SaturatedSet(SpacePtr space, std::vector<bool> class_mask);
  static SaturatedSet empty(SpacePtr space);
  static SaturatedSet whole(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  const std::vector<bool>& class_mask() const { return class_mask_; }
  bool contains_class(std::size_t c) const { return class_mask_[c]; }
  bool contains_point(std::size_t p) const { return class_mask_[space_->class_of(p)]; }
  bool is_empty() const;

  std::vector<std::string> member_classes() const;  // class order
  std::vector<std::string> member_points() const;   // point order
  std::vector<bool> point_mask() const;

  SaturatedSet complement() const;
  SaturatedSet unite(const SaturatedSet& other) const;  // throws SpaceMismatch

  friend bool operator==(const SaturatedSet& a, const SaturatedSet& b);

 private:
  SpacePtr space_;
  std::vector<bool> class_mask_;
};

/// Smallest saturated superset: union of all classes meeting the point set.
SaturatedSet saturate(const SpacePtr& space, const std::set<std::string>& point_set);
SaturatedSet saturate_mask(const SpacePtr& space, const std::vector<bool>& point_mask);

bool is_saturated(const SpacePtr& space, const std::set<std::string>& point_set);
bool is_saturated_mask(const SpacePtr& space, const std::vector<bool>& point_mask);

}  // namespace evc
