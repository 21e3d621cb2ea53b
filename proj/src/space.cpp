// SPDX-License-Identifier: Apache-2.0
#include "evc/space.hpp"

#include "evc/error.hpp"

namespace evc {

SpacePtr EquivalenceSpace::create(std::vector<std::string> points,
                                  const std::map<std::string, std::string>& class_of) {
  if (points.empty()) fail(Errc::parse_error, "point list is empty");
  auto space = std::shared_ptr<EquivalenceSpace>(new EquivalenceSpace());
  space->points_ = std::move(points);

  for (std::size_t p = 0; p < space->points_.size(); ++p) {
    auto [it, inserted] = space->point_lookup_.emplace(space->points_[p], p);
    if (!inserted) fail(Errc::duplicate_point, "duplicate point '" + space->points_[p] + "'");
  }
  for (const auto& [point, label] : class_of) {
    if (!space->point_lookup_.count(point)) {
      fail(Errc::unknown_point, "label given for unknown point '" + point + "'");
    }
    (void)label;
  }

  space->class_of_point_.resize(space->points_.size());
  for (std::size_t p = 0; p < space->points_.size(); ++p) {
    auto it = class_of.find(space->points_[p]);
    if (it == class_of.end()) {
      fail(Errc::missing_label, "point '" + space->points_[p] + "' has no class label");
    }
    auto [cit, inserted] =
        space->class_lookup_.emplace(it->second, space->class_ids_.size());
    if (inserted) {
      space->class_ids_.push_back(it->second);
      space->fibers_.emplace_back();
    }
    space->class_of_point_[p] = cit->second;
    space->fibers_[cit->second].push_back(p);
  }
  return space;
}

std::size_t EquivalenceSpace::point_index(const std::string& id) const {
  auto it = point_lookup_.find(id);
  if (it == point_lookup_.end()) fail(Errc::unknown_point, "unknown point '" + id + "'");
  return it->second;
}

std::optional<std::size_t> EquivalenceSpace::find_point(const std::string& id) const {
  auto it = point_lookup_.find(id);
  if (it == point_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> EquivalenceSpace::find_class(const std::string& id) const {
  auto it = class_lookup_.find(id);
  if (it == class_lookup_.end()) return std::nullopt;
  return it->second;
}

bool EquivalenceSpace::equals(const EquivalenceSpace& other) const {
  if (this == &other) return true;
  return points_ == other.points_ && class_ids_ == other.class_ids_ &&
         class_of_point_ == other.class_of_point_;
}

std::vector<bool> EquivalenceSpace::point_mask(const std::set<std::string>& point_set) const {
  std::vector<bool> mask(points_.size(), false);
  for (const auto& id : point_set) mask[point_index(id)] = true;
  return mask;
}

SaturatedSet::SaturatedSet(SpacePtr space, std::vector<bool> class_mask)
    : space_(std::move(space)), class_mask_(std::move(class_mask)) {
  if (class_mask_.size() != space_->class_count()) {
    fail(Errc::internal_inconsistency, "class mask size does not match space");
  }
}

SaturatedSet SaturatedSet::empty(SpacePtr space) {
  std::vector<bool> mask(space->class_count(), false);
  return SaturatedSet(std::move(space), std::move(mask));
}

SaturatedSet SaturatedSet::whole(SpacePtr space) {
  std::vector<bool> mask(space->class_count(), true);
  return SaturatedSet(std::move(space), std::move(mask));
}

bool SaturatedSet::is_empty() const {
  for (bool b : class_mask_) {
    if (b) return false;
  }
  return true;
}

std::vector<std::string> SaturatedSet::member_classes() const {
  std::vector<std::string> out;
  for (std::size_t c = 0; c < class_mask_.size(); ++c) {
    if (class_mask_[c]) out.push_back(space_->class_ids()[c]);
  }
  return out;
}

std::vector<std::string> SaturatedSet::member_points() const {
  std::vector<std::string> out;
  for (std::size_t p = 0; p < space_->point_count(); ++p) {
    if (contains_point(p)) out.push_back(space_->points()[p]);
  }
  return out;
}

std::vector<bool> SaturatedSet::point_mask() const {
  std::vector<bool> mask(space_->point_count(), false);
  for (std::size_t p = 0; p < space_->point_count(); ++p) mask[p] = contains_point(p);
  return mask;
}

SaturatedSet SaturatedSet::complement() const {
  std::vector<bool> mask(class_mask_.size());
  for (std::size_t c = 0; c < class_mask_.size(); ++c) mask[c] = !class_mask_[c];
  return SaturatedSet(space_, std::move(mask));
}

SaturatedSet SaturatedSet::unite(const SaturatedSet& other) const {
  if (!space_->equals(*other.space_)) fail(Errc::space_mismatch, "saturated sets on different spaces");
  std::vector<bool> mask(class_mask_.size());
  for (std::size_t c = 0; c < class_mask_.size(); ++c) {
    mask[c] = class_mask_[c] || other.class_mask_[c];
  }
  return SaturatedSet(space_, std::move(mask));
}

bool operator==(const SaturatedSet& a, const SaturatedSet& b) {
  return a.space_->equals(*b.space_) && a.class_mask_ == b.class_mask_;
}

SaturatedSet saturate_mask(const SpacePtr& space, const std::vector<bool>& point_mask) {
  if (point_mask.size() != space->point_count()) {
    fail(Errc::internal_inconsistency, "point mask size does not match space");
  }
  std::vector<bool> classes(space->class_count(), false);
  for (std::size_t p = 0; p < point_mask.size(); ++p) {
    if (point_mask[p]) classes[space->class_of(p)] = true;
  }
  return SaturatedSet(space, std::move(classes));
}

SaturatedSet saturate(const SpacePtr& space, const std::set<std::string>& point_set) {
  return saturate_mask(space, space->point_mask(point_set));
}

bool is_saturated_mask(const SpacePtr& space, const std::vector<bool>& point_mask) {
  return saturate_mask(space, point_mask).point_mask() == point_mask;
}

bool is_saturated(const SpacePtr& space, const std::set<std::string>& point_set) {
  return is_saturated_mask(space, space->point_mask(point_set));
}

}  // namespace evc
