#pragma once

#include <algorithm>
#include <vector>

#include "slopelab/metric_space.hpp"

namespace slopelab {

// A subset of the indexed points of a finite or grid space, kept sorted and
// deduplicated. Houses sublevel sets, truncation supports, and critical sets.
class PointSet {
public:
    PointSet(SpacePtr space, std::vector<int> indices) : space_(std::move(space)), indices_(std::move(indices)) {
        std::sort(indices_.begin(), indices_.end());
        indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
    }

    const SpacePtr& space() const { return space_; }
    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }
    bool empty() const { return indices_.empty(); }

    bool contains(int i) const { return std::binary_search(indices_.begin(), indices_.end(), i); }

    bool operator==(const PointSet& other) const { return indices_ == other.indices_; }

private:
    SpacePtr space_;
    std::vector<int> indices_;
};

}  // namespace slopelab
