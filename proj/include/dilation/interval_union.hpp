#ifndef DILATION_INTERVAL_UNION_HPP
#define DILATION_INTERVAL_UNION_HPP

#include <string>
#include <vector>

#include "dilation/numerics.hpp"

namespace dilation::measure1d {

using numerics::Interval;

/// A finite disjoint union of closed intervals, kept sorted with
/// strictly disjoint components (touching components are merged).
/// Zero-length components are allowed; they carry no measure or area.
class IntervalUnion {
  public:
    IntervalUnion() = default;
    explicit IntervalUnion(std::vector<Interval> comps);

    static IntervalUnion single(double lo, double hi);

    const std::vector<Interval>& components() const { return comps_; }
    bool empty() const { return comps_.empty(); }
    std::size_t size() const { return comps_.size(); }
    double total_length() const;
    bool contains(double x) const;
    bool subset_of(const IntervalUnion& other) const;

    IntervalUnion intersect(Interval window) const;
    static IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);

    /// Lebesgue measure of the intersection with [lo, hi].
    double overlap_length(double lo, double hi) const;

    /// JSON array of [lo, hi] pairs.
    std::string to_json() const;
    static IntervalUnion from_json(const std::string& text);

  private:
    std::vector<Interval> comps_;
};

} // namespace dilation::measure1d

#endif
