#include "dilation/interval_union.hpp"

#include <algorithm>
#include <cmath>

#include "dilation/errors.hpp"
#include "json.hpp"

namespace dilation::measure1d {

IntervalUnion::IntervalUnion(std::vector<Interval> comps) {
    for (const auto& c : comps) {
        if (std::isnan(c.lo) || std::isnan(c.hi) || c.lo > c.hi)
            throw DomainError("IntervalUnion: component with lo > hi");
    }
    std::sort(comps.begin(), comps.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (const auto& c : comps) {
        if (!comps_.empty() && c.lo <= comps_.back().hi)
            comps_.back().hi = std::max(comps_.back().hi, c.hi);
        else
            comps_.push_back(c);
    }
}

IntervalUnion IntervalUnion::single(double lo, double hi) {
    return IntervalUnion(std::vector<Interval>{{lo, hi}});
}

double IntervalUnion::total_length() const {
    double s = 0.0;
    for (const auto& c : comps_) s += c.hi - c.lo;
    return s;
}

bool IntervalUnion::contains(double x) const {
    for (const auto& c : comps_)
        if (x >= c.lo && x <= c.hi) return true;
    return false;
}

bool IntervalUnion::subset_of(const IntervalUnion& other) const {
    for (const auto& c : comps_) {
        bool covered = false;
        for (const auto& o : other.comps_) {
            if (c.lo >= o.lo && c.hi <= o.hi) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

IntervalUnion IntervalUnion::intersect(Interval window) const {
    std::vector<Interval> out;
    for (const auto& c : comps_) {
        const double lo = std::max(c.lo, window.lo);
        const double hi = std::min(c.hi, window.hi);
        if (lo <= hi) out.push_back({lo, hi});
    }
    return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& a,
                                   const IntervalUnion& b) {
    std::vector<Interval> all(a.comps_);
    all.insert(all.end(), b.comps_.begin(), b.comps_.end());
    return IntervalUnion(std::move(all));
}

double IntervalUnion::overlap_length(double lo, double hi) const {
    double s = 0.0;
    for (const auto& c : comps_) {
        const double l = std::max(c.lo, lo);
        const double r = std::min(c.hi, hi);
        if (r > l) s += r - l;
    }
    return s;
}

std::string IntervalUnion::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : comps_) arr.push_back({c.lo, c.hi});
    return arr.dump();
}

IntervalUnion IntervalUnion::from_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw DomainError("IntervalUnion: expected JSON array");
    std::vector<Interval> comps;
    for (const auto& pair : arr) {
        if (!pair.is_array() || pair.size() != 2)
            throw DomainError("IntervalUnion: expected [lo, hi] pairs");
        comps.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return IntervalUnion(std::move(comps));
}

} // namespace dilation::measure1d
