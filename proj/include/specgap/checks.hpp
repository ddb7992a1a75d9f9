#pragma once

#include <limits>
#include <vector>

namespace specgap {

/// One sampled comparison inside a property check.
/// margin >= 0 means the sample satisfied the property (with its slack).
struct CheckItem {
    double parameter = 0.0;   // swept quantity (interval position, diameter, s, ...)
    double value = 0.0;       // quantity under test
    double reference = 0.0;   // value it is compared against
    double margin = 0.0;      // signed slack-adjusted margin, negative = violation
};

struct CheckReport {
    bool ok = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::vector<CheckItem> items;       // every sample
    std::vector<CheckItem> violations;  // the failing subset

    void add(const CheckItem& item) {
        items.push_back(item);
        if (item.margin < worst_margin) worst_margin = item.margin;
        if (item.margin < 0.0) {
            ok = false;
            violations.push_back(item);
        }
    }
};

} // namespace specgap
