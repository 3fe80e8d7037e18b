#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "lf/matrix.hpp"

namespace testing {

inline lf::SeriesMatrix mat(const lf::FieldPtr& F, std::initializer_list<std::initializer_list<const char*>> rows) {
    const int n = static_cast<int>(rows.size());
    const int m = static_cast<int>(rows.begin()->size());
    lf::SeriesMatrix X(F.get(), n, m);
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (const char* s : r) X(i, j++) = lf::parse_series(F.get(), s);
        ++i;
    }
    return X;
}

inline lf::SeriesPoly poly(const lf::FieldPtr& F, const char* text) { return lf::parse_poly(F.get(), text); }

}  // namespace testing
