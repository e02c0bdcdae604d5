#pragma once

#include <vector>

namespace testsupport {

struct Golden {
    int n, d, e, j;
    const char* base_lo;
    const char* base_hi;
    const char* lo;
    const char* hi;
};

// Every entry of the R^2..R^6 tables; the second pair is the improved interval.
inline const std::vector<Golden> kBoundsTables = {
    {2, 1, 1, 1, "2", "2", "2", "2"},
    {3, 1, 1, 1, "3/2", "3/2", "3/2", "3/2"},
    {3, 2, 1, 1, "3", "3", "3", "3"},
    {3, 1, 2, 1, "3", "3", "3", "3"},
    {4, 1, 1, 1, "4/3", "4/3", "4/3", "4/3"},
    {4, 2, 1, 1, "2", "2", "2", "2"},
    {4, 3, 1, 1, "4", "4", "4", "4"},
    {4, 1, 2, 1, "2", "2", "2", "2"},
    {4, 2, 2, 1, "3", "4", "3", "3"},
    {4, 2, 2, 2, "1", "1", "1", "1"},
    {4, 1, 3, 1, "4", "4", "4", "4"},
    {5, 1, 1, 1, "5/4", "5/4", "5/4", "5/4"},
    {5, 2, 1, 1, "5/3", "5/3", "5/3", "5/3"},
    {5, 3, 1, 1, "5/2", "5/2", "5/2", "5/2"},
    {5, 4, 1, 1, "5", "5", "5", "5"},
    {5, 1, 2, 1, "5/3", "5/3", "5/3", "5/3"},
    {5, 2, 2, 1, "20/9", "4", "20/9", "3"},
    {5, 2, 2, 2, "1/3", "5/6", "5/9", "5/6"},
    {5, 3, 2, 1, "4", "7", "4", "6"},
    {5, 3, 2, 2, "5/4", "5/4", "5/4", "5/4"},
    {5, 1, 3, 1, "5/2", "5/2", "5/2", "5/2"},
    {5, 2, 3, 1, "4", "7", "4", "7"},
    {5, 2, 3, 2, "5/4", "5/4", "5/4", "5/4"},
    {5, 1, 4, 1, "5", "5", "5", "5"},
    {6, 1, 1, 1, "6/5", "6/5", "6/5", "6/5"},
    {6, 2, 1, 1, "3/2", "3/2", "3/2", "3/2"},
    {6, 3, 1, 1, "2", "2", "2", "2"},
    {6, 4, 1, 1, "3", "3", "3", "3"},
    {6, 5, 1, 1, "6", "6", "6", "6"},
    {6, 1, 2, 1, "3/2", "3/2", "3/2", "3/2"},
    {6, 2, 2, 1, "15/8", "3", "15/8", "3"},
    {6, 2, 2, 2, "1/4", "3/4", "6/11", "3/4"},
    {6, 3, 2, 1, "5/2", "5", "5/2", "9/2"},
    {6, 3, 2, 2, "1", "1", "1", "1"},
    {6, 4, 2, 1, "5", "9", "5", "9"},
    {6, 4, 2, 2, "3/2", "3/2", "3/2", "3/2"},
    {6, 1, 3, 1, "2", "2", "2", "2"},
    {6, 2, 3, 1, "5/2", "5", "5/2", "5"},
    {6, 2, 3, 2, "1", "1", "1", "1"},
    {6, 3, 3, 1, "4", "6", "4", "6"},
    {6, 3, 3, 2, "5/4", "5", "5/4", "5"},
    {6, 3, 3, 3, "1/3", "2/3", "16/45", "2/3"},
    {6, 1, 4, 1, "3", "3", "3", "3"},
    {6, 2, 4, 1, "5", "9", "5", "9"},
    {6, 2, 4, 2, "3/2", "3/2", "3/2", "3/2"},
    {6, 1, 5, 1, "6", "6", "6", "6"},
};


}  // namespace testsupport
