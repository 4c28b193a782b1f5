#pragma once

#include <vector>

// Printed N_{q,b}(n) arrays for n = 2..5; row q-1, column b.
inline const std::vector<std::vector<std::vector<long>>> kPrintedNqb = {
    {{0, 2}, {0, 0}, {0, 0}, {1, 0}},
    {{0, 8, 0}, {0, 0, 4}, {0, 2, 0}, {2, 0, 0}, {0, 0, 0}, {5, 0, 0}},
    {{0, 42, 0, 0}, {0, 0, 30, 0}, {0, 8, 0, 12}, {3, 0, 12, 0}, {0, 12, 0, 0}, {10, 0, 0, 0}, {0, 0, 0, 0},
     {36, 0, 0, 0}},
    {{0, 300, 0, 0, 0},
     {0, 0, 240, 0, 0},
     {0, 42, 0, 144, 0},
     {9, 0, 90, 0, 48},
     {0, 48, 0, 72, 0},
     {15, 0, 84, 0, 0},
     {0, 82, 0, 0, 0},
     {72, 0, 0, 0, 0},
     {0, 0, 0, 0, 0},
     {329, 0, 0, 0, 0}},
};

inline const std::vector<std::vector<long>> kPrintedRnk = {
    {1},
    {1, 1},
    {2, 3, 1},
    {6, 12, 6, 1},
    {24, 62, 39, 10, 1},
    {120, 396, 296, 95, 15, 1},
    {720, 3024, 2616, 980, 195, 21, 1},
};
