#pragma once

#include <array>

namespace nbcrit::published {

// Four-decimal values of P_jk = <f_j, f_k> and L_kj = <f_k, e_j> for
// 2 <= j, k <= 9, as rounded reference tables. Index [a][b] is (a+2, b+2).

inline constexpr std::array<std::array<double, 8>, 8> kGramTable = {{
    {0.1733, 0.1063, 0.1184, 0.0918, 0.0931, 0.0784, 0.0778, 0.0683},
    {0.1063, 0.1770, 0.1220, 0.1118, 0.1178, 0.0976, 0.0908, 0.0914},
    {0.1184, 0.1220, 0.1618, 0.1194, 0.1103, 0.1023, 0.1060, 0.0912},
    {0.0918, 0.1118, 0.1194, 0.1456, 0.1125, 0.1019, 0.0956, 0.0918},
    {0.0931, 0.1178, 0.1103, 0.1125, 0.1313, 0.1049, 0.0957, 0.0909},
    {0.0784, 0.0976, 0.1023, 0.1019, 0.1049, 0.1192, 0.0976, 0.0889},
    {0.0778, 0.0908, 0.1060, 0.0956, 0.0957, 0.0976, 0.1089, 0.0910},
    {0.0683, 0.0914, 0.0912, 0.0918, 0.0909, 0.0889, 0.0910, 0.1002},
}};

// Row k, column j; zeros above the diagonal.
inline constexpr std::array<std::array<double, 8>, 8> kCholeskyTable = {{
    {0.4163, 0, 0, 0, 0, 0, 0, 0},
    {0.2554, 0.3343, 0, 0, 0, 0, 0, 0},
    {0.2845, 0.1475, 0.2430, 0, 0, 0, 0, 0},
    {0.2205, 0.1659, 0.1325, 0.2277, 0, 0, 0, 0},
    {0.2237, 0.1814, 0.0819, 0.0976, 0.1792, 0, 0, 0},
    {0.1883, 0.1480, 0.1107, 0.0929, 0.0991, 0.1764, 0, 0},
    {0.1868, 0.1288, 0.1395, 0.0638, 0.0721, 0.0841, 0.1471, 0},
    {0.1641, 0.1479, 0.0934, 0.0822, 0.0651, 0.0664, 0.0863, 0.1409},
}};

/// Half a unit in the fourth decimal.
inline constexpr double kTableTolerance = 5e-5;

/// G(f_6, f_3, f_4 | f_5, f_2): the order-swapped bordered determinant that goes negative.
inline constexpr double kSwappedBorderedDet = -1.6493e-6;

} // namespace nbcrit::published
