#pragma once

#include <doctest.h>

#include "afrel/error.hpp"
#include "afrel/matrix.hpp"

#define CHECK_AFREL_ERROR(expr, expected_kind)               \
  do {                                                        \
    try {                                                     \
      (void)(expr);                                           \
      FAIL("expected afrel::Error from " #expr);              \
    } catch (const afrel::Error& e) {                         \
      CHECK(e.kind() == (expected_kind));                     \
    }                                                         \
  } while (0)

namespace test {

inline afrel::Matrix all_ones() { return afrel::Matrix::from_rows({{1, 1}, {1, 1}}); }
inline afrel::Matrix golden() { return afrel::Matrix::from_rows({{1, 1}, {1, 0}}); }
inline afrel::Matrix one_to_four() { return afrel::Matrix::from_rows({{1, 2}, {3, 4}}); }

inline constexpr double kGoldenRatio = 1.6180339887498949;  // (1 + sqrt 5) / 2

}  // namespace test
