#pragma once

#include <doctest.h>

#include "cohfreeze/error.hpp"
#include "cohfreeze/linalg.hpp"

// Runs `expr` and checks that it throws cohfreeze::Error of the given kind.
#define CHECK_ERROR_KIND(expr, expected_kind)                                  \
  do {                                                                         \
    bool thrown_ = false;                                                      \
    try {                                                                      \
      (void)(expr);                                                            \
    } catch (const cohfreeze::Error& e_) {                                     \
      thrown_ = true;                                                          \
      CHECK_MESSAGE(e_.kind() == (expected_kind), "got " << e_.name() << ": " << e_.what()); \
    }                                                                          \
    CHECK_MESSAGE(thrown_, "expected " #expected_kind);                        \
  } while (false)

inline void check_matrix_close(const cohfreeze::CMatrix& a, const cohfreeze::CMatrix& b,
                               double tol = 1e-10) {
  CHECK(cohfreeze::max_abs_diff(a, b) <= tol);
}
