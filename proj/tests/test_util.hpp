#pragma once

#include <gtest/gtest.h>

#include "metaweyl/metaweyl.hpp"

namespace mwtest {

using namespace metaweyl;

template <class F>
void expect_errc(F&& f, Errc code) {
  try {
    f();
    ADD_FAILURE() << "expected " << errc_name(code) << ", nothing thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline CMat c1(cplx v) {
  CMat m(1, 1);
  m(0, 0) = v;
  return m;
}

/// n = 1 rotation by θ in S: P = e^{-iθ}, Q = 0.
inline SuBlocks rotation(double theta) { return {1, c1(std::polar(1.0, -theta)), c1(0.0)}; }

}  // namespace mwtest
