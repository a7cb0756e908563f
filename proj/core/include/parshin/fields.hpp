// field_ops adapters for coefficient domains beyond plain scalars.
#pragma once

#include "parshin/laurent.hpp"
#include "parshin/rational_function.hpp"

namespace parshin {

template <>
struct field_ops<RationalFunction> {
  static RationalFunction zero(const RationalFunction& like) {
    return RationalFunction(like.vars(), ExactScalar(0));
  }
  static RationalFunction one(const RationalFunction& like) {
    return RationalFunction(like.vars(), ExactScalar(1));
  }
  static RationalFunction from_long(const RationalFunction& like, long k) {
    return RationalFunction(like.vars(), ExactScalar(k));
  }
  static bool is_zero(const RationalFunction& x) { return x.is_zero(); }
};

}  // namespace parshin
