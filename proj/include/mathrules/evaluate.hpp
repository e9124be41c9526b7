#pragma once

#include <map>
#include <string>

#include "mathrules/expr.hpp"

namespace mathrules {

using Assignment = std::map<std::string, Rational>;

/// Exact evaluation. Requires integral exponents and a total assignment.
inline Rational evaluate(const Expr& e, const Assignment& sigma) {
  switch (e.tag()) {
    case Expr::Tag::atom:
      if (e.atom_kind() == AtomKind::name) {
        auto it = sigma.find(e.name_token());
        if (it == sigma.end()) raise(errc::unbound_name, "unbound name '" + e.name_token() + "'");
        return it->second;
      }
      return e.value();
    case Expr::Tag::neg: return -evaluate(e.child(), sigma);
    case Expr::Tag::group: return evaluate(e.child(), sigma);
    case Expr::Tag::bin: {
      Rational l = evaluate(e.lhs(), sigma);
      switch (e.op()) {
        case BinOp::add: return l + evaluate(e.rhs(), sigma);
        case BinOp::sub: return l - evaluate(e.rhs(), sigma);
        case BinOp::mul: return l * evaluate(e.rhs(), sigma);
        case BinOp::div: {
          Rational r = evaluate(e.rhs(), sigma);
          if (r.is_zero()) raise(errc::division_by_zero, "division by zero during evaluation");
          return l / r;
        }
        case BinOp::pow: {
          Rational r = evaluate(e.rhs(), sigma);
          if (!r.is_integer())
            raise(errc::non_integer_exponent, "exponent " + r.to_string() + " is not integral");
          if (r.numerator() > 1024 || r.numerator() < -1024)
            raise(errc::non_integer_exponent, "exponent too large: " + r.to_string());
          long long n = static_cast<long long>(r.numerator());
          if (l.is_zero() && n < 0)
            raise(errc::zero_to_negative_power, "0 raised to a negative power");
          return l.pow(n);
        }
      }
    }
  }
  raise(errc::parse_error, "unreachable");
}

}  // namespace mathrules
