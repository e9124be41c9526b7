#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mathrules/error.hpp"
#include "mathrules/rational.hpp"

namespace mathrules {

enum class AtomKind { integer, decimal, name };
enum class BinOp { add, sub, mul, div, pow };

inline char binop_symbol(BinOp op) {
  switch (op) {
    case BinOp::add: return '+';
    case BinOp::sub: return '-';
    case BinOp::mul: return '*';
    case BinOp::div: return '/';
    case BinOp::pow: return '^';
  }
  return '?';
}

/// Characters that may not appear in a variable name. A name containing one
/// of these would not survive a render/parse round trip.
inline bool is_reserved_char(char c) {
  switch (c) {
    case '+': case '-': case '*': case '/': case '^':
    case '=': case ';': case '(': case ')': case '.':
      return true;
    default:
      return c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
             static_cast<unsigned char>(c) < 0x20;
  }
}

inline bool is_legal_name(const std::string& token) {
  if (token.empty()) return false;
  for (char c : token)
    if (is_reserved_char(c)) return false;
  // A leading digit would lex as a numeric literal.
  return !std::isdigit(static_cast<unsigned char>(token[0]));
}

/// Immutable expression tree. Leaves are atoms (integers, two-place
/// decimals, names); internal nodes are unary negation, explicit
/// parentheses (Group), and the five binary operations. Values share
/// structure freely; nothing is mutated after construction.
class Expr {
 public:
  enum class Tag { atom, neg, group, bin };

  struct Node {
    Tag tag;
    // atom
    AtomKind kind = AtomKind::integer;
    Rational value;
    std::string name;
    // neg / group
    std::shared_ptr<const Node> child;
    // bin
    BinOp op = BinOp::add;
    std::shared_ptr<const Node> lhs, rhs;
  };

  Expr() : node_(integer_node(0)) {}

  static Expr integer(Rational v) {
    if (!v.is_integer()) raise(errc::illegal_decimal, "integer atom from non-integer " + v.to_string());
    Expr e;
    e.node_ = integer_node_r(std::move(v));
    return e;
  }
  static Expr integer(long long v) { return integer(Rational(v)); }

  static Expr decimal(Rational v) {
    if (!v.is_two_place_decimal())
      raise(errc::illegal_decimal, "decimal atom needs at most two places: " + v.to_string());
    auto n = std::make_shared<Node>();
    n->tag = Tag::atom;
    n->kind = AtomKind::decimal;
    n->value = std::move(v);
    Expr e;
    e.node_ = std::move(n);
    return e;
  }

  static Expr name(std::string token) {
    if (!is_legal_name(token)) raise(errc::illegal_name, "illegal variable name: '" + token + "'");
    auto n = std::make_shared<Node>();
    n->tag = Tag::atom;
    n->kind = AtomKind::name;
    n->name = std::move(token);
    Expr e;
    e.node_ = std::move(n);
    return e;
  }

  static Expr neg(Expr child) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::neg;
    n->child = std::move(child.node_);
    Expr e;
    e.node_ = std::move(n);
    return e;
  }

  /// Explicit parentheses. Transparent for evaluation and algebra; render
  /// always emits one paren pair around the child.
  static Expr group(Expr child) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::group;
    n->child = std::move(child.node_);
    Expr e;
    e.node_ = std::move(n);
    return e;
  }

  static Expr bin(BinOp op, Expr l, Expr r) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::bin;
    n->op = op;
    n->lhs = std::move(l.node_);
    n->rhs = std::move(r.node_);
    Expr e;
    e.node_ = std::move(n);
    return e;
  }

  Tag tag() const { return node_->tag; }
  bool is_atom() const { return node_->tag == Tag::atom; }
  bool is_name() const { return is_atom() && node_->kind == AtomKind::name; }
  bool is_numeric() const { return is_atom() && node_->kind != AtomKind::name; }
  bool is_neg() const { return node_->tag == Tag::neg; }
  bool is_group() const { return node_->tag == Tag::group; }
  bool is_bin() const { return node_->tag == Tag::bin; }
  bool is_bin(BinOp op) const { return is_bin() && node_->op == op; }

  AtomKind atom_kind() const { return node_->kind; }
  const Rational& value() const { return node_->value; }
  const std::string& name_token() const { return node_->name; }
  Expr child() const { return Expr(node_->child); }
  BinOp op() const { return node_->op; }
  Expr lhs() const { return Expr(node_->lhs); }
  Expr rhs() const { return Expr(node_->rhs); }

  bool is_integer_value(long long v) const {
    return is_numeric() && value() == Rational(v);
  }

  /// Numeric atoms and Neg/Group of numeric-only subtrees.
  bool numeric_only() const {
    switch (tag()) {
      case Tag::atom: return node_->kind != AtomKind::name;
      case Tag::neg:
      case Tag::group: return child().numeric_only();
      case Tag::bin: return lhs().numeric_only() && rhs().numeric_only();
    }
    return false;
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    const Node &x = *a.node_, &y = *b.node_;
    if (x.tag != y.tag) return false;
    switch (x.tag) {
      case Tag::atom:
        if (x.kind != y.kind) return false;
        return x.kind == AtomKind::name ? x.name == y.name : x.value == y.value;
      case Tag::neg:
      case Tag::group:
        return Expr(x.child) == Expr(y.child);
      case Tag::bin:
        return x.op == y.op && Expr(x.lhs) == Expr(y.lhs) && Expr(x.rhs) == Expr(y.rhs);
    }
    return false;
  }
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  /// Atom leaves in first-occurrence order (names and numbers alike).
  void collect_leaves(std::vector<Expr>& out) const {
    switch (tag()) {
      case Tag::atom: out.push_back(*this); return;
      case Tag::neg:
      case Tag::group: child().collect_leaves(out); return;
      case Tag::bin:
        lhs().collect_leaves(out);
        rhs().collect_leaves(out);
        return;
    }
  }

  void collect_names(std::vector<std::string>& out) const {
    switch (tag()) {
      case Tag::atom:
        if (node_->kind == AtomKind::name) {
          for (const auto& n : out)
            if (n == node_->name) return;
          out.push_back(node_->name);
        }
        return;
      case Tag::neg:
      case Tag::group: child().collect_names(out); return;
      case Tag::bin:
        lhs().collect_names(out);
        rhs().collect_names(out);
        return;
    }
  }

  bool contains_name(const std::string& n) const {
    switch (tag()) {
      case Tag::atom: return node_->kind == AtomKind::name && node_->name == n;
      case Tag::neg:
      case Tag::group: return child().contains_name(n);
      case Tag::bin: return lhs().contains_name(n) || rhs().contains_name(n);
    }
    return false;
  }

  std::size_t count_name(const std::string& n) const {
    switch (tag()) {
      case Tag::atom: return node_->kind == AtomKind::name && node_->name == n ? 1 : 0;
      case Tag::neg:
      case Tag::group: return child().count_name(n);
      case Tag::bin: return lhs().count_name(n) + rhs().count_name(n);
    }
    return 0;
  }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<const Node> integer_node(long long v) { return integer_node_r(Rational(v)); }
  static std::shared_ptr<const Node> integer_node_r(Rational v) {
    auto n = std::make_shared<Node>();
    n->tag = Tag::atom;
    n->kind = AtomKind::integer;
    n->value = std::move(v);
    return n;
  }

  std::shared_ptr<const Node> node_;
};

/// Per-rule construction-time simplification switches. The all-off policy
/// performs pure tree construction.
struct SimplifyPolicy {
  bool fold_numeric_add = true;
  bool fold_numeric_mul = true;
  bool drop_zero_terms = true;
  bool drop_unit_factors = true;
  bool fold_neg_neg = true;

  static SimplifyPolicy all_off() { return {false, false, false, false, false}; }
  static SimplifyPolicy all_on() { return {}; }
};

inline Expr make_atom(AtomKind kind, const Rational& v) {
  switch (kind) {
    case AtomKind::integer: return Expr::integer(v);
    case AtomKind::decimal: return Expr::decimal(v);
    case AtomKind::name: raise(errc::illegal_name, "name atom requires a token");
  }
  raise(errc::illegal_name, "bad atom kind");
}

inline Expr make_atom(AtomKind kind, const std::string& token) {
  if (kind != AtomKind::name) raise(errc::illegal_name, "numeric atom requires a value");
  return Expr::name(token);
}

/// Unary negation. With fold_neg_neg, double negations collapse and numeric
/// atoms absorb the sign into their value.
inline Expr negate(const Expr& e, const SimplifyPolicy& policy = {}) {
  if (policy.fold_neg_neg) {
    if (e.is_neg()) return e.child();
    if (e.is_numeric()) {
      Rational v = -e.value();
      return e.atom_kind() == AtomKind::integer ? Expr::integer(v) : Expr::decimal(v);
    }
  }
  return Expr::neg(e);
}

namespace detail {

inline bool numeric_foldable(const Rational& v) {
  return v.is_integer() || v.is_two_place_decimal();
}

inline Expr numeric_atom(const Rational& v, AtomKind a, AtomKind b) {
  if (v.is_integer() && a == AtomKind::integer && b == AtomKind::integer)
    return Expr::integer(v);
  if (v.is_integer()) return Expr::integer(v);
  return Expr::decimal(v);
}

}  // namespace detail

/// Binary combination with the policy's folds; falls back to plain node
/// construction when no rule applies.
inline Expr combine(BinOp op, const Expr& l, const Expr& r, const SimplifyPolicy& policy = {}) {
  const bool ln = l.is_numeric(), rn = r.is_numeric();
  switch (op) {
    case BinOp::add:
    case BinOp::sub:
      if (policy.drop_zero_terms) {
        if (rn && r.value().is_zero()) return l;
        if (ln && l.value().is_zero()) return op == BinOp::add ? r : negate(r, policy);
      }
      if (policy.fold_numeric_add && ln && rn) {
        Rational v = op == BinOp::add ? l.value() + r.value() : l.value() - r.value();
        if (detail::numeric_foldable(v)) return detail::numeric_atom(v, l.atom_kind(), r.atom_kind());
      }
      break;
    case BinOp::mul:
      if (policy.drop_unit_factors) {
        if (rn && r.value() == Rational(1)) return l;
        if (ln && l.value() == Rational(1)) return r;
      }
      if (policy.fold_numeric_mul && ln && rn) {
        Rational v = l.value() * r.value();
        if (detail::numeric_foldable(v)) return detail::numeric_atom(v, l.atom_kind(), r.atom_kind());
      }
      break;
    case BinOp::div:
      if (policy.drop_unit_factors && rn && r.value() == Rational(1)) return l;
      if (policy.fold_numeric_mul && ln && rn) {
        if (r.value().is_zero()) raise(errc::division_by_zero, "folding x/0");
        Rational v = l.value() / r.value();
        if (detail::numeric_foldable(v)) return detail::numeric_atom(v, l.atom_kind(), r.atom_kind());
      }
      break;
    case BinOp::pow:
      if (policy.fold_numeric_mul && ln && rn && r.value().is_integer()) {
        long long e = static_cast<long long>(r.value().numerator());
        if (e >= -16 && e <= 16 && !(l.value().is_zero() && e < 0)) {
          Rational v = l.value().pow(e);
          if (detail::numeric_foldable(v)) return detail::numeric_atom(v, l.atom_kind(), r.atom_kind());
        }
      }
      break;
  }
  return Expr::bin(op, l, r);
}

}  // namespace mathrules
