#pragma once

#include <string>
#include <vector>

#include "substar/operator_model.hpp"

namespace substar {

/// A generator symbol: u^k, s_f or s_f^*.
struct Op {
  enum class Kind { U, S, SStar };
  Kind kind = Kind::U;
  std::int64_t k = 0;
  FinitePath path;
};

/// Words are products read left to right; the empty word is the unit.
using OpWord = std::vector<Op>;

struct OpTerm {
  Rational coeff = 1;
  OpWord word;
};

using OpSum = std::vector<OpTerm>;

struct Relation {
  std::string id;
  std::string family;
  OpSum lhs;
  OpSum rhs;
};

/// Every relation the generators should satisfy, for paths up to small levels.
std::vector<Relation> relation_suite(const Diagram& d);

/// A wrong variant of the successor relation, for harness checks.
Relation mutant_relation(const Diagram& d);

Element evaluate(const Algebra& alg, const OpSum& x);
/// Applies the words one generator at a time, bypassing the symbolic product.
ModelVector evaluate(const OperatorModel& model, const OpSum& x, const TailPath& l);

struct RelationResult {
  std::string id;
  std::string family;
  bool pass = false;
  Verdict symbolic;          // products computed in the algebra, compared in the model
  bool direct_pass = false;  // words applied generator by generator
  std::string witness;
};

RelationResult check_relation(const Algebra& alg, const Relation& r, const std::vector<TailPath>& basis);
std::vector<RelationResult> run_relations(const Algebra& alg, const std::vector<Relation>& rels,
                                          unsigned probe_depth);

}  // namespace substar
