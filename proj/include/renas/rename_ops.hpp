#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "renas/lexical/normalize.hpp"

namespace renas {

enum class OpKind {
  kInsert,
  kDelete,
  kReplace,
  kOrder,
  kFormatP,  // plural/singular form changed
  kFormatA,  // abbreviation expanded or abbreviated
  kFormatC,  // verb conjugation or other written-form change
};

const char* to_string(OpKind kind);
std::optional<OpKind> parse_op_kind(std::string_view text);
// False for order, format_a and format_c.
bool is_recommend_eligible(OpKind kind);

struct RenameOperation {
  OpKind kind = OpKind::kInsert;
  // insert: empty; delete: deleted lemmas; replace: lemmas before;
  // order: lemmas in old order; format: {lemma}.
  std::vector<std::string> before;
  // insert: inserted lemmas; delete: empty; replace: lemmas after;
  // order: lemmas in new order; format: {lemma}.
  std::vector<std::string> after;
  std::optional<std::string> left_anchor;   // insert only
  std::optional<std::string> right_anchor;  // insert only
  // Written forms for rendering: `before_written` for format ops,
  // `after_written` for the new words of insert/replace/format ops.
  std::vector<std::string> before_written;
  std::vector<std::string> after_written;

  friend bool operator==(const RenameOperation&, const RenameOperation&) = default;
};

// "replace([ancestor], [matched])", "insert([variable], map, name)", ...
std::string describe(const RenameOperation& op);

struct OpSet {
  std::vector<RenameOperation> ops;

  std::vector<RenameOperation> recommend_eligible() const;
  bool empty() const { return ops.empty(); }
};

// Word-level diff of two normalized names. Throws Error(kDegenerateName) if
// either name has no words.
OpSet extract_ops(const lexical::NormalizedName& old_name, const lexical::NormalizedName& new_name);

bool applicable(const RenameOperation& op, const lexical::NormalizedName& candidate);

// True when `op` could edit `candidate` at more than one place; only the
// first is edited.
bool has_several_sites(const RenameOperation& op, const lexical::NormalizedName& candidate);

// Lemma sequence of `candidate` after applying `op` at its first match.
// Throws Error(kNotApplicable) if the op does not apply and
// Error(kDegenerateName) if no word would remain.
std::vector<std::string> apply_op(const RenameOperation& op, const lexical::NormalizedName& candidate);

// Identifier text for `candidate` after applying `op`, keeping the
// candidate's own written words and case style. Same errors as apply_op.
std::string suggest_name(const RenameOperation& op, const lexical::NormalizedName& candidate);

}  // namespace renas
