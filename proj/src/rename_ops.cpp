#include "renas/rename_ops.hpp"

#include <algorithm>
#include <set>

#include "renas/error.hpp"

namespace renas {

using lexical::NormalizedName;
using lexical::WordToken;

const char* to_string(OpKind kind) {
  switch (kind) {
    case OpKind::kInsert: return "insert";
    case OpKind::kDelete: return "delete";
    case OpKind::kReplace: return "replace";
    case OpKind::kOrder: return "order";
    case OpKind::kFormatP: return "format_p";
    case OpKind::kFormatA: return "format_a";
    case OpKind::kFormatC: return "format_c";
  }
  return "?";
}

std::optional<OpKind> parse_op_kind(std::string_view text) {
  for (OpKind k : {OpKind::kInsert, OpKind::kDelete, OpKind::kReplace, OpKind::kOrder, OpKind::kFormatP,
                   OpKind::kFormatA, OpKind::kFormatC}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

bool is_recommend_eligible(OpKind kind) {
  return kind != OpKind::kOrder && kind != OpKind::kFormatA && kind != OpKind::kFormatC;
}

namespace {

std::string join(const std::vector<std::string>& words) {
  std::string out = "[";
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out += ", ";
    out += words[i];
  }
  return out + "]";
}

// Index of the first contiguous occurrence of `needle` in `hay`.
std::optional<std::size_t> find_run(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > hay.size()) return std::nullopt;
  auto it = std::search(hay.begin(), hay.end(), needle.begin(), needle.end());
  if (it == hay.end()) return std::nullopt;
  return static_cast<std::size_t>(it - hay.begin());
}

std::optional<std::size_t> find_word(const std::vector<std::string>& hay, const std::string& word) {
  auto it = std::find(hay.begin(), hay.end(), word);
  if (it == hay.end()) return std::nullopt;
  return static_cast<std::size_t>(it - hay.begin());
}

OpKind classify_format(const WordToken& a, const WordToken& b) {
  if (a.expanded_from != b.expanded_from) return OpKind::kFormatA;
  if ((a.inflection == lexical::Inflection::kPlural) != (b.inflection == lexical::Inflection::kPlural)) {
    return OpKind::kFormatP;
  }
  return OpKind::kFormatC;
}

std::vector<std::string> written_range(const NormalizedName& name, std::size_t from, std::size_t to) {
  std::vector<std::string> out;
  for (std::size_t i = from; i < to; ++i) out.push_back(name.tokens[i].written());
  return out;
}

std::vector<std::string> range(const std::vector<std::string>& words, std::size_t from, std::size_t to) {
  return {words.begin() + static_cast<std::ptrdiff_t>(from), words.begin() + static_cast<std::ptrdiff_t>(to)};
}

// Positions in `words` of the words that belong to `set`, in order.
std::vector<std::size_t> positions_in(const std::vector<std::string>& words, const std::vector<std::string>& set) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (std::find(set.begin(), set.end(), words[i]) != set.end()) out.push_back(i);
  }
  return out;
}

// Where an applicable op edits the candidate: [begin, end) is replaced by
// the op's new words (for insert, begin == end).
struct Edit {
  std::size_t begin = 0;
  std::size_t end = 0;
};

Edit locate(const RenameOperation& op, const std::vector<std::string>& lemmas) {
  switch (op.kind) {
    case OpKind::kInsert:
      if (op.left_anchor) {
        if (auto i = find_word(lemmas, *op.left_anchor)) return {*i + 1, *i + 1};
      }
      if (op.right_anchor) {
        if (auto i = find_word(lemmas, *op.right_anchor)) return {*i, *i};
      }
      break;
    case OpKind::kDelete:
    case OpKind::kReplace:
      if (auto i = find_run(lemmas, op.before)) return {*i, *i + op.before.size()};
      break;
    default:
      break;
  }
  throw Error(ErrorCode::kNotApplicable, "operation " + describe(op) + " does not apply");
}

bool format_matches(const RenameOperation& op, const WordToken& token) {
  const std::string& word = op.before_written.empty() ? op.before.front() : op.before_written.front();
  return token.written() == word || token.surface == word;
}

}  // namespace

std::string describe(const RenameOperation& op) {
  const std::string name = to_string(op.kind);
  switch (op.kind) {
    case OpKind::kInsert:
      return name + "(" + join(op.after) + ", " + op.left_anchor.value_or("-") + ", " +
             op.right_anchor.value_or("-") + ")";
    case OpKind::kDelete:
      return name + "(" + join(op.before) + ")";
    case OpKind::kReplace:
    case OpKind::kOrder:
      return name + "(" + join(op.before) + ", " + join(op.after) + ")";
    default: {
      const auto& from = op.before_written.empty() ? op.before : op.before_written;
      const auto& to = op.after_written.empty() ? op.after : op.after_written;
      return name + "(" + (from.empty() ? "" : from.front()) + ", " + (to.empty() ? "" : to.front()) + ")";
    }
  }
}

std::vector<RenameOperation> OpSet::recommend_eligible() const {
  std::vector<RenameOperation> out;
  for (const auto& op : ops) {
    if (is_recommend_eligible(op.kind)) out.push_back(op);
  }
  return out;
}

OpSet extract_ops(const NormalizedName& old_name, const NormalizedName& new_name) {
  if (old_name.empty() || new_name.empty()) {
    throw Error(ErrorCode::kDegenerateName, "cannot diff a name without words");
  }
  const auto a = old_name.lemmas();
  const auto b = new_name.lemmas();
  OpSet result;

  if (a == b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const WordToken& x = old_name.tokens[i];
      const WordToken& y = new_name.tokens[i];
      if (x.written() == y.written()) continue;
      RenameOperation op;
      op.kind = classify_format(x, y);
      op.before = {x.lemma};
      op.after = {y.lemma};
      op.before_written = {x.written()};
      op.after_written = {y.written()};
      result.ops.push_back(std::move(op));
    }
    return result;
  }

  auto sorted_a = a;
  auto sorted_b = b;
  std::sort(sorted_a.begin(), sorted_a.end());
  std::sort(sorted_b.begin(), sorted_b.end());
  if (sorted_a == sorted_b) {
    std::size_t prefix = 0;
    while (a[prefix] == b[prefix]) ++prefix;
    std::size_t suffix = 0;
    while (a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) ++suffix;
    RenameOperation op;
    op.kind = OpKind::kOrder;
    op.before = range(a, prefix, a.size() - suffix);
    op.after = range(b, prefix, b.size() - suffix);
    result.ops.push_back(std::move(op));
    return result;
  }

  // lcs[i][j]: longest common subsequence of a[i..] and b[j..].
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> matches;
  for (std::size_t i = 0, j = 0; i < n && j < m;) {
    if (a[i] == b[j] && lcs[i][j] == lcs[i + 1][j + 1] + 1) {
      matches.emplace_back(i++, j++);
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      ++i;
    } else {
      ++j;
    }
  }
  matches.emplace_back(n, m);  // sentinel

  std::size_t i = 0;
  std::size_t j = 0;
  for (std::size_t k = 0; k < matches.size(); ++k) {
    const auto [mi, mj] = matches[k];
    if (mi > i || mj > j) {
      RenameOperation op;
      if (mi == i) {
        op.kind = OpKind::kInsert;
        op.after = range(b, j, mj);
        op.after_written = written_range(new_name, j, mj);
        if (i > 0) op.left_anchor = a[i - 1];
        if (mi < n) op.right_anchor = a[mi];
      } else if (mj == j) {
        op.kind = OpKind::kDelete;
        op.before = range(a, i, mi);
      } else {
        op.kind = OpKind::kReplace;
        op.before = range(a, i, mi);
        op.after = range(b, j, mj);
        op.after_written = written_range(new_name, j, mj);
      }
      result.ops.push_back(std::move(op));
    }
    i = mi + 1;
    j = mj + 1;
  }
  return result;
}

bool applicable(const RenameOperation& op, const NormalizedName& candidate) {
  const auto lemmas = candidate.lemmas();
  switch (op.kind) {
    case OpKind::kInsert:
      return (op.left_anchor && find_word(lemmas, *op.left_anchor)) ||
             (op.right_anchor && find_word(lemmas, *op.right_anchor));
    case OpKind::kDelete:
    case OpKind::kReplace:
      return find_run(lemmas, op.before).has_value();
    case OpKind::kOrder: {
      for (const auto& w : op.before) {
        if (!find_word(lemmas, w)) return false;
      }
      std::vector<std::string> seen;
      for (std::size_t p : positions_in(lemmas, op.before)) seen.push_back(lemmas[p]);
      return seen != op.after;
    }
    case OpKind::kFormatP:
    case OpKind::kFormatA:
    case OpKind::kFormatC:
      return std::any_of(candidate.tokens.begin(), candidate.tokens.end(),
                         [&](const WordToken& t) { return format_matches(op, t); });
  }
  return false;
}

bool has_several_sites(const RenameOperation& op, const NormalizedName& candidate) {
  const auto lemmas = candidate.lemmas();
  auto count_word = [&](const std::string& w) { return std::count(lemmas.begin(), lemmas.end(), w); };
  switch (op.kind) {
    case OpKind::kInsert:
      if (op.left_anchor && count_word(*op.left_anchor) > 0) return count_word(*op.left_anchor) > 1;
      return op.right_anchor && count_word(*op.right_anchor) > 1;
    case OpKind::kDelete:
    case OpKind::kReplace: {
      int runs = 0;
      for (std::size_t i = 0; i + op.before.size() <= lemmas.size() && !op.before.empty(); ++i) {
        if (std::equal(op.before.begin(), op.before.end(), lemmas.begin() + static_cast<std::ptrdiff_t>(i))) ++runs;
      }
      return runs > 1;
    }
    case OpKind::kOrder:
      return false;
    case OpKind::kFormatP:
    case OpKind::kFormatA:
    case OpKind::kFormatC:
      return std::count_if(candidate.tokens.begin(), candidate.tokens.end(),
                           [&](const WordToken& t) { return format_matches(op, t); }) > 1;
  }
  return false;
}

namespace {

// Applies `op` to parallel lemma and written-word sequences.
void apply_in_place(const RenameOperation& op, const NormalizedName& candidate, std::vector<std::string>& lemmas,
                    std::vector<std::string>& written) {
  if (!applicable(op, candidate)) {
    throw Error(ErrorCode::kNotApplicable, "operation " + describe(op) + " does not apply to " + candidate.raw);
  }
  switch (op.kind) {
    case OpKind::kInsert:
    case OpKind::kDelete:
    case OpKind::kReplace: {
      const Edit edit = locate(op, lemmas);
      const auto first = static_cast<std::ptrdiff_t>(edit.begin);
      const auto last = static_cast<std::ptrdiff_t>(edit.end);
      lemmas.erase(lemmas.begin() + first, lemmas.begin() + last);
      written.erase(written.begin() + first, written.begin() + last);
      const auto& new_written = op.after_written.size() == op.after.size() ? op.after_written : op.after;
      lemmas.insert(lemmas.begin() + first, op.after.begin(), op.after.end());
      written.insert(written.begin() + first, new_written.begin(), new_written.end());
      break;
    }
    case OpKind::kOrder: {
      // Refill the slots holding the reordered words in the new order,
      // carrying each slot's written form along with its lemma.
      const auto slots = positions_in(lemmas, op.before);
      std::vector<std::string> old_lemmas;
      std::vector<std::string> old_written;
      for (std::size_t p : slots) {
        old_lemmas.push_back(lemmas[p]);
        old_written.push_back(written[p]);
      }
      std::vector<char> used(slots.size(), 0);
      std::vector<std::size_t> source;
      for (const auto& w : op.after) {
        for (std::size_t s = 0; s < slots.size(); ++s) {
          if (!used[s] && old_lemmas[s] == w) {
            used[s] = 1;
            source.push_back(s);
            break;
          }
        }
      }
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (!used[s]) source.push_back(s);
      }
      for (std::size_t k = 0; k < slots.size(); ++k) {
        lemmas[slots[k]] = old_lemmas[source[k]];
        written[slots[k]] = old_written[source[k]];
      }
      break;
    }
    default:
      for (std::size_t k = 0; k < candidate.tokens.size(); ++k) {
        if (format_matches(op, candidate.tokens[k])) {
          lemmas[k] = op.after.front();
          written[k] = op.after_written.empty() ? op.after.front() : op.after_written.front();
          break;
        }
      }
      break;
  }
  if (lemmas.empty()) {
    throw Error(ErrorCode::kDegenerateName, "applying " + describe(op) + " to " + candidate.raw + " leaves no word");
  }
}

}  // namespace

std::vector<std::string> apply_op(const RenameOperation& op, const NormalizedName& candidate) {
  auto lemmas = candidate.lemmas();
  auto written = candidate.written_words();
  apply_in_place(op, candidate, lemmas, written);
  return lemmas;
}

std::string suggest_name(const RenameOperation& op, const NormalizedName& candidate) {
  auto lemmas = candidate.lemmas();
  auto written = candidate.written_words();
  apply_in_place(op, candidate, lemmas, written);
  return lexical::render_identifier(written, lexical::detect_case_style(candidate.raw));
}

}  // namespace renas
