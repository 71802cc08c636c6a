#ifndef CCAL_NORMAL_FORM_HPP
#define CCAL_NORMAL_FORM_HPP

#include <string>
#include <vector>

#include "ccal/parser.hpp"
#include "ccal/process.hpp"

namespace ccal {

/// A process pulled into the shape (a1..ak)(C | A1 | ... | An): top 0s
/// dropped, parallel flattened, delimitations hoisted (alpha-renaming on
/// collision), top-level calls unfolded once. Binders are pairwise distinct
/// and listed in first-occurrence order; agents are guarded sums.
struct NormalForm {
  std::vector<Identifier> binders;
  std::vector<Formula> store;    // multiset, kept sorted
  std::vector<Process> agents;   // multiset, kept sorted by text

  Theory store_theory() const;   // normalized clauses of the whole store
};

NormalForm to_normal_form(const Process& p, const DefinitionSet& defs);
Process nf_to_process(const NormalForm& nf);

/// Alpha-canonical serialization: binders are renamed to positional
/// placeholders via colour refinement (with branching on symmetric states),
/// parallel components and sum branches compare as multisets. Two processes
/// get the same text iff they are structurally equivalent on the fragment
/// this engine decides. The text re-parses as a process fragment.
std::string canonical_text(const NormalForm& nf);

bool struct_equiv(const Process& a, const Process& b, const DefinitionSet& defs);

}  // namespace ccal

#endif
