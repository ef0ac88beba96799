#pragma once

#include "oamatch/model.hpp"

namespace oamatch {

// One prompt line in the `Predicate (Subject, Object)` surface form.
struct VerbalizedLine {
    std::string text;
    const Statement* source = nullptr;
};

enum class StatementOrder { AsParsed, RootFirst, ClassesThenProperties };

// "conference_part" -> "conference part"; casing preserved; idempotent.
std::string humanize(const std::string& local);

// SubClass(sub, super)        -> "Is-a (sub', super')"
// PropertySignature(p, d, r)  -> "p (d', r')"   (property name verbatim)
// where x' = humanize(x), labels substituted when use_labels is set.
std::string verbalize_statement(const Statement& s,
                                const std::map<EntityId, std::string>& labels,
                                bool use_labels = false);

// Orders permute the statement list, never drop:
//   AsParsed              parse order
//   RootFirst             subclass lines breadth-first from root classes,
//                         then property signatures; cycles fall back to
//                         parse order with a warning on stderr
//   ClassesThenProperties all subclass lines first, stable parse order
std::vector<VerbalizedLine> verbalize_ontology(const Ontology& o, StatementOrder order,
                                               bool use_labels = false);

} // namespace oamatch
