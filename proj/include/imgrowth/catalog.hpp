#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "imgrowth/analysis.hpp"
#include "imgrowth/criterion.hpp"
#include "imgrowth/element.hpp"
#include "imgrowth/subdivision.hpp"

namespace img {

struct CatalogEntry {
    std::string name;
    std::string description;
    std::string formula;
    std::vector<std::string> notes;
    std::optional<Presentation> presentation;
    std::shared_ptr<const RuleData> rule;
    std::optional<Portrait> portrait;
    std::optional<EdgeData> edge;
    std::optional<ObstructionInput> obstruction;
    std::string identities;  // suite in the identities format, may be empty
    // Generator name -> postcritical label.
    std::map<std::string, std::string> generators;
};

// Base entries; families accept any odd n >= 3 as sierpinski-n, obstructed-n.
std::vector<std::string> catalog_names();
CatalogEntry catalog_get(const std::string& name);
// Raw embedded file by name, e.g. "f1.rule.json".
std::string catalog_file(std::string_view filename);

SubdivisionRule sierpinski_rule(unsigned n);
SubdivisionRule obstructed_rule(unsigned n);
ObstructionInput obstructed_curve(unsigned n);

// Checks every present component and their mutual consistency; throws
// ValidationError on the first failure.
void validate_entry(const CatalogEntry& e);

// Generator names with a presentation generator and a rule label, in
// presentation order.
std::vector<std::string> shared_generators(const CatalogEntry& e);

// Word and tile Schreier graphs compared from a base pair. Defaults: tile
// "1.1...1" and word "11...1".
IntertwineResult intertwine_entry(const CatalogEntry& e, unsigned level, std::optional<std::string> base_tile,
                                  std::optional<std::string> base_word, const Limits& limits = {});

// Identity suite lines:
//   eq LHS = RHS
//   pattern LHS : <s1,...,sd> (cycles)
//   section LHS @ WORD = RHS
//   infinite ELEMENT
struct IdentityResult {
    std::string line;
    std::string kind;
    Decision verdict = Decision::Inconclusive;
    std::string detail;
};

std::vector<IdentityResult> run_identity_suite(const Presentation& p, std::string_view suite, const Limits& limits = {});

}  // namespace img
